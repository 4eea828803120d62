#pragma once

#include <cstdint>
#include <random>

namespace nurs {

// Deterministic random stream with a 64-bit seed. Independent streams for
// parallel chains/batches are derived from the same seed by a stream index,
// so a (seed, stream) pair fully determines the draw sequence within one
// build of this library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : gen_(mix(seed, stream)) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on {0, ..., bound-1} via rejection; no modulo bias.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

  bool coin() { return (gen_() & 1u) != 0; }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over seed and stream index
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 gen_;
};

}  // namespace nurs
