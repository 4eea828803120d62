#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nurs {

// Element of S_n in one-line form.
//
// Internally the image array is 0-based; every external surface (parsing,
// printing, cycle labels) is 1-based. The composition convention, fixed for
// the whole library, is
//
//   compose(sigma, rho)(i) = sigma(rho(i))   (rho acts first),
//
// and all orbit code depends on it.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::uint32_t n);

  // One-based one-line form, e.g. {2,1,3}; validates the bijection.
  static Permutation from_one_line(const std::vector<std::uint32_t>& values);

  // Comma-separated one-based one-line form, e.g. "2,1,3".
  static Permutation parse(std::string_view text);
  std::string to_string() const;

  std::uint32_t size() const { return static_cast<std::uint32_t>(map_.size()); }

  // 0-based position -> 0-based image.
  std::uint32_t operator[](std::uint32_t i) const { return map_[i]; }

  const std::vector<std::uint32_t>& data() const { return map_; }

  bool operator==(const Permutation&) const = default;
  // Lexicographic on the one-line form; defines the canonical S_n order.
  auto operator<=>(const Permutation&) const = default;

 private:
  explicit Permutation(std::vector<std::uint32_t> map) : map_(std::move(map)) {}

  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation inverse(const Permutation&);
  friend Permutation power(const Permutation&, std::int64_t);

  std::vector<std::uint32_t> map_;
};

struct CycleStats {
  std::vector<std::vector<std::uint32_t>> cycles;  // 1-based labels; each
                                                   // cycle starts at its
                                                   // smallest label
  std::uint32_t cycle_count = 0;
  std::uint64_t order = 0;  // lcm of cycle lengths, saturated at UINT64_MAX
  std::uint32_t fixed_points = 0;
};

Permutation compose(const Permutation& sigma, const Permutation& rho);
Permutation inverse(const Permutation& sigma);

// sigma^k for any signed k; cycle decomposition makes the cost O(n)
// independent of |k|.
Permutation power(const Permutation& sigma, std::int64_t k);

CycleStats cycle_stats(const Permutation& sigma);

// Length of the cycle containing the 1-based label.
std::uint32_t cycle_length_of(const Permutation& sigma, std::uint32_t label);

// Longest increasing subsequence, patience style, O(n log n).
std::uint32_t lis_length(const Permutation& sigma);

// #{(i,j): i<j, sigma(i)>sigma(j)}, merge-sort count, O(n log n).
std::uint64_t inversion_count(const Permutation& sigma);

// The transposition (i j) on 1-based labels.
Permutation transposition(std::uint32_t n, std::uint32_t i, std::uint32_t j);

// The cycle (labels[0] labels[1] ... ) on 1-based labels, identity elsewhere.
Permutation cycle(std::uint32_t n, const std::vector<std::uint32_t>& labels);

// Uniform random element of S_n; exactly n-1 bounded-uniform draws, so a
// fixed draw sequence determines the result. R needs uniform_below(u64).
template <class R>
Permutation fisher_yates(R& rng, std::uint32_t n) {
  std::vector<std::uint32_t> a(n);
  for (std::uint32_t i = 0; i < n; ++i) a[i] = i + 1;
  for (std::uint32_t i = n; i >= 2; --i) {
    auto j = static_cast<std::uint32_t>(rng.uniform_below(i));
    std::swap(a[i - 1], a[j]);
  }
  return Permutation::from_one_line(a);
}

// All of S_n in lexicographic one-line order (the canonical ordering used by
// exact pmfs and transition matrices). Guarded to n <= 9.
std::vector<Permutation> enumerate_lex(std::uint32_t n);

// Index of sigma in enumerate_lex(n), via the Lehmer code, O(n^2).
std::size_t lex_rank(const Permutation& sigma);

std::uint64_t factorial(std::uint32_t n);

}  // namespace nurs
