#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nurs/perm.hpp"
#include "nurs/rng.hpp"

namespace nurs {

// State-independent direction laws. None of the samplers read a chain state,
// which makes every law here orbit-equivariant by construction.
struct DirectionLaw {
  enum class Kind { UniformSn, BlockShuffle, LocalCycle, Shiftable, BareTransposition };

  Kind kind = Kind::UniformSn;
  std::uint32_t param = 0;  // block size B or cycle length ell

  static DirectionLaw uniform() { return {Kind::UniformSn, 0}; }
  static DirectionLaw block_shuffle(std::uint32_t b) { return {Kind::BlockShuffle, b}; }
  static DirectionLaw local_cycle(std::uint32_t ell) { return {Kind::LocalCycle, ell}; }
  static DirectionLaw shiftable() { return {Kind::Shiftable, 0}; }
  static DirectionLaw bare_transposition() { return {Kind::BareTransposition, 0}; }

  // Config names: "uniform" | "block:B" | "local:L" | "shiftable" | "transposition".
  static DirectionLaw parse(std::string_view spec);
  std::string to_string() const;

  Permutation sample(Rng& rng, std::uint32_t n) const;

  // Whether the law is invariant under rho -> rho^-1 (required by Barker).
  bool inversion_symmetric() const;
};

Permutation sample_uniform(Rng& rng, std::uint32_t n);

// Block-shuffle q_B: rotate labels by a uniform offset, permute consecutive
// blocks of size B independently and uniformly (last block possibly short),
// rotate back.
struct BlockShuffleDraw {
  Permutation rho;
  std::uint32_t offset = 0;
  std::vector<std::vector<std::uint32_t>> blocks;  // 1-based label sets
};
BlockShuffleDraw sample_block_shuffle_detail(Rng& rng, std::uint32_t n, std::uint32_t block);
Permutation sample_block_shuffle(Rng& rng, std::uint32_t n, std::uint32_t block);

// The ell-cycle on consecutive labels starting at `start` (1-based, wraps).
Permutation local_cycle_at(std::uint32_t n, std::uint32_t ell, std::uint32_t start);
Permutation sample_local_cycle(Rng& rng, std::uint32_t n, std::uint32_t ell);

// Shiftable direction eta = tau_ij o h with h fixing i,j and all cycles of h
// of odd length, so ord(eta) = 2 ord(h) and eta^ord(h) = tau_ij. h is drawn
// uniformly over the admissible set by rejection from Fisher-Yates on the
// complement labels.
struct ShiftableDraw {
  std::uint32_t i = 0, j = 0;  // 1-based, i < j
  Permutation eta;
  std::uint32_t rejections = 0;  // rejected h draws before acceptance
};
ShiftableDraw sample_shiftable(Rng& rng, std::uint32_t n);

Permutation sample_bare_transposition(Rng& rng, std::uint32_t n);

struct SupportAtom {
  Permutation rho;
  double prob = 0.0;
};

// Complete support with exact probabilities, for exact transition matrices.
// Guards: UniformSn n <= 6, BareTransposition n <= 8, Shiftable n <= 6,
// LocalCycle n <= 10^4; BlockShuffle is not enumerable here.
std::vector<SupportAtom> enumerate_support(const DirectionLaw& law, std::uint32_t n);

// All h in S_n fixing everything outside `labels` with all cycles odd,
// composed with tau_ij: the set Omega_ij (n <= 8).
std::vector<Permutation> omega_ij_enumerate(std::uint32_t n, std::uint32_t i, std::uint32_t j);

}  // namespace nurs
