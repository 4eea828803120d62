#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nurs/perm.hpp"

namespace nurs {

enum class DistanceKind { Kendall, L1, L2, Hamming, Cayley, Ulam };

inline constexpr DistanceKind kAllDistanceKinds[] = {
    DistanceKind::Kendall, DistanceKind::L1,     DistanceKind::L2,
    DistanceKind::Hamming, DistanceKind::Cayley, DistanceKind::Ulam};

// CLI/config names: "kendall", "l1", "l2", "hamming", "cayley", "ulam".
DistanceKind parse_distance(std::string_view name);
std::string_view distance_name(DistanceKind kind);

// Mallows(d, sigma0) target on S_n: energy E(sigma) = d(sigma, sigma0) and
// unnormalized weight w(sigma) = exp(-beta E(sigma)).
struct MallowsModel {
  std::uint32_t n = 0;
  double beta = 0.0;
  Permutation sigma0;
  DistanceKind kind = DistanceKind::Cayley;

  // sigma0 = identity, the reference used throughout.
  static MallowsModel make(std::uint32_t n, double beta, DistanceKind kind);
};

// Exact integer energy d(sigma, sigma0):
//   Kendall  inversion_count(sigma o sigma0^-1)
//   L1       sum |sigma(i) - sigma0(i)|
//   L2       sum (sigma(i) - sigma0(i))^2
//   Hamming  #{i : sigma(i) != sigma0(i)}
//   Cayley   n - cyc(sigma o sigma0^-1)
//   Ulam     n - LIS(sigma0 o sigma^-1)
std::uint64_t energy(const MallowsModel& model, const Permutation& sigma);

// -beta * energy; weights are handled in log space everywhere.
double log_weight(const MallowsModel& model, const Permutation& sigma);

// Cayley distance between two states, n - cyc(a o b^-1); bi-invariant.
std::uint64_t cayley_distance(const Permutation& a, const Permutation& b);

// Full Mallows pmf over S_n in canonical lexicographic order; n <= 8.
struct ExactPmf {
  std::vector<Permutation> ordering;
  std::vector<double> probs;
};
ExactPmf exact_pmf(const MallowsModel& model);

// Energy bounds per distance kind:
//   table_*    closed-form constants,
//   brute_*    exhaustive small-n enumeration with sigma0 = id.
// table_local_jump bounds the one-transposition energy jump |E(s t)-E(s)|;
// brute_local_jump is its exact enumerated value (n <= 7).
double table_local_jump(DistanceKind kind, std::uint32_t n);
double table_energy_max(DistanceKind kind, std::uint32_t n);
std::uint64_t brute_local_jump(DistanceKind kind, std::uint32_t n);
std::uint64_t brute_energy_max(DistanceKind kind, std::uint32_t n);

}  // namespace nurs
