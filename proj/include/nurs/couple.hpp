#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "nurs/direction.hpp"
#include "nurs/metric.hpp"
#include "nurs/rng.hpp"

namespace nurs {

// Path-coupling edge (sigma, sigma o tau_ij); Cayley distance 1 apart.
struct EdgePair {
  Permutation sigma;
  std::uint32_t i = 0, j = 0;  // 1-based, i < j
};

struct ContractionReport {
  double beta = 0.0;
  std::uint32_t n = 0;
  double empirical_mean_dist = 0.0;
  double std_error = 0.0;
  double delta_bound = 0.0;  // with the closed-form local jump L_E
  std::uint64_t samples = 0;
  // companion quantities: the sharper enumerated constant and inputs
  double delta_bound_brute = 0.0;
  double l_e_table = 0.0;
  double l_e_brute = 0.0;
  std::uint32_t d_cross = 0;
  double aligned_fraction = 0.0;
};

// With m = ord(eta)/2, verifies sigma o tau_ij o eta^t == sigma o eta^(t+m)
// for all t in {0..2m-1}. Throws if eta is not shiftable for (i, j).
bool aligned_shift_check(const Permutation& sigma, std::uint32_t i, std::uint32_t j,
                         const Permutation& eta);

// Verifies d_Cay(sigma o eta^t, sigma o tau_ij o eta^t) == 1 for all
// t in {0..ord(eta)-1}.
bool mismatch_unit_check(const Permutation& sigma, std::uint32_t i, std::uint32_t j,
                         const Permutation& eta);

// Total variation between two categorical laws on the same index set,
// computed as 1 - sum_t min(p_t, q_t).
double orbit_tv(std::span<const double> p, std::span<const double> q);

// tanh(beta * L_E * k).
double tanh_bound(double beta, double l_e, double k);

// Joint draw (t, t') with marginals p and q and P(t != t') = TV(p, q), via
// the overlap/residual decomposition.
std::pair<std::size_t, std::size_t> maximal_coupling(std::span<const double> p,
                                                     std::span<const double> q, Rng& rng);

// max over eta in Omega, transpositions tau, s,t < ord(eta) of
// d_Cay(eta^s, tau o eta^t); sigma drops out by right-invariance. n <= 7.
std::uint32_t cross_orbit_diameter(std::uint32_t n);

// (1 - 2/(n(n-1))) * (1 + (D_cross - 1) * tanh(beta * L_E)).
double delta_beta(std::uint32_t n, double beta, double l_e, std::uint32_t d_cross);

// One-step coupling experiment across the edge: share ((I,J), eta); aligned
// draws couple perfectly by the index shift, mismatch draws run a maximal
// coupling of the two window laws and record the Cayley distance.
ContractionReport edge_contraction_experiment(const EdgePair& edge, const MallowsModel& model,
                                              std::uint64_t samples, Rng& rng);

namespace serial {
ContractionReport edge_contraction_experiment(const EdgePair& edge, const MallowsModel& model,
                                              std::uint64_t samples, Rng& rng);
}

}  // namespace nurs
