#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "nurs/direction.hpp"
#include "nurs/kernel.hpp"
#include "nurs/metric.hpp"

namespace nurs {

// Dense row-stochastic kernel over S_n in canonical lexicographic order.
struct TransitionMatrix {
  std::vector<Permutation> ordering;
  std::vector<double> entries;  // row-major, dim x dim

  std::size_t dim() const { return ordering.size(); }
  double at(std::size_t row, std::size_t col) const { return entries[row * dim() + col]; }
};

// Exact NURS kernel by enumeration: sums over the law's support atoms and
// all 2^M doubling bit-strings, replaying build_orbit deterministically; no
// Monte Carlo enters the matrix. Guards: enumerable law, n <= 5, M <= 4.
TransitionMatrix nurs_matrix(const MallowsModel& model, const DirectionLaw& law,
                             const NursParams& params);

// Exact Barker kernel; off-diagonal mass w'/(w+w') per proposal atom, the
// diagonal absorbs the complement. Guards: enumerable law, n <= 6.
TransitionMatrix barker_matrix(const MallowsModel& model, const DirectionLaw& proposal_law);

// Exact idealized shiftable kernel: (i,j) uniform over pairs, eta uniform
// over Omega_ij, full window {0..2m-1} with Mallows index weights. n <= 5.
TransitionMatrix shiftable_matrix(const MallowsModel& model);

// max over pairs |pi(s) K(s,s') - pi(s') K(s',s)|.
double detailed_balance_residual(const TransitionMatrix& matrix, const ExactPmf& pmf);

// max over s' |sum_s pi(s) K(s,s') - pi(s')|.
double stationarity_residual(const TransitionMatrix& matrix, const ExactPmf& pmf);

// Worst-case total variation max_s ||K^t(s,.) - pi||_TV for t = 1..t_max,
// by repeated vector-matrix products; t_max <= 500.
std::vector<double> tv_mixing_curve(const TransitionMatrix& matrix, const ExactPmf& pmf,
                                    std::uint32_t t_max);

// Row-major CSV with the canonical permutation strings as header.
void write_matrix_csv(const TransitionMatrix& matrix, std::ostream& out);

// Serial reference implementations of the parallel kernels above; the
// parallel versions must match them bit for bit.
namespace serial {
TransitionMatrix nurs_matrix(const MallowsModel& model, const DirectionLaw& law,
                             const NursParams& params);
TransitionMatrix barker_matrix(const MallowsModel& model, const DirectionLaw& proposal_law);
TransitionMatrix shiftable_matrix(const MallowsModel& model);
std::vector<double> tv_mixing_curve(const TransitionMatrix& matrix, const ExactPmf& pmf,
                                    std::uint32_t t_max);
}  // namespace serial

}  // namespace nurs
