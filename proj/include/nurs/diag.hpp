#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "nurs/kernel.hpp"
#include "nurs/metric.hpp"
#include "nurs/perm.hpp"

namespace nurs {

// Per-iteration chain record; the trace columns of the sample CSV.
struct TraceRow {
  std::uint64_t iter = 0;
  std::int64_t signed_index = 0;
  std::uint32_t orbit_len = 0;
  StopReason reason = StopReason::MaxLen;
  std::uint64_t energy = 0;
  std::uint32_t fixed_points = 0;
  std::uint32_t cycle_len_1 = 0;  // cycle length of label 1
  std::uint32_t lis = 0;
};
using RunTrace = std::vector<TraceRow>;

struct Histogram {
  std::map<std::int64_t, std::uint64_t> bins;
  std::uint64_t total = 0;

  void add(std::int64_t key) {
    ++bins[key];
    ++total;
  }
};

// exp(-lambda) lambda^k / k!, computed in log space.
double poisson_pmf(double lambda, std::uint64_t k);

// Signed-index reference law at beta = 0 with full-length windows 2^M.
//   Paper:   (2^M + 1 - |k|) / (2^M + 1)^2 on |k| <= 2^M.
//   Derived: (2^M - |k|) / 4^M on |k| <= 2^M - 1, zero at |k| = 2^M; the
//            exact law of fixed-length windows with a uniform index.
enum class TriangularVariant { Paper, Derived };
double triangular_pmf(std::uint32_t max_doublings, std::int64_t k, TriangularVariant variant);

// 0.5 * sum over all keys of |hist(k)/total - pmf(k)|, including reference
// mass at empty bins.
double empirical_tv(const Histogram& hist, const std::map<std::int64_t, double>& pmf);

TraceRow trace_row(std::uint64_t iter, const Permutation& state, const MallowsModel& model,
                   const TransitionRecord& record);

RunTrace trace_stats(std::span<const Permutation> states,
                     std::span<const TransitionRecord> records, const MallowsModel& model);

// Biased autocorrelation estimates up to max_lag (acf[0] = 1) and
// ESS = N / (1 + 2 sum of positive-lag acf), truncated at the first negative
// autocorrelation. A constant series reports acf 0 and ESS = N by
// convention.
struct AcfResult {
  std::vector<double> acf;
  double ess = 0.0;
};
AcfResult autocorr_ess(std::span<const double> series, std::size_t max_lag);

// P[X >= stat] for a chi-square variable with dof degrees of freedom.
double chi_square_survival(double stat, double dof);

}  // namespace nurs
