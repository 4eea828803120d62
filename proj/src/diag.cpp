#include "nurs/diag.hpp"

#include <cmath>
#include <stdexcept>

namespace nurs {

double poisson_pmf(double lambda, std::uint64_t k) {
  if (!(lambda > 0)) throw std::invalid_argument("poisson_pmf: lambda > 0 required");
  const double kd = static_cast<double>(k);
  return std::exp(-lambda + kd * std::log(lambda) - std::lgamma(kd + 1.0));
}

double triangular_pmf(std::uint32_t max_doublings, std::int64_t k, TriangularVariant variant) {
  const auto span = std::int64_t{1} << max_doublings;  // 2^M
  const std::int64_t abs_k = k < 0 ? -k : k;
  if (abs_k > span) throw std::invalid_argument("triangular_pmf: |k| <= 2^M required");
  if (variant == TriangularVariant::Paper) {
    const double denom = static_cast<double>(span + 1) * static_cast<double>(span + 1);
    return static_cast<double>(span + 1 - abs_k) / denom;
  }
  if (abs_k >= span) return 0.0;
  const double denom = static_cast<double>(span) * static_cast<double>(span);
  return static_cast<double>(span - abs_k) / denom;
}

double empirical_tv(const Histogram& hist, const std::map<std::int64_t, double>& pmf) {
  if (hist.total == 0) throw std::invalid_argument("empirical_tv: empty histogram");
  const double total = static_cast<double>(hist.total);
  double sum = 0.0;
  auto hit = hist.bins.begin();
  auto pit = pmf.begin();
  while (hit != hist.bins.end() || pit != pmf.end()) {
    if (pit == pmf.end() || (hit != hist.bins.end() && hit->first < pit->first)) {
      sum += static_cast<double>(hit->second) / total;
      ++hit;
    } else if (hit == hist.bins.end() || pit->first < hit->first) {
      sum += std::abs(pit->second);
      ++pit;
    } else {
      sum += std::abs(static_cast<double>(hit->second) / total - pit->second);
      ++hit;
      ++pit;
    }
  }
  return 0.5 * sum;
}

TraceRow trace_row(std::uint64_t iter, const Permutation& state, const MallowsModel& model,
                   const TransitionRecord& record) {
  TraceRow row;
  row.iter = iter;
  row.signed_index = record.selected_index;
  row.orbit_len = record.orbit_len;
  row.reason = record.reason;
  row.energy = energy(model, state);
  const CycleStats cs = cycle_stats(state);
  row.fixed_points = cs.fixed_points;
  row.cycle_len_1 = cycle_length_of(state, 1);
  row.lis = lis_length(state);
  return row;
}

RunTrace trace_stats(std::span<const Permutation> states,
                     std::span<const TransitionRecord> records, const MallowsModel& model) {
  if (states.size() != records.size())
    throw std::invalid_argument("trace_stats: states/records length mismatch");
  RunTrace trace;
  trace.reserve(states.size());
  for (std::size_t t = 0; t < states.size(); ++t)
    trace.push_back(trace_row(t, states[t], model, records[t]));
  return trace;
}

AcfResult autocorr_ess(std::span<const double> series, std::size_t max_lag) {
  const std::size_t count = series.size();
  if (count <= max_lag) throw std::invalid_argument("autocorr_ess: series too short");
  bool constant = true;
  for (double v : series) constant &= v == series[0];
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(count);
  double c0 = 0.0;
  for (double v : series) c0 += (v - mean) * (v - mean);
  c0 /= static_cast<double>(count);

  AcfResult result;
  result.acf.assign(max_lag + 1, 0.0);
  if (constant || c0 == 0.0) {  // constant series convention
    result.ess = static_cast<double>(count);
    return result;
  }
  result.acf[0] = 1.0;
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    double c = 0.0;
    for (std::size_t t = 0; t + lag < count; ++t)
      c += (series[t] - mean) * (series[t + lag] - mean);
    result.acf[lag] = c / static_cast<double>(count) / c0;
  }
  double tail = 0.0;  // truncate at the first negative autocorrelation
  for (std::size_t lag = 1; lag <= max_lag && result.acf[lag] > 0.0; ++lag)
    tail += result.acf[lag];
  result.ess = static_cast<double>(count) / (1.0 + 2.0 * tail);
  return result;
}

namespace {

// Regularized incomplete gamma Q(a, x), series/continued-fraction split.
double gamma_q(double a, double x) {
  if (x < 0 || a <= 0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0) return 1.0;
  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int it = 0; it < 500; ++it) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - p;
  }
  // Lentz continued fraction
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double chi_square_survival(double stat, double dof) {
  if (stat < 0) return 1.0;
  return gamma_q(dof / 2.0, stat / 2.0);
}

}  // namespace nurs
