#include "nurs/couple.hpp"

#include <cmath>
#include <stdexcept>

namespace nurs {

namespace {

bool cycles_all_odd(const Permutation& h) {
  const std::uint32_t n = h.size();
  std::vector<bool> visited(n, false);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (visited[s]) continue;
    std::uint32_t len = 0;
    for (std::uint32_t x = s; !visited[x]; x = h[x]) {
      visited[x] = true;
      ++len;
    }
    if (len % 2 == 0) return false;
  }
  return true;
}

std::size_t draw_categorical(std::span<const double> weights, double total, Rng& rng) {
  const double u = rng.uniform01() * total;
  double cum = 0.0;
  for (std::size_t t = 0; t < weights.size(); ++t) {
    cum += weights[t];
    if (u < cum) return t;
  }
  return weights.size() - 1;
}

struct BatchTally {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t aligned = 0;
  std::uint64_t count = 0;
};

BatchTally run_contraction_batch(const EdgePair& edge, const MallowsModel& model,
                                 std::uint64_t draws, Rng& rng) {
  const std::uint32_t n = model.n;
  const Permutation tau = transposition(n, edge.i, edge.j);
  const Permutation sigma_b = compose(edge.sigma, tau);
  BatchTally tally;
  std::vector<double> p, q;
  std::vector<Permutation> xs, ys;
  for (std::uint64_t d = 0; d < draws; ++d) {
    const ShiftableDraw shared = sample_shiftable(rng, n);
    ++tally.count;
    if (shared.i == edge.i && shared.j == edge.j) {
      ++tally.aligned;  // perfect coupling via the index shift, distance 0
      continue;
    }
    const std::uint64_t ord = cycle_stats(shared.eta).order;
    xs.clear();
    ys.clear();
    p.clear();
    q.clear();
    Permutation x = edge.sigma;
    Permutation y = sigma_b;
    for (std::uint64_t t = 0; t < ord; ++t) {
      xs.push_back(x);
      ys.push_back(y);
      p.push_back(log_weight(model, x));
      q.push_back(log_weight(model, y));
      x = compose(x, shared.eta);
      y = compose(y, shared.eta);
    }
    for (auto* lw : {&p, &q}) {
      double m = (*lw)[0];
      for (double v : *lw) m = std::max(m, v);
      double z = 0.0;
      for (double& v : *lw) z += (v = std::exp(v - m));
      for (double& v : *lw) v /= z;
    }
    const auto [t, t2] = maximal_coupling(p, q, rng);
    const auto dist = static_cast<double>(cayley_distance(xs[t], ys[t2]));
    tally.sum += dist;
    tally.sum_sq += dist * dist;
  }
  return tally;
}

ContractionReport contraction_impl(const EdgePair& edge, const MallowsModel& model,
                                   std::uint64_t samples, Rng& rng, bool parallel) {
  if (model.n < 2 || model.n > 8)
    throw std::invalid_argument("edge_contraction_experiment: 2 <= n <= 8 required");
  if (samples < 1) throw std::invalid_argument("edge_contraction_experiment: samples >= 1");
  if (edge.sigma.size() != model.n || edge.i < 1 || edge.j <= edge.i || edge.j > model.n)
    throw std::invalid_argument("edge_contraction_experiment: bad edge");

  constexpr std::uint64_t kBatch = 4096;
  const std::uint64_t batches = (samples + kBatch - 1) / kBatch;
  const std::uint64_t base_seed = rng.next_u64();
  std::vector<BatchTally> tallies(batches);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(batches); ++k) {
    const std::uint64_t lo = static_cast<std::uint64_t>(k) * kBatch;
    const std::uint64_t draws = std::min(kBatch, samples - lo);
    Rng stream(base_seed, static_cast<std::uint64_t>(k));
    tallies[static_cast<std::size_t>(k)] = run_contraction_batch(edge, model, draws, stream);
  }
  BatchTally total;  // merged in batch order, independent of scheduling
  for (const BatchTally& t : tallies) {
    total.sum += t.sum;
    total.sum_sq += t.sum_sq;
    total.aligned += t.aligned;
    total.count += t.count;
  }

  ContractionReport report;
  report.beta = model.beta;
  report.n = model.n;
  report.samples = total.count;
  report.aligned_fraction = static_cast<double>(total.aligned) / static_cast<double>(total.count);
  const auto count = static_cast<double>(total.count);
  report.empirical_mean_dist = total.sum / count;
  if (total.count > 1) {
    const double var =
        std::max(0.0, (total.sum_sq - count * report.empirical_mean_dist *
                                          report.empirical_mean_dist) /
                          (count - 1));
    report.std_error = std::sqrt(var / count);
  }
  report.l_e_table = table_local_jump(model.kind, model.n);
  report.l_e_brute = static_cast<double>(brute_local_jump(model.kind, model.n));
  // the n <= 7 enumeration guard; at n = 8 fall back to D_max = n - 1
  report.d_cross = model.n <= 7 ? cross_orbit_diameter(model.n) : model.n - 1;
  report.delta_bound = delta_beta(model.n, model.beta, report.l_e_table, report.d_cross);
  report.delta_bound_brute = delta_beta(model.n, model.beta, report.l_e_brute, report.d_cross);
  return report;
}

}  // namespace

bool aligned_shift_check(const Permutation& sigma, std::uint32_t i, std::uint32_t j,
                         const Permutation& eta) {
  const std::uint32_t n = sigma.size();
  const Permutation tau = transposition(n, i, j);
  const Permutation h = compose(tau, eta);  // tau^-1 o eta, and tau^-1 = tau
  if (h[i - 1] != i - 1 || h[j - 1] != j - 1 || !cycles_all_odd(h))
    throw std::invalid_argument("aligned_shift_check: eta not shiftable for (i,j)");
  const std::uint64_t m = cycle_stats(h).order;
  Permutation y = compose(sigma, tau);                               // Y_t at t = 0
  Permutation x = compose(sigma, power(eta, static_cast<std::int64_t>(m)));  // X_{t+m}
  for (std::uint64_t t = 0; t < 2 * m; ++t) {
    if (y != x) return false;
    y = compose(y, eta);
    x = compose(x, eta);
  }
  return true;
}

bool mismatch_unit_check(const Permutation& sigma, std::uint32_t i, std::uint32_t j,
                         const Permutation& eta) {
  const std::uint32_t n = sigma.size();
  const Permutation tau = transposition(n, i, j);
  const std::uint64_t ord = cycle_stats(eta).order;
  Permutation x = sigma;
  Permutation y = compose(sigma, tau);
  for (std::uint64_t t = 0; t < ord; ++t) {
    if (cayley_distance(x, y) != 1) return false;
    x = compose(x, eta);
    y = compose(y, eta);
  }
  return true;
}

double orbit_tv(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("orbit_tv: length mismatch");
  double overlap = 0.0;
  for (std::size_t t = 0; t < p.size(); ++t) overlap += std::min(p[t], q[t]);
  return 1.0 - overlap;
}

double tanh_bound(double beta, double l_e, double k) {
  if (beta < 0 || l_e < 0 || k < 0) throw std::invalid_argument("tanh_bound: negative input");
  return std::tanh(beta * l_e * k);
}

std::pair<std::size_t, std::size_t> maximal_coupling(std::span<const double> p,
                                                     std::span<const double> q, Rng& rng) {
  if (p.size() != q.size()) throw std::invalid_argument("maximal_coupling: length mismatch");
  std::vector<double> overlap(p.size());
  double mass = 0.0;
  for (std::size_t t = 0; t < p.size(); ++t) mass += (overlap[t] = std::min(p[t], q[t]));
  const double tv = 1.0 - mass;
  if (tv <= 0.0 || rng.uniform01() >= tv) {
    const std::size_t t = draw_categorical(overlap, mass, rng);
    return {t, t};
  }
  std::vector<double> rp(p.size()), rq(p.size());
  for (std::size_t t = 0; t < p.size(); ++t) {
    rp[t] = p[t] - overlap[t];
    rq[t] = q[t] - overlap[t];
  }
  const std::size_t t = draw_categorical(rp, tv, rng);
  const std::size_t t2 = draw_categorical(rq, tv, rng);
  return {t, t2};
}

std::uint32_t cross_orbit_diameter(std::uint32_t n) {
  if (n < 2 || n > 7) throw std::invalid_argument("cross_orbit_diameter: 2 <= n <= 7 required");
  std::uint32_t best = 0;
  std::vector<Permutation> taus;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = i + 1; j <= n; ++j) taus.push_back(transposition(n, i, j));
  for (std::uint32_t i = 1; i <= n; ++i) {
    for (std::uint32_t j = i + 1; j <= n; ++j) {
      for (const Permutation& eta : omega_ij_enumerate(n, i, j)) {
        const std::uint64_t ord = cycle_stats(eta).order;
        std::vector<Permutation> powers;
        powers.reserve(ord);
        Permutation cur = Permutation::identity(n);
        for (std::uint64_t s = 0; s < ord; ++s) {
          powers.push_back(cur);
          cur = compose(cur, eta);
        }
        for (const Permutation& tau : taus)
          for (const Permutation& es : powers)
            for (const Permutation& et : powers)
              best = std::max(best,
                              static_cast<std::uint32_t>(cayley_distance(es, compose(tau, et))));
      }
    }
  }
  return best;
}

double delta_beta(std::uint32_t n, double beta, double l_e, std::uint32_t d_cross) {
  if (n < 2) throw std::invalid_argument("delta_beta: n >= 2 required");
  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  return (1.0 - 1.0 / pairs) *
         (1.0 + (static_cast<double>(d_cross) - 1.0) * std::tanh(beta * l_e));
}

ContractionReport edge_contraction_experiment(const EdgePair& edge, const MallowsModel& model,
                                              std::uint64_t samples, Rng& rng) {
  return contraction_impl(edge, model, samples, rng, true);
}

namespace serial {
ContractionReport edge_contraction_experiment(const EdgePair& edge, const MallowsModel& model,
                                              std::uint64_t samples, Rng& rng) {
  return contraction_impl(edge, model, samples, rng, false);
}
}  // namespace serial

}  // namespace nurs
