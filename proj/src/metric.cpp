#include "nurs/metric.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace nurs {

DistanceKind parse_distance(std::string_view name) {
  if (name == "kendall") return DistanceKind::Kendall;
  if (name == "l1") return DistanceKind::L1;
  if (name == "l2") return DistanceKind::L2;
  if (name == "hamming") return DistanceKind::Hamming;
  if (name == "cayley") return DistanceKind::Cayley;
  if (name == "ulam") return DistanceKind::Ulam;
  throw std::invalid_argument("unknown distance kind: " + std::string(name));
}

std::string_view distance_name(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::Kendall: return "kendall";
    case DistanceKind::L1: return "l1";
    case DistanceKind::L2: return "l2";
    case DistanceKind::Hamming: return "hamming";
    case DistanceKind::Cayley: return "cayley";
    case DistanceKind::Ulam: return "ulam";
  }
  throw std::logic_error("bad DistanceKind");
}

MallowsModel MallowsModel::make(std::uint32_t n, double beta, DistanceKind kind) {
  if (beta < 0) throw std::invalid_argument("MallowsModel: beta must be >= 0");
  return MallowsModel{n, beta, Permutation::identity(n), kind};
}

std::uint64_t energy(const MallowsModel& model, const Permutation& sigma) {
  const std::uint32_t n = model.n;
  if (sigma.size() != n || model.sigma0.size() != n)
    throw std::invalid_argument("energy: size mismatch");
  switch (model.kind) {
    case DistanceKind::Kendall:
      return inversion_count(compose(sigma, inverse(model.sigma0)));
    case DistanceKind::L1: {
      std::uint64_t s = 0;
      for (std::uint32_t i = 0; i < n; ++i) {
        const std::int64_t d =
            static_cast<std::int64_t>(sigma[i]) - static_cast<std::int64_t>(model.sigma0[i]);
        s += static_cast<std::uint64_t>(std::llabs(d));
      }
      return s;
    }
    case DistanceKind::L2: {
      std::uint64_t s = 0;
      for (std::uint32_t i = 0; i < n; ++i) {
        const std::int64_t d =
            static_cast<std::int64_t>(sigma[i]) - static_cast<std::int64_t>(model.sigma0[i]);
        s += static_cast<std::uint64_t>(d * d);
      }
      return s;
    }
    case DistanceKind::Hamming: {
      std::uint64_t s = 0;
      for (std::uint32_t i = 0; i < n; ++i) s += sigma[i] != model.sigma0[i];
      return s;
    }
    case DistanceKind::Cayley:
      return cayley_distance(sigma, model.sigma0);
    case DistanceKind::Ulam:
      return n - lis_length(compose(model.sigma0, inverse(sigma)));
  }
  throw std::logic_error("bad DistanceKind");
}

double log_weight(const MallowsModel& model, const Permutation& sigma) {
  return -model.beta * static_cast<double>(energy(model, sigma));
}

std::uint64_t cayley_distance(const Permutation& a, const Permutation& b) {
  const Permutation q = compose(a, inverse(b));
  // n - #cycles without building the full CycleStats
  const std::uint32_t n = q.size();
  std::vector<bool> visited(n, false);
  std::uint32_t cycles = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (visited[s]) continue;
    ++cycles;
    for (std::uint32_t x = s; !visited[x]; x = q[x]) visited[x] = true;
  }
  return n - cycles;
}

ExactPmf exact_pmf(const MallowsModel& model) {
  if (model.n > 8) throw std::invalid_argument("exact_pmf: n <= 8 required");
  ExactPmf pmf;
  pmf.ordering = enumerate_lex(model.n);
  const std::size_t count = pmf.ordering.size();
  std::vector<double> lw(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i)
    lw[static_cast<std::size_t>(i)] = log_weight(model, pmf.ordering[static_cast<std::size_t>(i)]);
  // normalization in a fixed (index) order so the result is independent of
  // the parallel partitioning above
  double max_lw = lw[0];
  for (double v : lw) max_lw = std::max(max_lw, v);
  double z = 0.0;
  for (double v : lw) z += std::exp(v - max_lw);
  pmf.probs.resize(count);
  for (std::size_t i = 0; i < count; ++i) pmf.probs[i] = std::exp(lw[i] - max_lw) / z;
  return pmf;
}

double table_local_jump(DistanceKind kind, std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("table_local_jump: n >= 2 required");
  const double nd = n;
  switch (kind) {
    case DistanceKind::Kendall: return 2 * (nd - 1) - 1;
    case DistanceKind::L1: return 2 * (nd - 1);
    case DistanceKind::L2: return 2 * (nd - 1) * (nd - 1);
    case DistanceKind::Hamming: return 2;
    case DistanceKind::Ulam: return 2;
    case DistanceKind::Cayley: return 1;
  }
  throw std::logic_error("bad DistanceKind");
}

double table_energy_max(DistanceKind kind, std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("table_energy_max: n >= 2 required");
  const double nd = n;
  switch (kind) {
    case DistanceKind::Kendall: return nd * (nd - 1) / 2;
    case DistanceKind::L1: return std::floor(nd * nd / 2);
    case DistanceKind::L2: return (nd * nd * nd - nd) / 3;
    case DistanceKind::Hamming: return nd;
    case DistanceKind::Ulam: return nd - 1;
    case DistanceKind::Cayley: return nd - 1;
  }
  throw std::logic_error("bad DistanceKind");
}

std::uint64_t brute_local_jump(DistanceKind kind, std::uint32_t n) {
  if (n < 2 || n > 7) throw std::invalid_argument("brute_local_jump: 2 <= n <= 7 required");
  const MallowsModel model = MallowsModel::make(n, 1.0, kind);
  std::uint64_t best = 0;
  for (const Permutation& sigma : enumerate_lex(n)) {
    const auto e = static_cast<std::int64_t>(energy(model, sigma));
    for (std::uint32_t i = 1; i <= n; ++i) {
      for (std::uint32_t j = i + 1; j <= n; ++j) {
        const auto e2 =
            static_cast<std::int64_t>(energy(model, compose(sigma, transposition(n, i, j))));
        const auto jump = static_cast<std::uint64_t>(std::llabs(e2 - e));
        best = std::max(best, jump);
      }
    }
  }
  return best;
}

std::uint64_t brute_energy_max(DistanceKind kind, std::uint32_t n) {
  if (n < 2 || n > 8) throw std::invalid_argument("brute_energy_max: 2 <= n <= 8 required");
  const MallowsModel model = MallowsModel::make(n, 1.0, kind);
  std::uint64_t best = 0;
  for (const Permutation& sigma : enumerate_lex(n)) best = std::max(best, energy(model, sigma));
  return best;
}

}  // namespace nurs
