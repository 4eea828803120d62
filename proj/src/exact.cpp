#include "nurs/exact.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace nurs {

namespace {

// Compensated accumulator; keeps 1e-12 residuals meaningful at n! = 120 rows.
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void fill_nurs_row(const MallowsModel& model, const std::vector<SupportAtom>& support,
                   const NursParams& params, const Permutation& sigma, double* row,
                   std::size_t dim) {
  std::vector<Kahan> acc(dim);
  const std::uint32_t m = params.max_doublings;
  const double bit_prob = std::ldexp(1.0, -static_cast<int>(m));
  for (const SupportAtom& atom : support) {
    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
      auto [window, reason] = build_orbit(sigma, atom.rho, bits, params, model);
      (void)reason;
      double max_lw = window.log_weights[0];
      for (double v : window.log_weights) max_lw = std::max(max_lw, v);
      double z = 0.0;
      for (double v : window.log_weights) z += std::exp(v - max_lw);
      for (std::size_t t = 0; t < window.length(); ++t) {
        const double w = std::exp(window.log_weights[t] - max_lw) / z;
        acc[lex_rank(window.states[t])].add(atom.prob * bit_prob * w);
      }
    }
  }
  for (std::size_t c = 0; c < dim; ++c) row[c] = acc[c].sum;
}

void fill_barker_row(const MallowsModel& model, const std::vector<SupportAtom>& support,
                     const Permutation& sigma, double* row, std::size_t dim) {
  std::vector<Kahan> acc(dim);
  const std::size_t self = lex_rank(sigma);
  const double lw_cur = log_weight(model, sigma);
  for (const SupportAtom& atom : support) {
    const Permutation proposed = compose(sigma, atom.rho);
    const double lw_prop = log_weight(model, proposed);
    const double move = 1.0 / (1.0 + std::exp(lw_cur - lw_prop));
    acc[lex_rank(proposed)].add(atom.prob * move);
    acc[self].add(atom.prob * (1.0 - move));
  }
  for (std::size_t c = 0; c < dim; ++c) row[c] = acc[c].sum;
}

void fill_shiftable_row(const MallowsModel& model, const Permutation& sigma, double* row,
                        std::size_t dim) {
  const std::uint32_t n = model.n;
  std::vector<Kahan> acc(dim);
  const double pair_prob = 2.0 / (static_cast<double>(n) * (n - 1));
  for (std::uint32_t i = 1; i <= n; ++i) {
    for (std::uint32_t j = i + 1; j <= n; ++j) {
      const auto omega = omega_ij_enumerate(n, i, j);
      const double eta_prob = pair_prob / static_cast<double>(omega.size());
      for (const Permutation& eta : omega) {
        const std::uint64_t ord = cycle_stats(eta).order;
        std::vector<Permutation> states;
        std::vector<double> lws;
        states.reserve(ord);
        lws.reserve(ord);
        Permutation cur = sigma;
        for (std::uint64_t r = 0; r < ord; ++r) {
          states.push_back(cur);
          lws.push_back(log_weight(model, cur));
          cur = compose(cur, eta);
        }
        double max_lw = lws[0];
        for (double v : lws) max_lw = std::max(max_lw, v);
        double z = 0.0;
        for (double v : lws) z += std::exp(v - max_lw);
        for (std::uint64_t r = 0; r < ord; ++r)
          acc[lex_rank(states[r])].add(eta_prob * std::exp(lws[r] - max_lw) / z);
      }
    }
  }
  for (std::size_t c = 0; c < dim; ++c) row[c] = acc[c].sum;
}

TransitionMatrix alloc_matrix(std::uint32_t n) {
  TransitionMatrix k;
  k.ordering = enumerate_lex(n);
  k.entries.assign(k.ordering.size() * k.ordering.size(), 0.0);
  return k;
}

std::vector<double> tv_curve_impl(const TransitionMatrix& matrix, const ExactPmf& pmf,
                                  std::uint32_t t_max, bool parallel) {
  if (t_max > 500) throw std::invalid_argument("tv_mixing_curve: t_max <= 500 required");
  if (matrix.dim() != pmf.probs.size())
    throw std::invalid_argument("tv_mixing_curve: dimension mismatch");
  const auto dim = static_cast<std::int64_t>(matrix.dim());
  std::vector<double> curve(t_max, 0.0);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t s = 0; s < dim; ++s) {
    std::vector<double> v(matrix.dim(), 0.0);
    std::vector<double> next(matrix.dim());
    v[static_cast<std::size_t>(s)] = 1.0;
    std::vector<double> local(t_max);
    for (std::uint32_t t = 0; t < t_max; ++t) {
      for (std::size_t c = 0; c < matrix.dim(); ++c) {
        double acc = 0.0;
        for (std::size_t r = 0; r < matrix.dim(); ++r) acc += v[r] * matrix.at(r, c);
        next[c] = acc;
      }
      v.swap(next);
      double tv = 0.0;
      for (std::size_t c = 0; c < matrix.dim(); ++c) tv += std::abs(v[c] - pmf.probs[c]);
      local[t] = 0.5 * tv;
    }
#pragma omp critical
    for (std::uint32_t t = 0; t < t_max; ++t) curve[t] = std::max(curve[t], local[t]);
  }
  return curve;
}

TransitionMatrix nurs_matrix_impl(const MallowsModel& model, const DirectionLaw& law,
                                  const NursParams& params, bool parallel) {
  params.validate();
  if (model.n > 5) throw std::invalid_argument("nurs_matrix: n <= 5 required");
  if (params.max_doublings > 4) throw std::invalid_argument("nurs_matrix: M <= 4 required");
  const auto support = enumerate_support(law, model.n);
  TransitionMatrix k = alloc_matrix(model.n);
  const auto dim = static_cast<std::int64_t>(k.dim());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t s = 0; s < dim; ++s)
    fill_nurs_row(model, support, params, k.ordering[static_cast<std::size_t>(s)],
                  k.entries.data() + s * dim, k.dim());
  return k;
}

TransitionMatrix barker_matrix_impl(const MallowsModel& model, const DirectionLaw& law,
                                    bool parallel) {
  if (model.n > 6) throw std::invalid_argument("barker_matrix: n <= 6 required");
  if (!law.inversion_symmetric())
    throw std::invalid_argument("barker_matrix: proposal law must be inversion-symmetric");
  const auto support = enumerate_support(law, model.n);
  TransitionMatrix k = alloc_matrix(model.n);
  const auto dim = static_cast<std::int64_t>(k.dim());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t s = 0; s < dim; ++s)
    fill_barker_row(model, support, k.ordering[static_cast<std::size_t>(s)],
                    k.entries.data() + s * dim, k.dim());
  return k;
}

TransitionMatrix shiftable_matrix_impl(const MallowsModel& model, bool parallel) {
  if (model.n < 2 || model.n > 5)
    throw std::invalid_argument("shiftable_matrix: 2 <= n <= 5 required");
  TransitionMatrix k = alloc_matrix(model.n);
  const auto dim = static_cast<std::int64_t>(k.dim());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t s = 0; s < dim; ++s)
    fill_shiftable_row(model, k.ordering[static_cast<std::size_t>(s)],
                       k.entries.data() + s * dim, k.dim());
  return k;
}

}  // namespace

TransitionMatrix nurs_matrix(const MallowsModel& model, const DirectionLaw& law,
                             const NursParams& params) {
  return nurs_matrix_impl(model, law, params, true);
}

TransitionMatrix barker_matrix(const MallowsModel& model, const DirectionLaw& proposal_law) {
  return barker_matrix_impl(model, proposal_law, true);
}

TransitionMatrix shiftable_matrix(const MallowsModel& model) {
  return shiftable_matrix_impl(model, true);
}

std::vector<double> tv_mixing_curve(const TransitionMatrix& matrix, const ExactPmf& pmf,
                                    std::uint32_t t_max) {
  return tv_curve_impl(matrix, pmf, t_max, true);
}

namespace serial {

TransitionMatrix nurs_matrix(const MallowsModel& model, const DirectionLaw& law,
                             const NursParams& params) {
  return nurs_matrix_impl(model, law, params, false);
}

TransitionMatrix barker_matrix(const MallowsModel& model, const DirectionLaw& proposal_law) {
  return barker_matrix_impl(model, proposal_law, false);
}

TransitionMatrix shiftable_matrix(const MallowsModel& model) {
  return shiftable_matrix_impl(model, false);
}

std::vector<double> tv_mixing_curve(const TransitionMatrix& matrix, const ExactPmf& pmf,
                                    std::uint32_t t_max) {
  return tv_curve_impl(matrix, pmf, t_max, false);
}

}  // namespace serial

double detailed_balance_residual(const TransitionMatrix& matrix, const ExactPmf& pmf) {
  if (matrix.dim() != pmf.probs.size())
    throw std::invalid_argument("detailed_balance_residual: dimension mismatch");
  double worst = 0.0;
  for (std::size_t r = 0; r < matrix.dim(); ++r)
    for (std::size_t c = r + 1; c < matrix.dim(); ++c)
      worst = std::max(worst, std::abs(pmf.probs[r] * matrix.at(r, c) -
                                       pmf.probs[c] * matrix.at(c, r)));
  return worst;
}

double stationarity_residual(const TransitionMatrix& matrix, const ExactPmf& pmf) {
  if (matrix.dim() != pmf.probs.size())
    throw std::invalid_argument("stationarity_residual: dimension mismatch");
  double worst = 0.0;
  for (std::size_t c = 0; c < matrix.dim(); ++c) {
    Kahan acc;
    for (std::size_t r = 0; r < matrix.dim(); ++r) acc.add(pmf.probs[r] * matrix.at(r, c));
    worst = std::max(worst, std::abs(acc.sum - pmf.probs[c]));
  }
  return worst;
}

void write_matrix_csv(const TransitionMatrix& matrix, std::ostream& out) {
  out << "from";
  for (const Permutation& p : matrix.ordering) out << ",\"" << p.to_string() << "\"";
  out << "\n";
  out.precision(17);
  for (std::size_t r = 0; r < matrix.dim(); ++r) {
    out << "\"" << matrix.ordering[r].to_string() << "\"";
    for (std::size_t c = 0; c < matrix.dim(); ++c) out << "," << matrix.at(r, c);
    out << "\n";
  }
}

}  // namespace nurs
