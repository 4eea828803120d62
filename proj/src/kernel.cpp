#include "nurs/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nurs {

void NursParams::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("NursParams: eps in (0,1) required");
  if (max_doublings < 1 || max_doublings > 20)
    throw std::invalid_argument("NursParams: max_doublings in [1,20] required");
}

std::string_view stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::Stop: return "Stop";
    case StopReason::SubStop: return "SubStop";
    case StopReason::MaxLen: return "MaxLen";
  }
  throw std::logic_error("bad StopReason");
}

double log_sum_exp(std::span<const double> values) {
  double m = values[0];
  for (double v : values) m = std::max(m, v);
  double s = 0.0;
  for (double v : values) s += std::exp(v - m);
  return m + std::log(s);
}

std::pair<std::vector<Permutation>, std::vector<double>> extend_orbit(
    const Permutation& edge_state, const Permutation& rho, std::int64_t steps,
    const MallowsModel& model) {
  if (steps == 0) throw std::invalid_argument("extend_orbit: steps must be nonzero");
  const std::uint64_t count = static_cast<std::uint64_t>(steps > 0 ? steps : -steps);
  std::vector<Permutation> states;
  states.reserve(count);
  const Permutation stepper = steps > 0 ? rho : inverse(rho);
  Permutation cur = edge_state;
  for (std::uint64_t t = 0; t < count; ++t) {
    cur = compose(cur, stepper);
    states.push_back(cur);
  }
  if (steps < 0) std::reverse(states.begin(), states.end());
  std::vector<double> lws;
  lws.reserve(count);
  for (const Permutation& s : states) lws.push_back(log_weight(model, s));
  return {std::move(states), std::move(lws)};
}

bool stop_check(std::span<const double> log_weights, double eps) {
  if (log_weights.empty()) throw std::invalid_argument("stop_check: empty segment");
  const double boundary = std::max(log_weights.front(), log_weights.back());
  return boundary <= std::log(eps) + log_sum_exp(log_weights);
}

bool substop_check(std::span<const double> log_weights, double eps) {
  const std::size_t len = log_weights.size();
  if ((len & (len - 1)) != 0)
    throw std::invalid_argument("substop_check: length must be a power of two");
  if (len < 2) return false;
  return stop_check(log_weights, eps) || substop_check(log_weights.first(len / 2), eps) ||
         substop_check(log_weights.last(len / 2), eps);
}

std::pair<OrbitWindow, StopReason> build_orbit(const Permutation& sigma, const Permutation& rho,
                                               std::uint32_t bits, const NursParams& params,
                                               const MallowsModel& model) {
  params.validate();
  OrbitWindow w;
  w.base = sigma;
  w.direction = rho;
  w.states = {sigma};
  w.log_weights = {log_weight(model, sigma)};

  StopReason reason = StopReason::MaxLen;
  for (std::uint32_t j = 1; j <= params.max_doublings; ++j) {
    const std::int64_t steps = std::int64_t{1} << (j - 1);
    const bool forward = (bits >> (j - 1)) & 1u;
    auto [ext_states, ext_lws] =
        forward ? extend_orbit(w.states.back(), rho, steps, model)
                : extend_orbit(w.states.front(), rho, -steps, model);
    if (substop_check(ext_lws, params.eps)) {
      reason = StopReason::SubStop;
      break;
    }
    if (forward) {
      w.states.insert(w.states.end(), std::make_move_iterator(ext_states.begin()),
                      std::make_move_iterator(ext_states.end()));
      w.log_weights.insert(w.log_weights.end(), ext_lws.begin(), ext_lws.end());
      w.b += steps;
    } else {
      w.states.insert(w.states.begin(), std::make_move_iterator(ext_states.begin()),
                      std::make_move_iterator(ext_states.end()));
      w.log_weights.insert(w.log_weights.begin(), ext_lws.begin(), ext_lws.end());
      w.a -= steps;
    }
    if (stop_check(w.log_weights, params.eps)) {
      reason = StopReason::Stop;
      break;
    }
  }
  return {std::move(w), reason};
}

std::size_t categorical_index(std::span<const double> log_weights, Rng& rng) {
  if (log_weights.empty()) throw std::invalid_argument("categorical_index: empty list");
  double m = log_weights[0];
  for (double v : log_weights) m = std::max(m, v);
  double total = 0.0;
  for (double v : log_weights) total += std::exp(v - m);
  const double u = rng.uniform01() * total;
  double cum = 0.0;
  for (std::size_t t = 0; t < log_weights.size(); ++t) {
    cum += std::exp(log_weights[t] - m);
    if (u < cum) return t;
  }
  return log_weights.size() - 1;  // fp round-off fallback
}

std::pair<Permutation, TransitionRecord> nurs_step(const Permutation& sigma,
                                                   const MallowsModel& model,
                                                   const DirectionLaw& law,
                                                   const NursParams& params, Rng& rng) {
  params.validate();
  if (model.n != sigma.size()) throw std::invalid_argument("nurs_step: size mismatch");
  const Permutation rho = law.sample(rng, model.n);
  std::uint32_t bits = 0;  // all M bits drawn up front; unused ones are still consumed
  for (std::uint32_t j = 0; j < params.max_doublings; ++j)
    bits |= static_cast<std::uint32_t>(rng.coin()) << j;
  auto [window, reason] = build_orbit(sigma, rho, bits, params, model);
  const std::size_t idx = categorical_index(window.log_weights, rng);
  TransitionRecord rec;
  rec.selected_index = window.a + static_cast<std::int64_t>(idx);
  rec.orbit_len = static_cast<std::uint32_t>(window.length());
  rec.reason = reason;
  rec.num_doublings = 0;
  for (std::size_t len = window.length(); len > 1; len >>= 1) ++rec.num_doublings;
  return {window.states[idx], rec};
}

Permutation barker_step(const Permutation& sigma, const MallowsModel& model,
                        const DirectionLaw& proposal_law, Rng& rng) {
  if (!proposal_law.inversion_symmetric())
    throw std::invalid_argument("barker_step: proposal law must be inversion-symmetric");
  const Permutation rho = proposal_law.sample(rng, model.n);
  const Permutation proposed = compose(sigma, rho);
  const double lw_cur = log_weight(model, sigma);
  const double lw_prop = log_weight(model, proposed);
  const double move_prob = 1.0 / (1.0 + std::exp(lw_cur - lw_prop));
  return rng.uniform01() < move_prob ? proposed : sigma;
}

ShiftableStepResult shiftable_step(const Permutation& sigma, const MallowsModel& model, Rng& rng) {
  if (model.n < 2) throw std::invalid_argument("shiftable_step: n >= 2 required");
  ShiftableDraw draw = sample_shiftable(rng, model.n);
  const std::uint64_t ord = cycle_stats(draw.eta).order;
  if (ord > (std::uint64_t{1} << 20))
    throw std::length_error("shiftable_step: orbit too long to enumerate");
  std::vector<Permutation> states;
  states.reserve(ord);
  std::vector<double> lws;
  lws.reserve(ord);
  Permutation cur = sigma;
  for (std::uint64_t r = 0; r < ord; ++r) {
    states.push_back(cur);
    lws.push_back(log_weight(model, cur));
    cur = compose(cur, draw.eta);
  }
  const std::size_t r = categorical_index(lws, rng);
  return {states[r], static_cast<std::uint32_t>(r), std::move(draw.eta), draw.i, draw.j};
}

}  // namespace nurs
