#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nurs/direction.hpp"
#include "nurs/metric.hpp"
#include "nurs/perm.hpp"
#include "nurs/rng.hpp"

namespace nurs {

struct NursParams {
  double eps = 0.01;
  std::uint32_t max_doublings = 7;

  void validate() const;
};

enum class StopReason { Stop, SubStop, MaxLen };
std::string_view stop_reason_name(StopReason reason);

// Contiguous orbit segment: states[k - a] = base o direction^k for k in
// [a, b], with the aligned log-weights. Indices, not states, are the
// fundamental objects; when a window wraps past ord(direction) the repeated
// states keep their own index weights.
struct OrbitWindow {
  Permutation base;
  Permutation direction;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::vector<Permutation> states;
  std::vector<double> log_weights;

  std::size_t length() const { return states.size(); }
};

struct TransitionRecord {
  std::int64_t selected_index = 0;
  std::uint32_t orbit_len = 0;
  StopReason reason = StopReason::MaxLen;
  std::uint32_t num_doublings = 0;
};

// The |steps| consecutive orbit elements adjacent to edge_state: forward
// (edge o rho^1, ..., edge o rho^steps) for steps > 0, backward
// (edge o rho^steps, ..., edge o rho^-1) for steps < 0, each obtained by
// repeated single application of rho or rho^-1.
std::pair<std::vector<Permutation>, std::vector<double>> extend_orbit(
    const Permutation& edge_state, const Permutation& rho, std::int64_t steps,
    const MallowsModel& model);

// No-underrun condition on a segment's log-weights: true iff
// max(boundary weights) <= eps * (total weight), inclusive, evaluated with
// the log-sum-exp trick.
bool stop_check(std::span<const double> log_weights, double eps);

// Recursive rule over the dyadic decomposition: false for length < 2, else
// stop_check on the whole segment or substop_check on either half. Length
// must be a power of two.
bool substop_check(std::span<const double> log_weights, double eps);

// Deterministic replay of the doubling loop given the direction bits (bit
// j-1 set = stage j doubles forward). The returned window and reason are a
// pure function of (sigma, rho, bits, params, model), which is what the
// exact enumeration exploits.
std::pair<OrbitWindow, StopReason> build_orbit(const Permutation& sigma, const Permutation& rho,
                                               std::uint32_t bits, const NursParams& params,
                                               const MallowsModel& model);

// Index t with probability exp(lw_t - logsumexp(lw)); invariant under adding
// a constant to all log-weights.
std::size_t categorical_index(std::span<const double> log_weights, Rng& rng);

// One NURS transition: direction, doubling bits, orbit, categorical select.
// Rejection-free; the returned state always lies in the final window.
std::pair<Permutation, TransitionRecord> nurs_step(const Permutation& sigma,
                                                   const MallowsModel& model,
                                                   const DirectionLaw& law,
                                                   const NursParams& params, Rng& rng);

// Two-point Barker rule: propose sigma o rho, move with probability
// w'/(w + w'). Requires an inversion-symmetric proposal law.
Permutation barker_step(const Permutation& sigma, const MallowsModel& model,
                        const DirectionLaw& proposal_law, Rng& rng);

// Idealized full-orbit kernel for shiftable directions: W = {0..2m-1} with
// 2m = ord(eta), index selected with probability proportional to
// w(sigma o eta^r); no stopping rules.
struct ShiftableStepResult {
  Permutation next;
  std::uint32_t r = 0;
  Permutation eta;
  std::uint32_t i = 0, j = 0;
};
ShiftableStepResult shiftable_step(const Permutation& sigma, const MallowsModel& model, Rng& rng);

double log_sum_exp(std::span<const double> values);

}  // namespace nurs
