#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "hdchain/harmonic.hpp"
#include "hdchain/replicates.hpp"
#include "hdchain/rng.hpp"

namespace hdchain {

/// One trajectory to absorption. `states` is strictly decreasing and ends
/// at 1; in continuous mode `holds[t]` is the time spent in `states[t]` for
/// every non-absorbing state.
struct PathSample {
  TimeMode mode = TimeMode::discrete;
  std::vector<std::uint64_t> states;
  std::vector<double> holds;
  double total_time = 0.0;
};

/// Landing state of the chain from y at its first entry into [1, x].
struct OvershootSample {
  std::uint64_t start_y = 0;
  std::uint64_t level_x = 0;
  std::uint64_t landing = 0;
  double v = 0.0;  ///< log x - log landing
};

/// Shared knobs for replicate estimators.
struct McConfig {
  std::uint64_t n_reps = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Walks the chain from `n` until `stop(state)` is true or state 1 is
/// reached, calling `visit(state, hold)` for each state entered. In
/// continuous mode `hold` is the holding time drawn for that state (0 for
/// the final state); in discrete mode it is 1 (0 for the final state).
/// Returns the final state.
template <class Stop, class Visit>
std::uint64_t walk(std::uint64_t n, TimeMode mode, PhiloxStream& rng, const HarmonicTable& table,
                   const Stop& stop, const Visit& visit) {
  std::uint64_t state = n;
  while (state > 1 && !stop(state)) {
    double hold = 1.0;
    const StateIndex current(state);
    if (mode == TimeMode::continuous) hold = sample_holding_time(current, rng.exponential(), table);
    visit(state, hold);
    state = sample_next_state(current, rng.uniform(), table).value();
  }
  visit(state, 0.0);
  return state;
}

[[nodiscard]] PathSample run_path(StateIndex n, TimeMode mode, PhiloxStream& rng,
                                  const HarmonicTable& table);

/// Fraction of paths from n that visit each target, with binomial errors.
/// Throws std::domain_error when a target exceeds n.
[[nodiscard]] std::map<std::uint64_t, Estimate> estimate_occupation(
    StateIndex n, const std::set<std::uint64_t>& targets, TimeMode mode, const McConfig& mc,
    const HarmonicTable& table);

/// Mean and standard error of T_1 (steps or elapsed time).
[[nodiscard]] Estimate estimate_absorption_time(StateIndex n, TimeMode mode, const McConfig& mc,
                                                const HarmonicTable& table);

/// Runs the chain from y until it first enters [1, x]. Requires x < y.
[[nodiscard]] OvershootSample sample_overshoot(StateIndex y, StateIndex x, PhiloxStream& rng,
                                               const HarmonicTable& table);

/// E_y[V_x], V_x = log x - log(first state <= x). Requires x < y.
[[nodiscard]] Estimate estimate_overshoot(StateIndex y, StateIndex x, const McConfig& mc,
                                          const HarmonicTable& table);

struct SurvivalCheck {
  Estimate empirical;  ///< P_x(T_k <= t), continuous time
  double bound = 0.0;  ///< e^{2t} sqrt(k / x)
};

/// Empirical P_x(T_k <= t) for the continuous chain next to the analytic
/// bound e^{2t} sqrt(k/x). Requires 1 <= k <= x and t >= 0.
[[nodiscard]] SurvivalCheck survival_bound_check(StateIndex x, StateIndex k, double t,
                                                 const McConfig& mc, const HarmonicTable& table);

/// Ordinary least squares fit y = intercept + slope * x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

[[nodiscard]] LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hdchain
