#include "hdchain/coupling.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace hdchain {

namespace {

void require_capacity(std::uint64_t state, const HarmonicTable& table) {
  if (state > table.max_state()) {
    throw CapacityError("state " + std::to_string(state) + " exceeds harmonic table capacity " +
                        std::to_string(table.max_state()));
  }
}

/// Reports states in the caller's orientation while the simulation keeps
/// lower <= upper internally.
class OrientedObserver {
 public:
  OrientedObserver(const JointObserver& observer, bool swapped)
      : observer_(observer), swapped_(swapped) {}

  void operator()(double time, std::uint64_t lower, std::uint64_t upper) const {
    if (!observer_) return;
    observer_(time, swapped_ ? JointState{upper, lower} : JointState{lower, upper});
  }

 private:
  const JointObserver& observer_;
  bool swapped_;
};

/// Runs the coupled pair lower <= upper from time t0 until absorption.
void run_joint(std::uint64_t lower, std::uint64_t upper, double t0, PhiloxStream& rng,
               const HarmonicTable& table, const OrientedObserver& report, CouplingOutcome& out) {
  const auto& h = table.h_values();
  double time = t0;

  while (lower != upper) {
    // lower < upper, upper >= 2.
    const double lower_rate = h[lower - 1];
    const double upper_solo_rate = h[upper - lower];
    const double total = lower_rate + upper_solo_rate;
    time += rng.exponential() / total;
    const double pick = rng.uniform() * total;
    if (pick < lower_rate) {
      const auto gap = harmonic_gap_search(table, 1, lower - 1, pick);
      const std::uint64_t dest = lower - gap;
      // Joint with probability (1/(upper - dest)) / (1/(lower - dest)).
      const double joint = static_cast<double>(gap) / static_cast<double>(upper - dest);
      if (rng.uniform() < joint) upper = dest;
      lower = dest;
    } else {
      const double target = std::min(pick - lower_rate, upper_solo_rate);
      const auto gap = harmonic_gap_search(table, 1, upper - lower, target);
      upper -= gap;
    }
    report(time, lower, upper);
  }

  out.t_couple = time;
  out.s_couple = lower;

  std::uint64_t state = lower;
  while (state > 1) {
    const StateIndex current(state);
    time += sample_holding_time(current, rng.exponential(), table);
    state = sample_next_state(current, rng.uniform(), table).value();
    report(time, state, state);
  }
  out.t_absorb = time;
}

}  // namespace

std::vector<JointTransition> maximal_joint_rates(JointState state) {
  const auto x = state.x;
  const auto y = state.y;
  if (x == 0 || y == 0) throw std::domain_error("maximal_joint_rates: states start at 1");
  if (x > y) throw std::domain_error("maximal_joint_rates: order the pair so that x <= y");

  std::vector<JointTransition> rates;
  if (x == y) {
    for (std::uint64_t i = 1; i < x; ++i) {
      rates.push_back({{i, i}, 1.0 / static_cast<double>(x - i)});
    }
    return rates;
  }
  rates.reserve(2 * (x - 1) + (y - x));
  for (std::uint64_t i = 1; i < x; ++i) {
    rates.push_back({{i, i}, 1.0 / static_cast<double>(y - i)});
  }
  for (std::uint64_t i = 1; i < x; ++i) {
    rates.push_back({{i, y}, 1.0 / static_cast<double>(x - i) - 1.0 / static_cast<double>(y - i)});
  }
  for (std::uint64_t i = x; i < y; ++i) {
    rates.push_back({{x, i}, 1.0 / static_cast<double>(y - i)});
  }
  return rates;
}

CouplingOutcome run_maximal_coupling(JointState start, PhiloxStream& rng, const HarmonicTable& table,
                                     const JointObserver& observer) {
  if (start.x == 0 || start.y == 0) throw std::domain_error("run_maximal_coupling: states start at 1");
  const bool swapped = start.x > start.y;
  const auto lower = std::min(start.x, start.y);
  const auto upper = std::max(start.x, start.y);
  require_capacity(upper, table);

  const OrientedObserver report(observer, swapped);
  report(0.0, lower, upper);
  CouplingOutcome out;
  run_joint(lower, upper, 0.0, rng, table, report, out);
  return out;
}

CouplingOutcome run_shift_coupling(StateIndex x0, StateIndex y0, PhiloxStream& rng,
                                   const HarmonicTable& table, const JointObserver& observer) {
  if (x0 > y0) throw std::domain_error("run_shift_coupling: requires x0 <= y0");
  require_capacity(y0.value(), table);
  const std::uint64_t held = x0.value();

  // Phase 1: X frozen at x0, Y alone until Y <= x0.
  const OrientedObserver phase1_report(observer, false);
  phase1_report(0.0, held, y0.value());
  double time = 0.0;
  std::uint64_t y = y0.value();
  while (y > held) {
    const StateIndex current(y);
    time += sample_holding_time(current, rng.exponential(), table);
    y = sample_next_state(current, rng.uniform(), table).value();
    phase1_report(time, held, y);
  }

  CouplingOutcome out;
  out.phase1_landing = y;
  out.t_phase1 = time;
  // Phase 2: maximal coupling with Y now the lower component.
  const OrientedObserver phase2_report(observer, true);
  run_joint(y, held, time, rng, table, phase2_report, out);
  return out;
}

std::string to_string(CouplingProtocol protocol) {
  return protocol == CouplingProtocol::maximal ? "maximal" : "shift";
}

CouplingProtocol parse_coupling_protocol(const std::string& text) {
  if (text == "maximal") return CouplingProtocol::maximal;
  if (text == "shift") return CouplingProtocol::shift;
  throw std::invalid_argument("unknown coupling protocol '" + text + "'");
}

CouplingSummary estimate_coupling(StateIndex x0, StateIndex y0, StateIndex level_i,
                                  CouplingProtocol protocol, const McConfig& mc,
                                  const HarmonicTable& table) {
  if (level_i.value() < 2) throw std::domain_error("estimate_coupling: level_i must be at least 2");
  require_capacity(std::max(x0, y0).value(), table);
  const auto lower = std::min(x0, y0);
  const auto upper = std::max(x0, y0);

  auto moments = run_replicates(mc.n_reps, mc.seed, mc.workers, 3,
                                [&](PhiloxStream& rng, std::span<double> out) {
                                  const auto outcome =
                                      protocol == CouplingProtocol::maximal
                                          ? run_maximal_coupling({x0.value(), y0.value()}, rng, table)
                                          : run_shift_coupling(lower, upper, rng, table);
                                  out[0] = outcome.s_couple < level_i.value() ? 1.0 : 0.0;
                                  out[1] = outcome.t_couple;
                                  out[2] = outcome.t_absorb;
                                });
  return {moments[0].proportion(mc.seed), moments[1].estimate(mc.seed), moments[2].estimate(mc.seed)};
}

Estimate coupling_state_cdf(StateIndex x0, StateIndex y0, StateIndex level_i,
                            CouplingProtocol protocol, const McConfig& mc, const HarmonicTable& table) {
  return estimate_coupling(x0, y0, level_i, protocol, mc, table).p_below;
}

}  // namespace hdchain
