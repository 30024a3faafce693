#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hdchain/harmonic.hpp"
#include "hdchain/replicates.hpp"
#include "hdchain/rng.hpp"
#include "hdchain/simulate.hpp"

namespace hdchain {

/// State (X_t, Y_t) of a pair of continuous-time chains.
struct JointState {
  std::uint64_t x = 1;
  std::uint64_t y = 1;

  friend bool operator==(const JointState&, const JointState&) = default;
};

struct JointTransition {
  JointState next;
  double rate = 0.0;
};

/// Rate decomposition of the maximal coupling from (x, y), x <= y:
///   (i, i) at 1/(y - i)                 for i < x   (common move)
///   (i, y) at 1/(x - i) - 1/(y - i)     for i < x   (X alone)
///   (x, i) at 1/(y - i)                 for x <= i < y (Y alone; i = x couples)
/// For x == y both components move together at the single-chain rates.
/// Throws std::domain_error when x > y.
[[nodiscard]] std::vector<JointTransition> maximal_joint_rates(JointState state);

/// Summary of one joint run.
struct CouplingOutcome {
  double t_couple = 0.0;                        ///< first time X == Y
  std::uint64_t s_couple = 1;                   ///< common state at t_couple
  double t_absorb = 0.0;                        ///< time both reach 1
  std::optional<std::uint64_t> phase1_landing;  ///< Y at the end of the shift phase
  double t_phase1 = 0.0;                        ///< duration of the shift phase
};

/// Called with (time, state) at the start and after every event; the state
/// is reported in the caller's (X, Y) order.
using JointObserver = std::function<void(double, const JointState&)>;

/// Maximal coupling from `start` until X == Y, then one chain down to 1.
/// Events are drawn from one exponential clock at total rate
/// h_{x-1} + h_{y-x}: the lower chain's move is drawn by inverse CDF and
/// taken jointly with probability (x - i)/(y - i); the upper chain's solo
/// moves above x are drawn the same way. Per-event cost is O(log y).
[[nodiscard]] CouplingOutcome run_maximal_coupling(JointState start, PhiloxStream& rng,
                                                   const HarmonicTable& table,
                                                   const JointObserver& observer = {});

/// Shift then maximal: X is held at x0 while Y runs alone from y0 until it
/// first enters [1, x0]; the maximal coupling then runs from there.
/// Requires x0 <= y0.
[[nodiscard]] CouplingOutcome run_shift_coupling(StateIndex x0, StateIndex y0, PhiloxStream& rng,
                                                 const HarmonicTable& table,
                                                 const JointObserver& observer = {});

enum class CouplingProtocol { maximal, shift };

[[nodiscard]] std::string to_string(CouplingProtocol protocol);
/// Parses "maximal" / "shift"; throws std::invalid_argument otherwise.
[[nodiscard]] CouplingProtocol parse_coupling_protocol(const std::string& text);

struct CouplingSummary {
  Estimate p_below;   ///< P(S^couple < level_i)
  Estimate t_couple;  ///< E T^couple
  Estimate t_absorb;  ///< E T_{(1,1)}
};

/// Replicated coupling runs from (x0, y0). The shift protocol orders the
/// pair so the held component is the smaller one. Requires level_i >= 2.
[[nodiscard]] CouplingSummary estimate_coupling(StateIndex x0, StateIndex y0, StateIndex level_i,
                                                CouplingProtocol protocol, const McConfig& mc,
                                                const HarmonicTable& table);

/// P(S^couple < level_i) with its binomial standard error.
[[nodiscard]] Estimate coupling_state_cdf(StateIndex x0, StateIndex y0, StateIndex level_i,
                                          CouplingProtocol protocol, const McConfig& mc,
                                          const HarmonicTable& table);

}  // namespace hdchain
