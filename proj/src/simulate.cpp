#include "hdchain/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hdchain {

namespace {

void require_capacity(std::uint64_t state, const HarmonicTable& table) {
  if (state > table.max_state()) {
    throw CapacityError("state " + std::to_string(state) + " exceeds harmonic table capacity " +
                        std::to_string(table.max_state()));
  }
}

constexpr auto never_stop = [](std::uint64_t) { return false; };

}  // namespace

PathSample run_path(StateIndex n, TimeMode mode, PhiloxStream& rng, const HarmonicTable& table) {
  require_capacity(n.value(), table);
  PathSample path;
  path.mode = mode;
  CompensatedSum elapsed;
  walk(n.value(), mode, rng, table, never_stop, [&](std::uint64_t state, double hold) {
    path.states.push_back(state);
    if (state > 1 && mode == TimeMode::continuous) {
      path.holds.push_back(hold);
      elapsed += hold;
    }
  });
  path.total_time = mode == TimeMode::discrete ? static_cast<double>(path.states.size() - 1)
                                               : elapsed.value();
  return path;
}

std::map<std::uint64_t, Estimate> estimate_occupation(StateIndex n,
                                                      const std::set<std::uint64_t>& targets,
                                                      TimeMode mode, const McConfig& mc,
                                                      const HarmonicTable& table) {
  require_capacity(n.value(), table);
  for (auto target : targets) {
    if (target == 0 || target > n.value()) {
      throw std::domain_error("estimate_occupation: target " + std::to_string(target) +
                              " outside [1, " + std::to_string(n.value()) + "]");
    }
  }
  const std::vector<std::uint64_t> sorted(targets.begin(), targets.end());
  // Stop once the path is below the smallest target; later states cannot hit.
  const std::uint64_t floor_target = sorted.empty() ? n.value() : sorted.front();

  auto moments = run_replicates(mc.n_reps, mc.seed, mc.workers, sorted.size(),
                                [&](PhiloxStream& rng, std::span<double> hit) {
                                  std::size_t next = sorted.size();
                                  walk(
                                      n.value(), mode, rng, table,
                                      [&](std::uint64_t state) { return state < floor_target; },
                                      [&](std::uint64_t state, double) {
                                        // Targets are visited in decreasing order.
                                        while (next > 0 && sorted[next - 1] > state) --next;
                                        if (next > 0 && sorted[next - 1] == state) hit[next - 1] = 1.0;
                                      });
                                });

  std::map<std::uint64_t, Estimate> out;
  for (std::size_t s = 0; s < sorted.size(); ++s) out[sorted[s]] = moments[s].proportion(mc.seed);
  return out;
}

Estimate estimate_absorption_time(StateIndex n, TimeMode mode, const McConfig& mc,
                                  const HarmonicTable& table) {
  require_capacity(n.value(), table);
  auto moments = run_replicates(mc.n_reps, mc.seed, mc.workers, 1,
                                [&](PhiloxStream& rng, std::span<double> out) {
                                  CompensatedSum elapsed;
                                  walk(n.value(), mode, rng, table, never_stop,
                                       [&](std::uint64_t, double hold) { elapsed += hold; });
                                  out[0] = elapsed.value();
                                });
  return moments[0].estimate(mc.seed);
}

OvershootSample sample_overshoot(StateIndex y, StateIndex x, PhiloxStream& rng,
                                 const HarmonicTable& table) {
  if (x >= y) throw std::domain_error("sample_overshoot: requires x < y");
  require_capacity(y.value(), table);
  const std::uint64_t level = x.value();
  // Time plays no role in the landing state, so the discrete chain suffices.
  const auto landing = walk(
      y.value(), TimeMode::discrete, rng, table, [&](std::uint64_t state) { return state <= level; },
      [](std::uint64_t, double) {});
  return {y.value(), level, landing,
          std::log(static_cast<double>(level)) - std::log(static_cast<double>(landing))};
}

Estimate estimate_overshoot(StateIndex y, StateIndex x, const McConfig& mc, const HarmonicTable& table) {
  if (x >= y) throw std::domain_error("estimate_overshoot: requires x < y");
  require_capacity(y.value(), table);
  auto moments = run_replicates(mc.n_reps, mc.seed, mc.workers, 1,
                                [&](PhiloxStream& rng, std::span<double> out) {
                                  out[0] = sample_overshoot(y, x, rng, table).v;
                                });
  return moments[0].estimate(mc.seed);
}

SurvivalCheck survival_bound_check(StateIndex x, StateIndex k, double t, const McConfig& mc,
                                   const HarmonicTable& table) {
  if (x < k) throw std::domain_error("survival_bound_check: requires k <= x");
  if (!(t >= 0.0)) throw std::domain_error("survival_bound_check: requires t >= 0");
  require_capacity(x.value(), table);
  const std::uint64_t level = k.value();

  auto moments = run_replicates(mc.n_reps, mc.seed, mc.workers, 1,
                                [&](PhiloxStream& rng, std::span<double> out) {
                                  // T_k <= t iff the state at time t is <= k.
                                  double elapsed = 0.0;
                                  bool overtime = false;
                                  const auto last = walk(
                                      x.value(), TimeMode::continuous, rng, table,
                                      [&](std::uint64_t state) { return state <= level || overtime; },
                                      [&](std::uint64_t, double hold) {
                                        elapsed += hold;
                                        if (elapsed > t) overtime = true;
                                      });
                                  out[0] = (last <= level && !overtime) ? 1.0 : 0.0;
                                });

  SurvivalCheck check;
  check.empirical = moments[0].proportion(mc.seed);
  check.bound = std::exp(2.0 * t) *
                std::sqrt(static_cast<double>(k.value()) / static_cast<double>(x.value()));
  return check;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line: need at least two paired points");
  }
  const double count = static_cast<double>(x.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s) {
    mean_x += x[s];
    mean_y += y[s];
  }
  mean_x /= count;
  mean_y /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s) {
    sxy += (x[s] - mean_x) * (y[s] - mean_y);
    sxx += (x[s] - mean_x) * (x[s] - mean_x);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  return fit;
}

}  // namespace hdchain
