#include "hdchain/exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hdchain {

namespace {

void require_state(std::size_t state, const HarmonicTable& table, const char* what) {
  if (state > table.max_state()) {
    throw CapacityError(std::string(what) + ": state " + std::to_string(state) +
                        " exceeds harmonic table capacity " + std::to_string(table.max_state()));
  }
}

}  // namespace

OccupationVector occupation_vector(StateIndex n, const HarmonicTable& table) {
  const std::size_t top = n.value();
  require_state(top, table, "occupation_vector");
  const auto& h = table.h_values();

  OccupationVector out;
  out.start_n = top;
  out.values.assign(top, 0.0);
  out.values[top - 1] = 1.0;
  if (top == 1) return out;

  // weight[j - 1] = a(n, j) / h_{j-1}, filled as a(n, j) becomes known.
  std::vector<double> weight(top, 0.0);
  weight[top - 1] = 1.0 / h[top - 1];
  for (std::size_t i = top - 1; i >= 1; --i) {
    CompensatedSum sum;
    for (std::size_t j = i + 1; j <= top; ++j) {
      sum += weight[j - 1] / static_cast<double>(j - i);
    }
    out.values[i - 1] = sum.value();
    if (i >= 2) weight[i - 1] = out.values[i - 1] / h[i - 1];
  }
  return out;
}

double limit_value(StateIndex i, const HarmonicTable& table) {
  const std::size_t state = i.value();
  if (state == 1) return 1.0;
  require_state(state, table, "limit_value");
  return kInvZeta2 * table.h(state - 1) / static_cast<double>(state - 1);
}

double fixed_point_residual(StateIndex i, std::size_t cutoff_m, const HarmonicTable& table,
                            SeriesTail tail) {
  const std::size_t target = i.value();
  if (cutoff_m <= target + 1) {
    throw std::domain_error("fixed_point_residual: cutoff_m must exceed i + 1");
  }
  require_state(cutoff_m, table, "fixed_point_residual");

  CompensatedSum rhs;
  for (std::size_t j = target + 1; j <= cutoff_m; ++j) {
    const StateIndex from(j);
    rhs += limit_value(from, table) * transition_prob(from, i, table);
  }
  if (tail == SeriesTail::closed) {
    if (target == 1) {
      // sum_{j>M} (6/pi^2) / (j - 1)^2
      rhs += 1.0 - kInvZeta2 * table.q(cutoff_m - 1);
    } else {
      // sum_{j>M} (1/(j-i) - 1/(j-1)) telescopes to h_{M-1} - h_{M-i}.
      rhs += kInvZeta2 / static_cast<double>(target - 1) *
             table.h_span(cutoff_m - target, cutoff_m - 1);
    }
  }
  return limit_value(i, table) - rhs.value();
}

double LimitTable::max_abs_residual() const {
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, std::abs(r));
  return worst;
}

LimitTable build_limit_table(std::size_t max_i, std::size_t cutoff_m, const HarmonicTable& table) {
  if (max_i == 0) throw std::domain_error("build_limit_table: max_i must be positive");
  LimitTable out;
  out.max_i = max_i;
  out.cutoff_m = cutoff_m;
  out.b.reserve(max_i);
  out.residuals.reserve(max_i);
  for (std::size_t i = 1; i <= max_i; ++i) {
    out.b.push_back(limit_value(StateIndex(i), table));
    out.residuals.push_back(fixed_point_residual(StateIndex(i), cutoff_m, table));
  }
  return out;
}

double OvershootDistribution::total() const {
  CompensatedSum sum;
  for (double m : mass) sum += m;
  return sum.value();
}

OvershootDistribution overshoot_distribution(std::size_t k, const HarmonicTable& table) {
  if (k == 0) throw std::domain_error("overshoot_distribution: k must be positive");
  if (k - 1 > table.max_n()) {
    throw CapacityError("overshoot_distribution: k = " + std::to_string(k) + " beyond table");
  }
  OvershootDistribution out;
  out.k = k;
  out.mass.resize(k);
  out.mass[0] = 1.0 - kInvZeta2 * table.q(k - 1);
  for (std::size_t j = 2; j <= k; ++j) {
    out.mass[j - 1] = kInvZeta2 / static_cast<double>(j - 1) * table.h_span(k - j, k - 1);
  }
  return out;
}

double euler_partition_sum(std::size_t k, std::size_t cutoff_m, const HarmonicTable& table,
                           SeriesTail tail) {
  if (k == 0) throw std::domain_error("euler_partition_sum: k must be positive");
  if (cutoff_m <= k) throw std::domain_error("euler_partition_sum: cutoff_m must exceed k");
  if (cutoff_m - 1 > table.max_n()) {
    throw CapacityError("euler_partition_sum: cutoff " + std::to_string(cutoff_m) + " beyond table");
  }

  CompensatedSum sum;
  for (std::size_t j = 1; j <= k; ++j) {
    for (std::size_t m = k + 1; m <= cutoff_m; ++m) {
      sum += 1.0 / (static_cast<double>(m - j) * static_cast<double>(m - 1));
    }
  }
  if (tail == SeriesTail::closed) {
    sum += kZeta2 - table.q(cutoff_m - 1);
    for (std::size_t j = 2; j <= k; ++j) {
      sum += table.h_span(cutoff_m - j, cutoff_m - 1) / static_cast<double>(j - 1);
    }
  }
  return sum.value();
}

double mean_absorption(const OccupationVector& occupation, TimeMode mode, const HarmonicTable& table) {
  CompensatedSum sum;
  for (std::size_t i = 2; i <= occupation.start_n; ++i) {
    const double a = occupation.values[i - 1];
    sum += mode == TimeMode::discrete ? a : a / table.h(i - 1);
  }
  return sum.value();
}

double mean_absorption(StateIndex n, TimeMode mode, const HarmonicTable& table) {
  if (n.value() == 1) return 0.0;
  return mean_absorption(occupation_vector(n, table), mode, table);
}

}  // namespace hdchain
