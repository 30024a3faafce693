#pragma once

#include <cstddef>
#include <vector>

#include "hdchain/harmonic.hpp"

namespace hdchain {

/// a(n, i) for one start state n: the probability that the chain started at
/// n ever visits i. `values[i - 1]` holds a(n, i) for i = 1..n.
struct OccupationVector {
  std::size_t start_n = 1;
  std::vector<double> values;

  [[nodiscard]] double at(std::size_t i) const { return values.at(i - 1); }
};

/// Exact occupation probabilities by the downward recursion
///   a(n, n) = 1,  a(n, i) = sum_{j=i+1..n} a(n, j) / ((j - i) h_{j-1}).
/// O(n^2) time, O(n) space. Throws CapacityError when n > table.max_state().
[[nodiscard]] OccupationVector occupation_vector(StateIndex n, const HarmonicTable& table);

/// Limit occupation b(1) = 1, b(i) = 6 h_{i-1} / (pi^2 (i - 1)).
[[nodiscard]] double limit_value(StateIndex i, const HarmonicTable& table);

/// How an infinite series is cut off at a finite index.
enum class SeriesTail {
  closed,  ///< add the telescoped remainder in closed form
  none,    ///< plain truncation
};

/// b(i) - sum_{j>i} b(j) p(j, i), with the sum evaluated term by term for
/// j <= cutoff_m and the remainder j > cutoff_m taken in closed form:
///   i >= 2:  (6 / (pi^2 (i - 1))) (h_{M-1} - h_{M-i})
///   i = 1:   1 - (6 / pi^2) q_{M-1}
/// Requires cutoff_m > i + 1 and cutoff_m <= table.max_state().
[[nodiscard]] double fixed_point_residual(StateIndex i, std::size_t cutoff_m,
                                          const HarmonicTable& table,
                                          SeriesTail tail = SeriesTail::closed);

/// b(i) for i = 1..max_i with the fixed-point residual of each.
struct LimitTable {
  std::size_t max_i = 0;
  std::size_t cutoff_m = 0;
  std::vector<double> b;          ///< b[i - 1] = b(i)
  std::vector<double> residuals;  ///< residuals[i - 1] at cutoff_m

  [[nodiscard]] double max_abs_residual() const;
};

[[nodiscard]] LimitTable build_limit_table(std::size_t max_i, std::size_t cutoff_m,
                                           const HarmonicTable& table);

/// Law of the first state <= k for the chain "started from infinity":
///   bhat_k(j) = sum_{m>k} b(m) p(m, j),  1 <= j <= k.
/// `mass[j - 1]` holds bhat_k(j).
struct OvershootDistribution {
  std::size_t k = 1;
  std::vector<double> mass;

  [[nodiscard]] double total() const;
};

/// Closed form: bhat_k(1) = 1 - (6/pi^2) q_{k-1} and, for 2 <= j <= k,
/// bhat_k(j) = (6 / (pi^2 (j - 1))) (h_{k-1} - h_{k-j}).
[[nodiscard]] OvershootDistribution overshoot_distribution(std::size_t k, const HarmonicTable& table);

/// s_k = sum_{j=1..k} sum_{m>k} 1 / ((m - j)(m - 1)), which equals pi^2/6 for
/// every k. Terms with m <= cutoff_m are summed directly; the remainder is
/// either added in closed form or dropped.
[[nodiscard]] double euler_partition_sum(std::size_t k, std::size_t cutoff_m,
                                         const HarmonicTable& table,
                                         SeriesTail tail = SeriesTail::closed);

/// E_n T_1 from the occupation vector: sum_{i=2..n} a(n, i) in discrete time,
/// sum_{i=2..n} a(n, i) / h_{i-1} in continuous time.
[[nodiscard]] double mean_absorption(const OccupationVector& occupation, TimeMode mode,
                                     const HarmonicTable& table);
[[nodiscard]] double mean_absorption(StateIndex n, TimeMode mode, const HarmonicTable& table);

}  // namespace hdchain
