#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdchain {

/// pi^2 / 6, the value of Euler's series sum 1/i^2.
inline constexpr double kZeta2 = 1.6449340668482264364724151666460251892;
/// 6 / pi^2.
inline constexpr double kInvZeta2 = 0.60792710185402662866327677925836583343;

/// Thrown when a query needs harmonic numbers beyond a table's capacity.
class CapacityError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A state of the chain. States are the positive integers; 1 is absorbing.
class StateIndex {
 public:
  using value_type = std::uint64_t;

  constexpr explicit StateIndex(value_type value) : value_(value) {
    if (value == 0) throw std::domain_error("StateIndex: states start at 1");
  }

  [[nodiscard]] constexpr value_type value() const noexcept { return value_; }

  friend constexpr auto operator<=>(StateIndex, StateIndex) = default;

 private:
  value_type value_;
};

/// Time parameterization of the chain.
enum class TimeMode { discrete, continuous };

[[nodiscard]] std::string to_string(TimeMode mode);
/// Parses "discrete" / "continuous"; throws std::invalid_argument otherwise.
[[nodiscard]] TimeMode parse_time_mode(const std::string& text);

/// Running compensated (Kahan-Babuska / Neumaier) sum.
class CompensatedSum {
 public:
  void add(double value) noexcept {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) noexcept {
    add(value);
    return *this;
  }

  [[nodiscard]] double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Partial sums h[n] = sum_{i<=n} 1/i and q[n] = sum_{i<=n} 1/i^2 for
/// 0 <= n <= max_n, with h[0] = q[0] = 0. Immutable once built, so one table
/// can be shared by any number of concurrent readers.
class HarmonicTable {
 public:
  /// Throws std::domain_error when max_n == 0.
  explicit HarmonicTable(std::size_t max_n);

  [[nodiscard]] std::size_t max_n() const noexcept { return h_.size() - 1; }

  /// h_n; throws CapacityError for n > max_n().
  [[nodiscard]] double h(std::size_t n) const;
  /// q_n; throws CapacityError for n > max_n().
  [[nodiscard]] double q(std::size_t n) const;

  /// h_hi - h_lo for lo <= hi, summed term by term when the span is short
  /// (the table difference cancels badly for long prefixes and short spans).
  [[nodiscard]] double h_span(std::size_t lo, std::size_t hi) const;

  /// Whole-table views, index n holds h_n (resp. q_n).
  [[nodiscard]] const std::vector<double>& h_values() const noexcept { return h_; }
  [[nodiscard]] const std::vector<double>& q_values() const noexcept { return q_; }

  /// Largest state whose transition row is covered (needs h_{j-1}).
  [[nodiscard]] std::size_t max_state() const noexcept { return max_n() + 1; }

 private:
  std::vector<double> h_;
  std::vector<double> q_;
};

[[nodiscard]] HarmonicTable build_harmonic_table(std::size_t max_n);

/// Asymptotic h_n ~ log n + gamma + 1/(2n) - 1/(12 n^2). Diagnostics only:
/// exact kernels always read the table.
[[nodiscard]] double harmonic_asymptotic(double n);

/// p(j, i) = 1 / ((j - i) h_{j-1}) for i < j, and p(1, 1) = 1.
[[nodiscard]] double transition_prob(StateIndex j, StateIndex i, const HarmonicTable& table);

/// Jump rate 1 / (j - i) of the continuous-time chain, i < j.
[[nodiscard]] double transition_rate(StateIndex j, StateIndex i);

/// Total jump rate out of j, which is h_{j-1}.
[[nodiscard]] double total_rate(StateIndex j, const HarmonicTable& table);

/// Inverse-CDF draw of the successor of j >= 2 from a uniform u in [0, 1).
/// The gap j - i is the smallest g with h_g >= u h_{j-1}.
[[nodiscard]] StateIndex sample_next_state(StateIndex j, double u, const HarmonicTable& table);

/// Smallest gap g in [lo_gap, hi_gap] with h_g >= target, by binary search.
/// Shared by every sampler that draws gaps with weights 1/g.
[[nodiscard]] std::size_t harmonic_gap_search(const HarmonicTable& table, std::size_t lo_gap,
                                              std::size_t hi_gap, double target);

/// Exponential(h_{j-1}) holding time in state j >= 2 from a standard
/// exponential variate e.
[[nodiscard]] double sample_holding_time(StateIndex j, double e, const HarmonicTable& table);

/// P_y(Y_1 <= e^{-a} y) = (h_{y-1} - h_{y - floor(e^{-a} y) - 1}) / h_{y-1}.
/// Equals 1 for a <= -log(1 - 1/y) and 0 for a > log y.
[[nodiscard]] double log_drop_prob(StateIndex y, double a, const HarmonicTable& table);

/// theta[a, inf) = -log(1 - e^{-a}) for a > 0.
[[nodiscard]] double theta_tail(double a);

}  // namespace hdchain
