#include "hdchain/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hdchain {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243104;

// Spans at most this long are summed directly in h_span.
constexpr std::size_t kDirectSpan = 64;

double row_normalizer(std::uint64_t j, const HarmonicTable& table) {
  if (j - 1 > table.max_n()) {
    throw CapacityError("harmonic table of size " + std::to_string(table.max_n()) +
                        " cannot serve state " + std::to_string(j));
  }
  return table.h_values()[j - 1];
}

}  // namespace

std::string to_string(TimeMode mode) {
  return mode == TimeMode::discrete ? "discrete" : "continuous";
}

TimeMode parse_time_mode(const std::string& text) {
  if (text == "discrete") return TimeMode::discrete;
  if (text == "continuous") return TimeMode::continuous;
  throw std::invalid_argument("unknown time mode '" + text + "'");
}

HarmonicTable::HarmonicTable(std::size_t max_n) {
  if (max_n == 0) throw std::domain_error("HarmonicTable: max_n must be at least 1");
  h_.resize(max_n + 1);
  q_.resize(max_n + 1);
  CompensatedSum h_sum;
  CompensatedSum q_sum;
  h_[0] = 0.0;
  q_[0] = 0.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const double x = static_cast<double>(n);
    h_sum += 1.0 / x;
    q_sum += 1.0 / (x * x);
    h_[n] = h_sum.value();
    q_[n] = q_sum.value();
  }
}

double HarmonicTable::h(std::size_t n) const {
  if (n > max_n()) throw CapacityError("h_" + std::to_string(n) + " beyond table");
  return h_[n];
}

double HarmonicTable::q(std::size_t n) const {
  if (n > max_n()) throw CapacityError("q_" + std::to_string(n) + " beyond table");
  return q_[n];
}

double HarmonicTable::h_span(std::size_t lo, std::size_t hi) const {
  if (lo > hi) throw std::domain_error("h_span: lo > hi");
  if (hi > max_n()) throw CapacityError("h_" + std::to_string(hi) + " beyond table");
  if (hi - lo > kDirectSpan) return h_[hi] - h_[lo];
  CompensatedSum sum;
  for (std::size_t r = hi; r > lo; --r) sum += 1.0 / static_cast<double>(r);
  return sum.value();
}

HarmonicTable build_harmonic_table(std::size_t max_n) { return HarmonicTable(max_n); }

double harmonic_asymptotic(double n) {
  return std::log(n) + kEulerGamma + 1.0 / (2.0 * n) - 1.0 / (12.0 * n * n);
}

double transition_prob(StateIndex j, StateIndex i, const HarmonicTable& table) {
  const auto from = j.value();
  const auto to = i.value();
  if (from == 1 && to == 1) return 1.0;
  if (to >= from) {
    throw std::domain_error("transition_prob: the chain only moves down (i < j required)");
  }
  return 1.0 / (static_cast<double>(from - to) * row_normalizer(from, table));
}

double transition_rate(StateIndex j, StateIndex i) {
  if (i.value() >= j.value()) {
    throw std::domain_error("transition_rate: the chain only moves down (i < j required)");
  }
  return 1.0 / static_cast<double>(j.value() - i.value());
}

double total_rate(StateIndex j, const HarmonicTable& table) {
  return row_normalizer(j.value(), table);
}

std::size_t harmonic_gap_search(const HarmonicTable& table, std::size_t lo_gap,
                                std::size_t hi_gap, double target) {
  const auto& h = table.h_values();
  const auto first = h.begin() + static_cast<std::ptrdiff_t>(lo_gap);
  const auto last = h.begin() + static_cast<std::ptrdiff_t>(hi_gap) + 1;
  const auto it = std::lower_bound(first, last, target);
  // Rounding in target can land one past the end; the last gap absorbs it.
  if (it == last) return hi_gap;
  return static_cast<std::size_t>(it - h.begin());
}

StateIndex sample_next_state(StateIndex j, double u, const HarmonicTable& table) {
  const auto from = j.value();
  if (from == 1) throw std::domain_error("sample_next_state: state 1 is absorbing");
  if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("sample_next_state: u must lie in [0, 1)");
  const double norm = row_normalizer(from, table);
  const auto gap = harmonic_gap_search(table, 1, from - 1, u * norm);
  return StateIndex(from - gap);
}

double sample_holding_time(StateIndex j, double e, const HarmonicTable& table) {
  if (j.value() == 1) throw std::domain_error("sample_holding_time: state 1 is absorbing");
  return e / row_normalizer(j.value(), table);
}

double log_drop_prob(StateIndex y, double a, const HarmonicTable& table) {
  const auto top = y.value();
  if (top < 2) throw std::domain_error("log_drop_prob: y must be at least 2");
  if (!(a >= 0.0)) throw std::domain_error("log_drop_prob: a must be nonnegative");
  const double yd = static_cast<double>(top);
  if (a <= -std::log1p(-1.0 / yd)) return 1.0;
  if (a > std::log(yd)) return 0.0;

  // floor(e^{-a} y), snapped to the nearest integer when rounding in exp
  // leaves it within a few ulps of one.
  const double by = std::exp(-a) * yd;
  double landing = std::floor(by);
  const double nearest = std::round(by);
  if (std::abs(by - nearest) <= 8.0 * std::numeric_limits<double>::epsilon() * by) {
    landing = nearest;
  }
  const auto max_landing = static_cast<std::uint64_t>(landing);
  if (max_landing == 0) return 0.0;
  if (max_landing >= top - 1) return 1.0;
  const double norm = row_normalizer(top, table);
  // Numerator is sum_{g = y - floor(by)}^{y-1} 1/g.
  return table.h_span(top - max_landing - 1, top - 1) / norm;
}

double theta_tail(double a) {
  if (!(a > 0.0)) throw std::domain_error("theta_tail: a must be positive");
  return -std::log1p(-std::exp(-a));
}

}  // namespace hdchain
