#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hdchain/rng.hpp"

namespace hdchain {

/// Monte Carlo summary of one quantity.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_reps = 0;
  std::uint64_t seed = 0;
};

/// Count, mean and centered second moment, mergeable (Chan et al.).
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) noexcept {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double n_a = static_cast<double>(count);
    const double n_b = static_cast<double>(other.count);
    const double n = n_a + n_b;
    const double delta = other.mean - mean;
    mean += delta * (n_b / n);
    m2 += other.m2 + delta * delta * (n_a * n_b / n);
    count += other.count;
  }

  /// Sample mean with standard error sqrt(s^2 / n).
  [[nodiscard]] Estimate estimate(std::uint64_t seed) const noexcept {
    Estimate e{mean, 0.0, count, seed};
    if (count > 1) e.std_error = std::sqrt(std::max(0.0, m2) / static_cast<double>(count - 1) /
                                           static_cast<double>(count));
    return e;
  }

  /// Proportion of 0/1 observations with binomial standard error sqrt(p(1-p)/n).
  [[nodiscard]] Estimate proportion(std::uint64_t seed) const noexcept {
    Estimate e{mean, 0.0, count, seed};
    if (count > 0) {
      const double p = std::clamp(mean, 0.0, 1.0);
      e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(count));
    }
    return e;
  }
};

/// Replicates are reduced in fixed blocks of this many, independent of the
/// worker count, and block partials are merged by a fixed pairwise tree.
inline constexpr std::size_t kReplicateBlock = 1024;

/// Runs `body(rng, out)` for replicates r = 0..n_reps-1, each with its own
/// PhiloxStream(seed, r); `out` has `n_stats` slots to fill per replicate.
/// Returns one Moments per slot. Output is bit-identical for any `workers`.
template <class Body>
std::vector<Moments> run_replicates(std::uint64_t n_reps, std::uint64_t seed, unsigned workers,
                                    std::size_t n_stats, const Body& body) {
  if (n_reps == 0) throw std::domain_error("run_replicates: n_reps must be positive");
  if (workers == 0) workers = 1;
  const std::size_t n_blocks = static_cast<std::size_t>((n_reps + kReplicateBlock - 1) / kReplicateBlock);
  std::vector<std::vector<Moments>> partial(n_blocks, std::vector<Moments>(n_stats));

  auto run_block = [&](std::size_t b) {
    std::vector<double> out(n_stats);
    const std::uint64_t first = static_cast<std::uint64_t>(b) * kReplicateBlock;
    const std::uint64_t last = std::min<std::uint64_t>(n_reps, first + kReplicateBlock);
    for (std::uint64_t r = first; r < last; ++r) {
      PhiloxStream rng(seed, r);
      std::fill(out.begin(), out.end(), 0.0);
      body(rng, std::span<double>(out));
      for (std::size_t s = 0; s < n_stats; ++s) partial[b][s].add(out[s]);
    }
  };

  const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(workers, n_blocks));
  if (n_threads <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    // Strided block assignment; which thread ran a block never affects its value.
    std::vector<std::exception_ptr> errors(n_threads);
    {
      std::vector<std::jthread> pool;
      pool.reserve(n_threads);
      for (unsigned w = 0; w < n_threads; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t b = w; b < n_blocks; b += n_threads) run_block(b);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& error : errors) {
      if (error) std::rethrow_exception(error);
    }
  }

  // Pairwise tree over block index.
  for (std::size_t stride = 1; stride < n_blocks; stride *= 2) {
    for (std::size_t b = 0; b + stride < n_blocks; b += 2 * stride) {
      for (std::size_t s = 0; s < n_stats; ++s) partial[b][s].merge(partial[b + stride][s]);
    }
  }
  return std::move(partial.front());
}

}  // namespace hdchain
