#pragma once

// Test-only reference computations. None of these call into the library's
// exact solver; they exist to check it.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace hdchain::oracle {

/// Harmonic number h_n as an exact rational.
mpq_class harmonic_rational(std::size_t n);

/// a(n, i) for i = 1..n by summing the probability of every strictly
/// decreasing path n -> ... -> 1 that passes through i. Exponential in n.
std::vector<double> occupation_by_enumeration(std::size_t n);

/// a(n, i) for i = 1..n, exactly, by the downward recursion over rationals.
std::vector<mpq_class> occupation_rational(std::size_t n);

/// a(n, i) for every n <= max_n at once (rows[n][i - 1]), by first-step
/// analysis on the start state: a(n, i) = sum_{i <= j < n} p(n, j) a(j, i).
std::vector<std::vector<mpq_class>> occupation_rational_all(std::size_t max_n);

/// h_n and q_n by direct summation in long double, largest terms last.
long double harmonic_long_double(std::size_t n);
long double euler_partial_long_double(std::size_t n);

/// bhat_k(j) for j = 1..k by plain truncation of sum_{m>k} b(m) p(m, j) at
/// m = cutoff_m, computing b and p from a running harmonic sum.
std::vector<double> overshoot_by_truncation(std::size_t k, std::size_t cutoff_m);

}  // namespace hdchain::oracle
