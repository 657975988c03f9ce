/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qverify {

/// Even Chebyshev-ratio filter of degree 2d,
///   F(x) = T_d(2 (x^2 - delta^2) / (1 - delta^2) - 1)
///        / T_d(-2 delta^2 / (1 - delta^2) - 1),
/// which is 1 at x = 0 and small on [delta, 1].
struct FilterPolynomial {
  unsigned half_degree = 1;
  double delta = 0.5;

  FilterPolynomial(unsigned d, double gap) : half_degree(d), delta(gap) {
    if (d < 1)
      throw Error("filter half degree must be >= 1");
    if (!(gap > 0.0 && gap < 1.0))
      throw Error("filter gap must lie in (0, 1)");
  }

  unsigned degree() const { return 2 * half_degree; }
  double operator()(double x) const;
};

namespace detail {

/// log cosh(t) for t >= 0 without overflow.
inline double log_cosh(double t) {
  return t + std::log1p(std::exp(-2.0 * t)) - std::numbers::ln2;
}

inline double filter_argument(double x, double delta) {
  const double d2 = delta * delta;
  return 2.0 * (x * x - d2) / (1.0 - d2) - 1.0;
}

} // namespace detail

/// Chebyshev polynomial of the first kind, cos / cosh form.
inline double chebyshev_t(unsigned d, double y) {
  if (std::abs(y) <= 1.0)
    return std::cos(d * std::acos(y));
  const double mag = std::cosh(d * std::acosh(std::abs(y)));
  return (y < 0.0 && d % 2 == 1) ? -mag : mag;
}

inline double eval_filter(const FilterPolynomial &f, double x) {
  const unsigned d = f.half_degree;
  const double y = detail::filter_argument(x, f.delta);
  const double y0 = detail::filter_argument(0.0, f.delta);
  if (y == y0)
    return 1.0;
  // |y0| > 1 always; compare in the log domain so large d cannot overflow.
  const double log_den = detail::log_cosh(d * std::acosh(std::abs(y0)));
  const double den_sign = (d % 2 == 1) ? -1.0 : 1.0; // y0 < -1
  if (std::abs(y) <= 1.0)
    return den_sign * std::cos(d * std::acos(y)) * std::exp(-log_den);
  const double log_num = detail::log_cosh(d * std::acosh(std::abs(y)));
  const double num_sign = (y < 0.0 && d % 2 == 1) ? -1.0 : 1.0;
  return num_sign * den_sign * std::exp(log_num - log_den);
}

inline double FilterPolynomial::operator()(double x) const {
  return eval_filter(*this, x);
}

/// Number of nonzero multiples of delta inside (0, 1].
inline unsigned gap_multiples(double delta) {
  return static_cast<unsigned>(std::floor(1.0 / delta + 1e-9));
}

/// max_{j >= 1} |F(j delta)|^2 over the multiples of the gap in (0, 1].
inline double filter_leakage(const FilterPolynomial &f) {
  double worst = 0.0;
  const unsigned m = gap_multiples(f.delta);
  for (unsigned j = 1; j <= m; ++j) {
    const double v = f(std::min(1.0, j * f.delta));
    worst = std::max(worst, v * v);
  }
  return worst;
}

/// log2 of mu = |F(0)|^2 / max_j |F(j delta)|^2.
inline double filter_quality_log2_mu(const FilterPolynomial &f) {
  const double leak = filter_leakage(f);
  if (leak == 0.0)
    return std::numeric_limits<double>::infinity();
  return -std::log2(leak);
}

inline double filter_quality_mu(const FilterPolynomial &f) {
  return std::exp2(filter_quality_log2_mu(f));
}

/// arctan(1 + log2 mu), bounded in (-pi/2, pi/2).
inline double filter_heat(const FilterPolynomial &f) {
  return std::atan(1.0 + filter_quality_log2_mu(f));
}

/// True when amplification reaches success >= 1/2 for one solution among
/// 2^n states: 1 + log2(mu) >= n.
inline bool filter_admits(const FilterPolynomial &f, std::size_t n_qubits) {
  return 1.0 + filter_quality_log2_mu(f) >= static_cast<double>(n_qubits);
}

inline constexpr unsigned kMaxHalfDegree = 200;

/// Smallest d with mu >= 2^n (one bit of margin over the admission bound).
inline unsigned choose_degree(double delta, std::size_t n_qubits,
                              unsigned cap = kMaxHalfDegree) {
  if (!(delta > 0.0 && delta < 1.0))
    throw Error("choose_degree: gap must lie in (0, 1)");
  for (unsigned d = 1; d <= cap; ++d)
    if (filter_quality_log2_mu(FilterPolynomial(d, delta)) >=
        static_cast<double>(n_qubits))
      return d;
  throw BudgetError("choose_degree: no half degree <= " + std::to_string(cap) +
                    " reaches mu >= 2^" + std::to_string(n_qubits) +
                    " at gap " + std::to_string(delta));
}

} // namespace qverify
