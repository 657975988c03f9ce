/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/error.hpp"
#include "qverify/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace qverify {

enum class OptimizerKind {
  /// Simultaneous-perturbation stochastic approximation.
  spsa,
  /// Linear-interpolation trust region over a simplex (COBYLA-style,
  /// unconstrained).
  trust_region,
};

inline std::string to_string(OptimizerKind k) {
  return k == OptimizerKind::spsa ? "spsa" : "trust-region";
}

inline OptimizerKind parse_optimizer_kind(const std::string &s) {
  if (s == "spsa")
    return OptimizerKind::spsa;
  if (s == "trust-region" || s == "cobyla")
    return OptimizerKind::trust_region;
  throw Error("unknown optimizer '" + s + "' (expected spsa or trust-region)");
}

struct OptimizerSpec {
  OptimizerKind kind = OptimizerKind::trust_region;
  /// SPSA: update steps. Trust region: objective evaluations.
  std::size_t max_iterations = 200;
  /// Trust region: final radius. SPSA: stop once a step is shorter.
  double tolerance = 1e-4;
  RunSeed seed{};

  double spsa_perturbation = 0.2;
  double spsa_first_step = 0.2;
  std::size_t spsa_calibration_samples = 10;

  double initial_radius = 0.5;
  double shrink_factor = 0.5;
};

struct TracePoint {
  std::size_t iteration;
  double value;
};

struct OptimizationResult {
  std::vector<double> params;
  double value = std::numeric_limits<double>::infinity();
  std::vector<TracePoint> trace;
  std::size_t evaluations = 0;
  bool diverged = false;
};

using Objective = std::function<double(std::span<const double>)>;

namespace detail {

inline double distance(const std::vector<double> &a,
                       const std::vector<double> &b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

inline OptimizationResult spsa_minimize(const Objective &f,
                                        std::vector<double> x,
                                        const OptimizerSpec &spec) {
  constexpr double alpha = 0.602;
  constexpr double gamma = 0.101;
  const std::size_t n = x.size();
  const double c = spec.spsa_perturbation;
  const double big_a = 0.1 * static_cast<double>(spec.max_iterations);
  Rng rng(spec.seed);
  OptimizationResult r;

  std::vector<double> delta(n), xp(n), xm(n);
  auto perturb = [&](double ck) {
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = rng.sign();
      xp[i] = x[i] + ck * delta[i];
      xm[i] = x[i] - ck * delta[i];
    }
    r.evaluations += 2;
    return f(xp) - f(xm);
  };

  // Gain calibration: mean gradient magnitude over a few random directions.
  double mag = 0.0;
  for (std::size_t s = 0; s < spec.spsa_calibration_samples; ++s)
    mag += std::abs(perturb(c)) / (2.0 * c);
  mag /= static_cast<double>(std::max<std::size_t>(1, spec.spsa_calibration_samples));
  const double a = spec.spsa_first_step * std::pow(big_a + 1.0, alpha) /
                   std::max(mag, 1e-12);

  r.params = x;
  r.value = f(x);
  ++r.evaluations;
  if (!std::isfinite(r.value)) {
    r.diverged = true;
    return r;
  }
  for (std::size_t k = 0; k < spec.max_iterations; ++k) {
    const double kk = static_cast<double>(k + 1);
    const double ck = c / std::pow(kk, gamma);
    const double ak = a / std::pow(kk + big_a, alpha);
    const double diff = perturb(ck);
    double step2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double step = ak * diff / (2.0 * ck) * delta[i];
      x[i] -= step;
      step2 += step * step;
    }
    const double v = f(x);
    ++r.evaluations;
    r.trace.push_back({k + 1, v});
    if (!std::isfinite(v)) {
      r.diverged = true;
      break;
    }
    if (v < r.value) {
      r.value = v;
      r.params = x;
    }
    if (std::sqrt(step2) < spec.tolerance)
      break;
  }
  return r;
}

inline OptimizationResult trust_region_minimize(const Objective &f,
                                                std::vector<double> x0,
                                                const OptimizerSpec &spec) {
  const std::size_t n = x0.size();
  OptimizationResult r;
  double rho = spec.initial_radius;

  std::vector<std::vector<double>> pts;
  std::vector<double> vals;
  bool stop = false;

  auto eval = [&](const std::vector<double> &x) {
    const double v = f(x);
    ++r.evaluations;
    r.trace.push_back({r.evaluations, v});
    if (!std::isfinite(v)) {
      r.diverged = true;
      stop = true;
    } else if (v < r.value) {
      r.value = v;
      r.params = x;
    }
    if (r.evaluations >= spec.max_iterations)
      stop = true;
    return v;
  };

  auto best_index = [&]() {
    return static_cast<std::size_t>(
        std::min_element(vals.begin(), vals.end()) - vals.begin());
  };

  // Simplex of n + 1 points around `centre` (whose value is known).
  auto rebuild = [&](const std::vector<double> &centre, double centre_value) {
    pts.assign(1, centre);
    vals.assign(1, centre_value);
    for (std::size_t i = 0; i < n && !stop; ++i) {
      auto p = centre;
      p[i] += rho;
      const double v = eval(p);
      pts.push_back(std::move(p));
      vals.push_back(v);
    }
  };

  const double v0 = eval(x0);
  if (stop || n == 0)
    return r;
  rebuild(x0, v0);

  while (!stop) {
    if (pts.size() != n + 1)
      break;
    const std::size_t b = best_index();
    Eigen::MatrixXd d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0, row = 0; i <= n; ++i) {
      if (i == b)
        continue;
      for (std::size_t j = 0; j < n; ++j)
        d(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) =
            pts[i][j] - pts[b][j];
      rhs(static_cast<Eigen::Index>(row)) = vals[i] - vals[b];
      ++row;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(d);
    lu.setThreshold(1e-10);
    if (!lu.isInvertible()) {
      rebuild(pts[b], vals[b]);
      continue;
    }
    const Eigen::VectorXd g = lu.solve(rhs);
    const double gnorm = g.norm();
    if (gnorm < 1e-14) {
      rho *= spec.shrink_factor;
      if (rho < spec.tolerance)
        break;
      rebuild(pts[b], vals[b]);
      continue;
    }

    auto trial = pts[b];
    for (std::size_t j = 0; j < n; ++j)
      trial[j] -= rho * g(static_cast<Eigen::Index>(j)) / gnorm;
    const double ft = eval(trial);
    if (stop)
      break;

    std::size_t worst = b == 0 ? 1 : 0;
    std::size_t far = worst;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == b)
        continue;
      if (vals[i] > vals[worst])
        worst = i;
      if (detail::distance(pts[i], pts[b]) > detail::distance(pts[far], pts[b]))
        far = i;
    }

    if (ft < vals[b]) {
      pts[worst] = std::move(trial);
      vals[worst] = ft;
      continue;
    }
    const double far_dist = detail::distance(pts[far], pts[b]);
    if (far_dist > 2.1 * rho) {
      // Pull the most distant vertex back inside the trust region.
      auto p = pts[b];
      for (std::size_t j = 0; j < n; ++j)
        p[j] += rho * (pts[far][j] - pts[b][j]) / far_dist;
      const double v = eval(p);
      pts[far] = std::move(p);
      vals[far] = v;
      continue;
    }
    if (ft < vals[worst]) {
      pts[worst] = std::move(trial);
      vals[worst] = ft;
    }
    rho *= spec.shrink_factor;
    if (rho < spec.tolerance)
      break;
  }
  return r;
}

} // namespace detail

/// Minimizes `f` from `x0`. The trace holds one point per iteration (per
/// update step for SPSA, per evaluation for the trust region).
inline OptimizationResult minimize(const Objective &f, std::vector<double> x0,
                                   const OptimizerSpec &spec) {
  if (spec.max_iterations < 1)
    throw Error("optimizer needs max_iterations >= 1");
  if (spec.kind == OptimizerKind::spsa)
    return detail::spsa_minimize(f, std::move(x0), spec);
  return detail::trust_region_minimize(f, std::move(x0), spec);
}

} // namespace qverify
