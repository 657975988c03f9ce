/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/gap.hpp"
#include "qverify/ising.hpp"
#include "qverify/simulator.hpp"

#include <bit>
#include <cmath>
#include <span>
#include <vector>

namespace qverify {

/// Unitary dilation of a real diagonal A with entries in [0, 1]:
///   U' = [[A, sqrt(I - A^2)], [sqrt(I - A^2), -A]],
/// padded with identity up to a power-of-two dimension.
struct BlockEncoding {
  /// Diagonal of A = H / scale.
  std::vector<double> a;
  double scale = 1.0;

  std::size_t padded_dimension() const {
    return std::bit_ceil(std::max<std::size_t>(2, 2 * a.size()));
  }

  /// Dense U. Only meant for small registers.
  ComplexMatrix dense() const {
    const std::size_t m = a.size();
    const std::size_t dim = padded_dimension();
    if (dim > (std::size_t{1} << 13))
      throw BudgetError("dense block encoding limited to 2^13 dimensions");
    ComplexMatrix u = ComplexMatrix::Identity(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < m; ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      const auto s = static_cast<Eigen::Index>(i + m);
      const double c = std::sqrt(std::max(0.0, 1.0 - a[i] * a[i]));
      u(r, r) = a[i];
      u(r, s) = c;
      u(s, r) = c;
      u(s, s) = -a[i];
    }
    return u;
  }

  /// Each 2x2 block [[a, c], [c, -a]] is unitary iff a^2 + c^2 = 1.
  double unitarity_defect() const {
    double worst = 0.0;
    for (double v : a) {
      const double c = std::sqrt(std::max(0.0, 1.0 - v * v));
      worst = std::max(worst, std::abs(v * v + c * c - 1.0));
    }
    return worst;
  }
};

inline BlockEncoding build_block_encoding(std::span<const double> hamiltonian,
                                          double scale) {
  if (!(scale > 0.0))
    throw Error("block encoding scale must be positive");
  BlockEncoding be;
  be.scale = scale;
  be.a.reserve(hamiltonian.size());
  for (double h : hamiltonian) {
    const double v = h / scale;
    if (v < -1e-12 || v > 1.0 + 1e-12)
      throw Error("block encoding entry " + std::to_string(v) +
                  " outside [0, 1]: scale bound violated");
    be.a.push_back(std::clamp(v, 0.0, 1.0));
  }
  if (be.unitarity_defect() > 1e-9)
    throw Error("block encoding is not unitary");
  return be;
}

inline BlockEncoding build_block_encoding(const IsingModel &ising,
                                          const GapInfo &gap,
                                          bool use_exact_gap = false) {
  const auto h = ising_diagonal(ising);
  return build_block_encoding(h, static_cast<double>(gap.scale(use_exact_gap)));
}

} // namespace qverify
