/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/qubo.hpp"
#include "qverify/rational.hpp"

#include <cstdint>
#include <vector>

namespace qverify {

/// E(z) = sum_i h_i z_i + sum_{i<j} J_ij z_i z_j + offset over spins z_i = +-1.
/// Spin z_i = +1 corresponds to x_i = 0 and z_i = -1 to x_i = 1, so a QUBO
/// basis index doubles as a spin configuration index.
class IsingModel {
public:
  IsingModel() = default;
  explicit IsingModel(std::size_t n) : n_(n), h_(n), j_(n * n) {}

  std::size_t size() const { return n_; }
  const Rational &field(std::size_t i) const { return h_[i]; }
  /// Coupling for i < j.
  const Rational &coupling(std::size_t i, std::size_t j) const {
    return j_[i * n_ + j];
  }
  const Rational &offset() const { return offset_; }

  void set_field(std::size_t i, Rational v) { h_[i] = v; }
  void set_coupling(std::size_t i, std::size_t j, Rational v) {
    if (i >= j)
      throw Error("IsingModel couplings are stored for i < j only");
    j_[i * n_ + j] = v;
  }
  void set_offset(Rational v) { offset_ = v; }

  /// Exact energy of the configuration whose bit i set means z_i = -1.
  Rational energy(std::uint64_t mask) const {
    Rational e = offset_;
    for (std::size_t i = 0; i < n_; ++i) {
      const std::int64_t zi = ((mask >> i) & 1U) ? -1 : 1;
      e += h_[i] * zi;
      for (std::size_t j = i + 1; j < n_; ++j) {
        const std::int64_t zj = ((mask >> j) & 1U) ? -1 : 1;
        e += j_[i * n_ + j] * (zi * zj);
      }
    }
    return e;
  }

  bool is_zero() const {
    for (const auto &v : h_)
      if (v != 0)
        return false;
    for (const auto &v : j_)
      if (v != 0)
        return false;
    return offset_ == 0;
  }

private:
  std::size_t n_ = 0;
  std::vector<Rational> h_;
  std::vector<Rational> j_;
  Rational offset_;
};

/// Substitutes x_i = (1 - z_i)/2 into x^T Q x + c.
inline IsingModel qubo_to_ising(const Qubo &q) {
  const std::size_t n = q.size();
  IsingModel m(n);
  Rational offset = q.offset();
  std::vector<Rational> h(n);
  for (std::size_t i = 0; i < n; ++i) {
    // q_ii x_i = q_ii/2 - (q_ii/2) z_i
    const Rational lin(q.entry(i, i), 2);
    offset += lin;
    h[i] -= lin;
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::int64_t c = q.entry(i, j);
      if (c == 0)
        continue;
      // q_ij x_i x_j = q_ij/4 (1 - z_i - z_j + z_i z_j)
      const Rational quarter(c, 4);
      offset += quarter;
      h[i] -= quarter;
      h[j] -= quarter;
      m.set_coupling(i, j, quarter);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    m.set_field(i, h[i]);
  m.set_offset(offset);
  return m;
}

/// Energies of all 2^n configurations as doubles, indexed like QUBO basis
/// states. Exact for QUBO-derived models (values are multiples of 1/4).
inline std::vector<double> ising_diagonal(const IsingModel &m) {
  const std::size_t n = m.size();
  if (n > 30)
    throw BudgetError("ising_diagonal beyond 30 spins");
  std::vector<double> h(n), jc(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    h[i] = m.field(i).to_double();
    for (std::size_t j = i + 1; j < n; ++j)
      jc[i * n + j] = m.coupling(i, j).to_double();
  }
  const double offset = m.offset().to_double();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> out(dim);
  std::vector<double> z(n);
  for (std::size_t x = 0; x < dim; ++x) {
    double e = offset;
    for (std::size_t i = 0; i < n; ++i)
      z[i] = ((x >> i) & 1U) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      e += h[i] * z[i];
      for (std::size_t j = i + 1; j < n; ++j)
        e += jc[i * n + j] * z[i] * z[j];
    }
    out[x] = e;
  }
  return out;
}

} // namespace qverify
