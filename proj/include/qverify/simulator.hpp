/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

// Dense statevector engine. Qubit 0 is the least significant bit of the basis
// index throughout.

#include "qverify/cnf.hpp"
#include "qverify/ising.hpp"
#include "qverify/qubo.hpp"
#include "qverify/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

namespace qverify {

using Amplitude = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr std::size_t kMaxQubits = 24;

class Statevector {
public:
  /// |0...0> on n qubits.
  explicit Statevector(std::size_t n) : n_(check_size(n)), amps_(dim_of(n)) {
    amps_[0] = 1.0;
  }

  static Statevector basis(std::size_t n, std::uint64_t index) {
    Statevector s(n);
    if (index >= s.dim())
      throw Error("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
  }

  static Statevector from_amplitudes(std::size_t n,
                                     std::vector<Amplitude> amps) {
    Statevector s(n);
    if (amps.size() != s.dim())
      throw Error("amplitude vector length is not 2^n");
    s.amps_ = std::move(amps);
    return s;
  }

  std::size_t num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<Amplitude> amplitudes() { return amps_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  Amplitude &operator[](std::size_t i) { return amps_[i]; }
  const Amplitude &operator[](std::size_t i) const { return amps_[i]; }

  double probability(std::uint64_t index) const {
    return std::norm(amps_.at(index));
  }
  double norm_squared() const {
    double s = 0.0;
    for (const auto &a : amps_)
      s += std::norm(a);
    return s;
  }
  std::vector<double> probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i)
      p[i] = std::norm(amps_[i]);
    return p;
  }

private:
  static std::size_t check_size(std::size_t n) {
    if (n > kMaxQubits)
      throw BudgetError("statevector limited to " + std::to_string(kMaxQubits) +
                        " qubits, requested " + std::to_string(n));
    return n;
  }
  static std::size_t dim_of(std::size_t n) { return std::size_t{1} << n; }

  std::size_t n_;
  std::vector<Amplitude> amps_;
};

/// Objective value per basis state.
struct DiagonalHamiltonian {
  std::size_t num_qubits = 0;
  std::vector<double> values;

  static DiagonalHamiltonian from_qubo(const Qubo &q) {
    const auto ints = objective_values(q);
    return {q.size(), std::vector<double>(ints.begin(), ints.end())};
  }
  static DiagonalHamiltonian from_ising(const IsingModel &m) {
    return {m.size(), ising_diagonal(m)};
  }
};

inline Statevector uniform_superposition(std::size_t n) {
  if (n < 1 || n > kMaxQubits)
    throw Error("uniform_superposition needs 1 <= n <= " +
                std::to_string(kMaxQubits));
  Statevector s(n);
  const double a = std::pow(2.0, -0.5 * static_cast<double>(n));
  for (auto &x : s.amplitudes())
    x = a;
  return s;
}

inline double expectation(const Statevector &s, const DiagonalHamiltonian &h) {
  if (h.values.size() != s.dim())
    throw Error("Hamiltonian dimension does not match the state");
  double e = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i)
    e += std::norm(s[i]) * h.values[i];
  return e;
}

/// amplitude[x] *= exp(-i gamma values[x]).
inline void apply_diagonal_phase(Statevector &s, const DiagonalHamiltonian &h,
                                 double gamma) {
  if (h.values.size() != s.dim())
    throw Error("Hamiltonian dimension does not match the state");
  for (std::size_t i = 0; i < s.dim(); ++i)
    s[i] *= std::polar(1.0, -gamma * h.values[i]);
}

namespace detail {

/// Applies the 2x2 matrix [[m00, m01], [m10, m11]] to qubit q.
inline void apply_single(Statevector &s, std::size_t q, Amplitude m00,
                         Amplitude m01, Amplitude m10, Amplitude m11) {
  if (q >= s.num_qubits())
    throw Error("qubit index out of range");
  const std::size_t stride = std::size_t{1} << q;
  auto amps = s.amplitudes();
  for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const Amplitude a0 = amps[k];
      const Amplitude a1 = amps[k + stride];
      amps[k] = m00 * a0 + m01 * a1;
      amps[k + stride] = m10 * a0 + m11 * a1;
    }
  }
}

} // namespace detail

/// exp(-i beta X) on every qubit, i.e. an X-rotation by 2 beta.
inline void apply_rx_all(Statevector &s, double beta) {
  const Amplitude c = std::cos(beta);
  const Amplitude ms{0.0, -std::sin(beta)};
  for (std::size_t q = 0; q < s.num_qubits(); ++q)
    detail::apply_single(s, q, c, ms, ms, c);
}

/// RY(theta) = exp(-i theta Y / 2).
inline void apply_ry(Statevector &s, std::size_t q, double theta) {
  const double c = std::cos(theta / 2), sn = std::sin(theta / 2);
  detail::apply_single(s, q, c, -sn, sn, c);
}

inline void apply_x(Statevector &s, std::size_t q) {
  detail::apply_single(s, q, 0.0, 1.0, 1.0, 0.0);
}

inline void apply_cnot(Statevector &s, std::size_t control, std::size_t target) {
  if (control >= s.num_qubits() || target >= s.num_qubits() || control == target)
    throw Error("invalid CNOT qubits");
  const std::size_t cm = std::size_t{1} << control;
  const std::size_t tm = std::size_t{1} << target;
  auto amps = s.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i)
    if ((i & cm) && !(i & tm))
      std::swap(amps[i], amps[i | tm]);
}

inline std::size_t ansatz_parameter_count(std::size_t n, std::size_t layers) {
  return n * (layers + 1);
}

/// Entangler ring used by the ansatz: CNOT(q, q+1) for q < n-1, closed by
/// CNOT(n-1, 0) when n >= 3.
inline void apply_cnot_ring(Statevector &s) {
  const std::size_t n = s.num_qubits();
  for (std::size_t q = 0; q + 1 < n; ++q)
    apply_cnot(s, q, q + 1);
  if (n >= 3)
    apply_cnot(s, n - 1, 0);
}

inline void apply_cnot_ring_inverse(Statevector &s) {
  const std::size_t n = s.num_qubits();
  if (n >= 3)
    apply_cnot(s, n - 1, 0);
  for (std::size_t q = n - 1; q-- > 0;)
    apply_cnot(s, q, q + 1);
}

/// Real-amplitude layered circuit: per layer an RY on every qubit followed by
/// the CNOT ring, then a final RY layer. params[l*n + q] drives qubit q in
/// rotation layer l.
inline void apply_ansatz(Statevector &s, std::size_t layers,
                         std::span<const double> params) {
  const std::size_t n = s.num_qubits();
  if (params.size() != ansatz_parameter_count(n, layers))
    throw Error("ansatz expects " + std::to_string(ansatz_parameter_count(n, layers)) +
                " parameters, got " + std::to_string(params.size()));
  for (std::size_t l = 0; l <= layers; ++l) {
    for (std::size_t q = 0; q < n; ++q)
      apply_ry(s, q, params[l * n + q]);
    if (l < layers)
      apply_cnot_ring(s);
  }
}

/// Negates the amplitude of every basis state satisfying `f` (variable v on
/// qubit v-1). With `extra_control`, the register carries one more qubit on
/// top and only states with that qubit at 0 are marked.
inline void phase_oracle(Statevector &s, const CnfFormula &f,
                         bool extra_control) {
  const std::size_t nv = f.num_variables();
  if (s.num_qubits() != nv + (extra_control ? 1 : 0))
    throw Error("phase_oracle: register size does not match the formula");
  const std::uint64_t sys_mask = (std::uint64_t{1} << nv) - 1;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;
  for (const auto &c : f.clauses()) {
    std::uint64_t p = 0, q = 0;
    for (const auto &l : c.literals)
      (l.negated ? q : p) |= std::uint64_t{1} << (l.variable - 1);
    masks.emplace_back(p, q);
  }
  auto amps = s.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (extra_control && (i >> nv) != 0)
      continue;
    const std::uint64_t x = i & sys_mask;
    bool sat = true;
    for (const auto &[p, q] : masks)
      if (((x & p) | (~x & q & sys_mask)) == 0) {
        sat = false;
        break;
      }
    if (sat)
      amps[i] = -amps[i];
  }
}

/// Reflection 2|s><s| - I about the uniform state.
inline void grover_diffusion(Statevector &s) {
  auto amps = s.amplitudes();
  const Amplitude mean =
      std::accumulate(amps.begin(), amps.end(), Amplitude{0.0}) /
      static_cast<double>(amps.size());
  for (auto &a : amps)
    a = 2.0 * mean - a;
}

inline bool is_unitary(const ComplexMatrix &m, double tol) {
  if (m.rows() != m.cols())
    return false;
  const ComplexMatrix d =
      m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

/// Dense application of `m` to `qubits` (matrix index bit k is qubits[k]).
inline void apply_matrix(Statevector &s, const ComplexMatrix &m,
                         std::span<const std::size_t> qubits,
                         double unitarity_tol = 1e-8) {
  const std::size_t k = qubits.size();
  const std::size_t sub = std::size_t{1} << k;
  if (k == 0 || static_cast<std::size_t>(m.rows()) != sub ||
      static_cast<std::size_t>(m.cols()) != sub)
    throw Error("apply_matrix: matrix dimension must be 2^|qubits|");
  std::uint64_t touched = 0;
  for (auto q : qubits) {
    if (q >= s.num_qubits() || ((touched >> q) & 1U))
      throw Error("apply_matrix: invalid or repeated qubit");
    touched |= std::uint64_t{1} << q;
  }
  if (!is_unitary(m, unitarity_tol))
    throw Error("apply_matrix: matrix is not unitary");

  std::vector<std::uint64_t> offsets(sub);
  for (std::size_t j = 0; j < sub; ++j) {
    std::uint64_t off = 0;
    for (std::size_t b = 0; b < k; ++b)
      if ((j >> b) & 1U)
        off |= std::uint64_t{1} << qubits[b];
    offsets[j] = off;
  }
  auto amps = s.amplitudes();
  Eigen::VectorXcd in(static_cast<Eigen::Index>(sub));
  for (std::uint64_t base = 0; base < amps.size(); ++base) {
    if (base & touched)
      continue;
    for (std::size_t j = 0; j < sub; ++j)
      in[static_cast<Eigen::Index>(j)] = amps[base | offsets[j]];
    const Eigen::VectorXcd out = m * in;
    for (std::size_t j = 0; j < sub; ++j)
      amps[base | offsets[j]] = out[static_cast<Eigen::Index>(j)];
  }
}

/// Applies [[A, sqrt(I - A^2)], [sqrt(I - A^2), -A]] for a real diagonal A,
/// with the top-left block selected by the highest qubit (the ancilla) at 0.
/// `diag` is indexed by the remaining low qubits.
inline void apply_block_encoding(Statevector &s, std::span<const double> diag) {
  const std::size_t half = s.dim() / 2;
  if (s.num_qubits() < 1 || diag.size() != half)
    throw Error("apply_block_encoding: diagonal must cover the system register");
  auto amps = s.amplitudes();
  for (std::size_t x = 0; x < half; ++x) {
    const double a = diag[x];
    if (!(std::abs(a) <= 1.0 + 1e-12))
      throw Error("apply_block_encoding: entry outside [-1, 1]");
    const double c = std::sqrt(std::max(0.0, 1.0 - a * a));
    const Amplitude top = amps[x];
    const Amplitude bottom = amps[x + half];
    amps[x] = a * top + c * bottom;
    amps[x + half] = c * top - a * bottom;
  }
}

/// Multinomial draw of `shots` basis states from |amplitude|^2.
inline std::map<std::uint64_t, std::uint64_t>
sample(const Statevector &s, std::uint64_t shots, RunSeed seed) {
  if (shots < 1)
    throw Error("sample needs at least one shot");
  std::vector<double> cdf(s.dim());
  double acc = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    acc += std::norm(s[i]);
    cdf[i] = acc;
  }
  Rng rng(seed);
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::uint64_t k = 0; k < shots; ++k) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end())
      --it;
    // upper_bound never lands on a zero-probability state.
    ++hist[static_cast<std::uint64_t>(it - cdf.begin())];
  }
  return hist;
}

struct PostSelection {
  /// Renormalized state of the unmeasured qubits (in ascending qubit order);
  /// empty when the condition has zero probability.
  std::optional<Statevector> state;
  double probability = 0.0;
};

inline PostSelection post_select(const Statevector &s,
                                 std::span<const std::size_t> qubits,
                                 std::span<const std::uint8_t> values,
                                 double zero_tolerance = 0.0) {
  if (qubits.size() != values.size() || qubits.size() > s.num_qubits())
    throw Error("post_select: qubits and values must pair up");
  std::uint64_t mask = 0, want = 0;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if (qubits[k] >= s.num_qubits() || ((mask >> qubits[k]) & 1U))
      throw Error("post_select: invalid or repeated qubit");
    mask |= std::uint64_t{1} << qubits[k];
    if (values[k])
      want |= std::uint64_t{1} << qubits[k];
  }
  std::vector<std::size_t> rest;
  for (std::size_t q = 0; q < s.num_qubits(); ++q)
    if (!((mask >> q) & 1U))
      rest.push_back(q);

  PostSelection out;
  std::vector<Amplitude> kept(std::size_t{1} << rest.size());
  for (std::uint64_t i = 0; i < s.dim(); ++i) {
    if ((i & mask) != want)
      continue;
    std::uint64_t j = 0;
    for (std::size_t b = 0; b < rest.size(); ++b)
      if ((i >> rest[b]) & 1U)
        j |= std::uint64_t{1} << b;
    kept[j] = s[i];
    out.probability += std::norm(s[i]);
  }
  if (out.probability <= zero_tolerance || out.probability == 0.0)
    return out;
  const double scale = 1.0 / std::sqrt(out.probability);
  for (auto &a : kept)
    a *= scale;
  out.state = Statevector::from_amplitudes(rest.size(), std::move(kept));
  return out;
}

} // namespace qverify
