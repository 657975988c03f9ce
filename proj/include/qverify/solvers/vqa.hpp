/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/optimizers.hpp"
#include "qverify/simulator.hpp"
#include "qverify/solvers/instance.hpp"
#include "qverify/solvers/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace qverify {

inline constexpr std::size_t kMaxVariationalQubits = 20;

struct VqaConfig {
  std::size_t layers = 1;
  OptimizerSpec optimizer{};
  std::uint64_t shots = 1024;
  RunSeed seed{};
};

// --- QAOA -----------------------------------------------------------------
// Parameters are interleaved: params[2k] = gamma_k, params[2k + 1] = beta_k.

inline Statevector qaoa_state(const DiagonalHamiltonian &h,
                              std::span<const double> params) {
  if (params.size() % 2 != 0)
    throw Error("QAOA parameters come in (gamma, beta) pairs");
  Statevector s = uniform_superposition(h.num_qubits);
  for (std::size_t k = 0; k < params.size(); k += 2) {
    apply_diagonal_phase(s, h, params[k]);
    apply_rx_all(s, params[k + 1]);
  }
  return s;
}

inline double qaoa_energy(const DiagonalHamiltonian &h,
                          std::span<const double> params) {
  return expectation(qaoa_state(h, params), h);
}

namespace detail {

inline Amplitude inner(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  Amplitude s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += std::conj(a[i]) * b[i];
  return s;
}

/// (sum_q X_q) psi.
inline std::vector<Amplitude> apply_x_sum(const Statevector &s) {
  std::vector<Amplitude> out(s.dim(), 0.0);
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t q = 0; q < s.num_qubits(); ++q)
      out[i] += s[i ^ (std::size_t{1} << q)];
  return out;
}

} // namespace detail

/// Exact gradient by adjoint differentiation. Each layer gate is
/// exp(-i theta A); its derivative contributes 2 Im <lambda| A |psi> with psi
/// and lambda propagated backwards from the output.
inline std::vector<double> qaoa_gradient(const DiagonalHamiltonian &h,
                                         std::span<const double> params) {
  Statevector psi = qaoa_state(h, params);
  Statevector lambda = psi;
  for (std::size_t i = 0; i < lambda.dim(); ++i)
    lambda[i] *= h.values[i];

  std::vector<double> grad(params.size());
  for (std::size_t k = params.size(); k >= 2; k -= 2) {
    // Mixer exp(-i beta sum X).
    {
      const auto ax = detail::apply_x_sum(psi);
      grad[k - 1] = 2.0 * detail::inner(lambda.amplitudes(), ax).imag();
      apply_rx_all(psi, -params[k - 1]);
      apply_rx_all(lambda, -params[k - 1]);
    }
    // Cost exp(-i gamma H).
    {
      std::vector<Amplitude> ah(psi.dim());
      for (std::size_t i = 0; i < psi.dim(); ++i)
        ah[i] = h.values[i] * psi[i];
      grad[k - 2] = 2.0 * detail::inner(lambda.amplitudes(), ah).imag();
      apply_diagonal_phase(psi, h, -params[k - 2]);
      apply_diagonal_phase(lambda, h, -params[k - 2]);
    }
  }
  return grad;
}

// --- VQE ------------------------------------------------------------------

inline Statevector vqe_state(const DiagonalHamiltonian &h, std::size_t layers,
                             std::span<const double> params) {
  Statevector s(h.num_qubits);
  apply_ansatz(s, layers, params);
  return s;
}

inline double vqe_energy(const DiagonalHamiltonian &h, std::size_t layers,
                         std::span<const double> params) {
  return expectation(vqe_state(h, layers, params), h);
}

/// Parameter-shift gradient; exact because every parameter drives a single
/// RY whose generator has eigenvalues +-1/2.
inline std::vector<double> vqe_gradient(const DiagonalHamiltonian &h,
                                        std::size_t layers,
                                        std::span<const double> params) {
  std::vector<double> p(params.begin(), params.end());
  std::vector<double> grad(p.size());
  constexpr double shift = std::numbers::pi / 2;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double keep = p[j];
    p[j] = keep + shift;
    const double plus = vqe_energy(h, layers, p);
    p[j] = keep - shift;
    const double minus = vqe_energy(h, layers, p);
    p[j] = keep;
    grad[j] = 0.5 * (plus - minus);
  }
  return grad;
}

namespace detail {

/// Report for an instance with no QUBO variables: the empty assignment is
/// checked directly.
inline SolverReport trivial_report(const ReducedInstance &inst,
                                   const std::string &name) {
  SolverReport r;
  r.solver = name;
  r.best_value = static_cast<double>(inst.qubo.offset());
  if (!r.offer_witness(inst.formula, Assignment(inst.formula.num_variables(), 0)))
    r.budget = "no variables; objective " + std::to_string(inst.qubo.offset());
  return r;
}

/// Shared driver: optimize the exact expectation, then sample the final
/// state and accept the first zero-objective outcome that passes the CNF.
template <typename StateFn>
SolverReport run_variational(const ReducedInstance &inst, const VqaConfig &cfg,
                             const std::string &name, std::vector<double> x0,
                             StateFn &&state_of) {
  Stopwatch clock;
  const std::size_t n = inst.qubo.size();
  if (n == 0)
    return trivial_report(inst, name);
  if (n > kMaxVariationalQubits)
    throw BudgetError(name + " supports at most " +
                      std::to_string(kMaxVariationalQubits) + " qubits, got " +
                      std::to_string(n));
  const auto h = DiagonalHamiltonian::from_ising(inst.ising);

  SolverReport r;
  r.solver = name;
  r.seed = cfg.seed;
  r.config = {{"solver", name},
              {"layers", cfg.layers},
              {"optimizer",
               {{"kind", to_string(cfg.optimizer.kind)},
                {"max_iterations", cfg.optimizer.max_iterations},
                {"tolerance", cfg.optimizer.tolerance}}},
              {"shots", cfg.shots},
              {"seed", cfg.seed.value}};

  auto energy = [&](std::span<const double> p) {
    return expectation(state_of(h, p), h);
  };
  const double start = energy(x0);
  OptimizerSpec spec = cfg.optimizer;
  spec.seed = cfg.seed.split(1);
  auto opt = minimize(energy, x0, spec);
  if (opt.params.empty()) {
    opt.params = x0;
    opt.value = start;
  }
  r.trace = opt.trace;
  r.best_value = std::min(start, opt.value);
  if (const auto optimum = inst.optimum())
    r.normalized_trace = normalize_trace(opt.trace, start, *optimum);
  r.details = {{"start_value", start},
               {"evaluations", opt.evaluations},
               {"diverged", opt.diverged},
               {"parameters", opt.params},
               {"qubits", n}};

  const Statevector final_state = state_of(h, opt.params);
  const auto hist = sample(final_state, cfg.shots, cfg.seed.split(2));
  r.shots_used = cfg.shots;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranked(hist.begin(),
                                                              hist.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });
  std::vector<std::uint8_t> x(n);
  for (const auto &[index, count] : ranked) {
    if (h.values[index] > 0.5)
      continue;
    for (std::size_t i = 0; i < n; ++i)
      x[i] = static_cast<std::uint8_t>((index >> i) & 1U);
    if (r.offer_witness(inst.formula,
                        inst.qubo.project(x, inst.formula.num_variables()))) {
      r.details["witness_count"] = count;
      break;
    }
  }
  if (r.verdict != Verdict::sat)
    r.budget = opt.diverged ? "optimizer diverged"
                            : std::to_string(cfg.shots) +
                                  " shots without a zero-objective sample";
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

} // namespace detail

/// QAOA with p = cfg.layers alternating cost/mixer layers. Initial angles are
/// drawn uniformly from (0, pi/4).
inline SolverReport solve_qaoa(const ReducedInstance &inst, const VqaConfig &cfg) {
  if (cfg.layers < 1)
    throw Error("QAOA needs at least one layer");
  Rng rng(cfg.seed.split(0));
  std::vector<double> x0(2 * cfg.layers);
  for (auto &v : x0)
    v = rng.uniform(0.0, std::numbers::pi / 4);
  return detail::run_variational(
      inst, cfg, "qaoa", std::move(x0),
      [](const DiagonalHamiltonian &h, std::span<const double> p) {
        return qaoa_state(h, p);
      });
}

/// VQE over the layered RY/CNOT-ring ansatz. Initial angles uniform in
/// (-pi, pi).
inline SolverReport solve_vqe(const ReducedInstance &inst, const VqaConfig &cfg) {
  Rng rng(cfg.seed.split(0));
  std::vector<double> x0(ansatz_parameter_count(inst.qubo.size(), cfg.layers));
  for (auto &v : x0)
    v = rng.uniform(-std::numbers::pi, std::numbers::pi);
  const std::size_t layers = cfg.layers;
  return detail::run_variational(
      inst, cfg, "vqe", std::move(x0),
      [layers](const DiagonalHamiltonian &h, std::span<const double> p) {
        return vqe_state(h, layers, p);
      });
}

} // namespace qverify
