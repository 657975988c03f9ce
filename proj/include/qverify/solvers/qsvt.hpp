/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/block_encoding.hpp"
#include "qverify/filter.hpp"
#include "qverify/simulator.hpp"
#include "qverify/solvers/instance.hpp"
#include "qverify/solvers/report.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace qverify {

inline constexpr std::size_t kMaxFilterQubits = 16;

/// Largest gap handed to the filter; F_{2d,delta} needs delta < 1.
inline constexpr double kMaxFilterGap = 0.99;

struct QsvtConfig {
  /// Half degree d of F_{2d,delta}; 0 picks the smallest admissible one.
  unsigned half_degree = 0;
  std::uint64_t shots = 1024;
  RunSeed seed{};
  /// Scale by the exhaustive maximum and use the best-possible gap when the
  /// spectrum is known; otherwise by bound_M with gap 1/bound_M.
  bool use_exact_gap = true;
  std::optional<double> gap_override;
};

/// Filter output per basis state: F(a_x) with a_x = H(x) / scale.
struct FilteredDiagonal {
  BlockEncoding encoding;
  FilterPolynomial filter;
  std::vector<double> values;
};

inline double filter_gap(const ReducedInstance &inst, const QsvtConfig &cfg) {
  const bool exact = cfg.use_exact_gap && inst.gap.exact_gap.has_value();
  const double g =
      cfg.gap_override ? *cfg.gap_override : inst.gap.gap(exact).to_double();
  if (!(g > 0.0))
    throw Error("filter gap must be positive");
  return std::min(g, kMaxFilterGap);
}

inline FilteredDiagonal filtered_diagonal(const ReducedInstance &inst,
                                          unsigned half_degree, double delta,
                                          bool use_exact) {
  const bool exact = use_exact && inst.gap.exact_gap.has_value();
  FilteredDiagonal out{build_block_encoding(inst.ising, inst.gap, exact),
                       FilterPolynomial(half_degree, delta),
                       {}};
  out.values.reserve(out.encoding.a.size());
  for (const double a : out.encoding.a)
    out.values.push_back(out.filter(a));
  return out;
}

/// |0>_anc (x) uniform, then the block encoding of F(A); the ancilla is the
/// highest qubit.
inline Statevector qsvt_state(std::span<const double> filtered,
                              std::size_t system_qubits) {
  Statevector s(system_qubits + 1);
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(system_qubits));
  for (std::size_t x = 0; x < filtered.size(); ++x)
    s[x] = amp;
  apply_block_encoding(s, filtered);
  return s;
}

/// Exact probability of the ancilla reading 0.
inline double qsvt_rate(std::span<const double> filtered) {
  double acc = 0.0;
  for (const double f : filtered)
    acc += f * f;
  return acc / static_cast<double>(filtered.size());
}

/// Eigenvalue filter: amplifies the zero-energy states by F_{2d,delta}(H/M)
/// and post-selects the ancilla. Every sampled post-selected outcome is
/// projected onto the CNF variables and checked before it may become the
/// witness.
inline SolverReport solve_qsvt(const ReducedInstance &inst, const QsvtConfig &cfg) {
  Stopwatch clock;
  const std::size_t n = inst.qubo.size();
  SolverReport r;
  r.solver = "qsvt";
  r.seed = cfg.seed;
  if (n == 0) {
    r.best_value = static_cast<double>(inst.qubo.offset());
    r.rate = inst.qubo.offset() == 0 ? 1.0 : 0.0;
    if (!r.offer_witness(inst.formula, Assignment(inst.formula.num_variables(), 0)))
      r.budget = "no variables; objective " + std::to_string(inst.qubo.offset());
    return r;
  }
  if (n > kMaxFilterQubits)
    throw BudgetError("qsvt supports at most " + std::to_string(kMaxFilterQubits) +
                      " qubits, got " + std::to_string(n));

  const double delta = filter_gap(inst, cfg);
  const unsigned d = cfg.half_degree ? cfg.half_degree : choose_degree(delta, n);
  const auto fd = filtered_diagonal(inst, d, delta, cfg.use_exact_gap);
  r.config = {{"solver", "qsvt"},
              {"d", d},
              {"shots", cfg.shots},
              {"seed", cfg.seed.value}};

  const double rate = qsvt_rate(fd.values);
  r.rate = rate;
  const Statevector state = qsvt_state(fd.values, n);
  const auto hist = sample(state, cfg.shots, cfg.seed.split(0));
  r.shots_used = cfg.shots;

  const std::uint64_t anc = std::uint64_t{1} << n;
  std::uint64_t selected = 0, selected_bad = 0;
  double solution_mass = 0.0;
  for (std::size_t x = 0; x < fd.values.size(); ++x)
    if (fd.encoding.a[x] == 0.0)
      solution_mass += fd.values[x] * fd.values[x];
  solution_mass /= static_cast<double>(fd.values.size());

  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranked;
  for (const auto &[index, count] : hist) {
    if (index & anc)
      continue;
    selected += count;
    if (fd.encoding.a[index] != 0.0)
      selected_bad += count;
    ranked.emplace_back(index, count);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });
  if (rate > 1e-12) {
    std::vector<std::uint8_t> x(n);
    for (const auto &[index, count] : ranked) {
      for (std::size_t i = 0; i < n; ++i)
        x[i] = static_cast<std::uint8_t>((index >> i) & 1U);
      if (r.offer_witness(inst.formula,
                          inst.qubo.project(x, inst.formula.num_variables())))
        break;
    }
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto &[index, count] : ranked)
    best = std::min(best, fd.encoding.a[index] * fd.encoding.scale);
  r.best_value = best;
  const double sampled_rate =
      static_cast<double>(selected) / static_cast<double>(cfg.shots);
  r.details = {{"half_degree", d},
               {"degree", fd.filter.degree()},
               {"layers", fd.filter.degree() + 1},
               {"delta", delta},
               {"scale", fd.encoding.scale},
               {"leakage_bound", filter_leakage(fd.filter)},
               {"log2_mu", filter_quality_log2_mu(fd.filter)},
               {"rate_exact", rate},
               {"rate_sampled", sampled_rate},
               {"solution_rate", solution_mass},
               {"non_solution_rate", rate - solution_mass},
               {"post_selected_shots", selected},
               {"post_selected_non_solutions", selected_bad}};
  if (r.verdict != Verdict::sat)
    r.budget = rate <= 1e-12 ? "post-selection left no results"
                             : "no verified witness among post-selected samples";
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

} // namespace qverify
