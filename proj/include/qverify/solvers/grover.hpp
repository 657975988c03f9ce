/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/cnf.hpp"
#include "qverify/simulator.hpp"
#include "qverify/solvers/report.hpp"

#include <cmath>
#include <numbers>

namespace qverify {

inline constexpr std::size_t kMaxGroverVariables = 20;

struct GroverConfig {
  std::uint64_t shots_per_point = 256;
  RunSeed seed{};
};

/// floor((pi / 4) * sqrt(2^n / s)).
inline std::uint64_t grover_iterations(std::size_t n, std::uint64_t s) {
  if (s == 0)
    throw Error("grover_iterations: assumed solution count must be positive");
  const double ratio = std::ldexp(1.0, static_cast<int>(n)) / static_cast<double>(s);
  return static_cast<std::uint64_t>(std::floor(std::numbers::pi / 4 * std::sqrt(ratio)));
}

/// State after `iterations` Grover steps from the uniform superposition. With
/// `extra_control` the register has one more (top) qubit and only its 0 half
/// is marked, which doubles the search space.
inline Statevector grover_state(const CnfFormula &f, std::uint64_t iterations,
                                bool extra_control = false) {
  const std::size_t n = f.num_variables() + (extra_control ? 1 : 0);
  Statevector s = uniform_superposition(n);
  for (std::uint64_t k = 0; k < iterations; ++k) {
    phase_oracle(s, f, extra_control);
    grover_diffusion(s);
  }
  return s;
}

/// Grover search over the CNF variables with the power-of-two schedule: for
/// s = 1, 2, 4, ... sample after r(s) iterations and keep outcomes seen with
/// frequency at least (2/3)(1/s). The first kept outcome that satisfies the
/// formula becomes the witness. One fallback pass repeats the schedule on a
/// doubled search space.
inline SolverReport solve_grover(const CnfFormula &f, const GroverConfig &cfg) {
  Stopwatch clock;
  const std::size_t n = f.num_variables();
  SolverReport r;
  r.solver = "grover";
  r.seed = cfg.seed;
  r.config = {{"solver", "grover"},
              {"shots", cfg.shots_per_point},
              {"seed", cfg.seed.value}};
  if (n > kMaxGroverVariables)
    throw BudgetError("grover supports at most " +
                      std::to_string(kMaxGroverVariables) + " variables, got " +
                      std::to_string(n));
  if (cfg.shots_per_point < 1)
    throw Error("grover needs at least one shot per schedule point");
  if (n == 0) {
    if (!r.offer_witness(f, Assignment{}))
      r.budget = "no variables and an unsatisfiable formula";
    return r;
  }

  nlohmann::json points = nlohmann::json::array();
  std::uint64_t stream = 0;
  std::size_t iteration = 0;
  for (const bool doubled : {false, true}) {
    const std::size_t qubits = n + (doubled ? 1 : 0);
    for (std::size_t k = 0; k < qubits && r.verdict != Verdict::sat; ++k) {
      const std::uint64_t s = std::uint64_t{1} << k;
      const std::uint64_t rounds = grover_iterations(qubits, s);
      const Statevector state = grover_state(f, rounds, doubled);
      const auto hist = sample(state, cfg.shots_per_point, cfg.seed.split(stream++));
      r.shots_used += cfg.shots_per_point;
      const double threshold = (2.0 / 3.0) / static_cast<double>(s) *
                               static_cast<double>(cfg.shots_per_point);
      std::uint64_t kept = 0, top = 0;
      for (const auto &[index, count] : hist) {
        top = std::max(top, count);
        if (static_cast<double>(count) < threshold)
          continue;
        ++kept;
        const auto x = assignment_from_mask(index & ((std::uint64_t{1} << n) - 1), n);
        r.offer_witness(f, x);
      }
      const double best_freq =
          static_cast<double>(top) / static_cast<double>(cfg.shots_per_point);
      r.trace.push_back({++iteration, 1.0 - best_freq});
      points.push_back({{"doubled", doubled},
                        {"assumed_solutions", s},
                        {"iterations", rounds},
                        {"kept_candidates", kept},
                        {"top_frequency", best_freq}});
    }
    if (r.verdict == Verdict::sat)
      break;
  }
  r.details = {{"schedule", points}};
  r.best_value = r.verdict == Verdict::sat ? 0.0 : 1.0;
  if (r.verdict != Verdict::sat)
    r.budget = "power-of-two schedule and doubled-space pass exhausted";
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

} // namespace qverify
