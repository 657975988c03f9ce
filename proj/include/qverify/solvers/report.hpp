/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/cnf.hpp"
#include "qverify/optimizers.hpp"
#include "qverify/random.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace qverify {

enum class Verdict { sat, no_solution_found };

inline std::string to_string(Verdict v) {
  return v == Verdict::sat ? "sat" : "no-solution-found";
}

struct SolverReport {
  std::string solver;
  Verdict verdict = Verdict::no_solution_found;
  /// Present iff verdict is sat; always checked against the CNF first.
  std::optional<Assignment> witness;
  /// What was exhausted when no solution was found.
  std::string budget;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<TracePoint> trace;
  /// Trace mapped to [0, 1] between start and the oracle optimum; empty when
  /// no optimum is known.
  std::vector<double> normalized_trace;
  std::uint64_t shots_used = 0;
  double wall_time_ms = 0.0;
  nlohmann::json config = nlohmann::json::object();
  RunSeed seed{};
  /// Post-selection success probability (eigenvalue filter only).
  std::optional<double> rate;
  nlohmann::json details = nlohmann::json::object();

  /// Records the candidate as witness if it satisfies the formula. Returns
  /// whether it was accepted; a wrong candidate never reaches the report.
  bool offer_witness(const CnfFormula &f, const Assignment &candidate) {
    if (verdict == Verdict::sat || !f.satisfied_by(candidate))
      return false;
    verdict = Verdict::sat;
    witness = candidate;
    budget.clear();
    return true;
  }
};

/// Wall-clock helper for SolverReport::wall_time_ms.
class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

/// (value - optimum) / (start - optimum), clamped to [0, 1].
inline std::vector<double> normalize_trace(const std::vector<TracePoint> &trace,
                                           double start, double optimum) {
  std::vector<double> out;
  out.reserve(trace.size());
  const double span = start - optimum;
  for (const auto &t : trace) {
    double v = span > 0.0 ? (t.value - optimum) / span : 0.0;
    out.push_back(std::clamp(v, 0.0, 1.0));
  }
  return out;
}

} // namespace qverify
