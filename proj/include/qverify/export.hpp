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
#include "qverify/oracle.hpp"
#include "qverify/qubo.hpp"
#include "qverify/solvers/report.hpp"

#include "json.hpp"

namespace qverify {

inline nlohmann::json to_json(const VariableOrigin &o) {
  if (const auto *v = std::get_if<OriginalVar>(&o))
    return {{"kind", "original"}, {"cnf_variable", v->cnf_variable}};
  const auto &a = std::get<AuxiliaryVar>(o);
  return {{"kind", "auxiliary"}, {"clause", a.clause}, {"step", a.step}};
}

/// {n, entries: [[i, j, coeff], ...], offset, variable_map}; only nonzero
/// upper-triangular entries are listed.
inline nlohmann::json to_json(const Qubo &q) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i; j < q.size(); ++j)
      if (const auto c = q.entry(i, j); c != 0)
        entries.push_back({i, j, c});
  nlohmann::json vmap = nlohmann::json::array();
  for (const auto &o : q.variable_map())
    vmap.push_back(to_json(o));
  return {{"n", q.size()},
          {"entries", entries},
          {"offset", q.offset()},
          {"variable_map", vmap}};
}

/// Rationals are written as "p/q" strings so the export stays exact.
inline nlohmann::json to_json(const IsingModel &m) {
  nlohmann::json fields = nlohmann::json::array();
  nlohmann::json couplings = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    fields.push_back(m.field(i).to_string());
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m.coupling(i, j) != 0)
        couplings.push_back({i, j, m.coupling(i, j).to_string()});
  }
  return {{"n", m.size()},
          {"fields", fields},
          {"couplings", couplings},
          {"offset", m.offset().to_string()}};
}

inline nlohmann::json to_json(const GapInfo &g) {
  nlohmann::json j{{"M", g.bound_M}, {"estimated", g.estimated_gap.to_string()}};
  if (g.exact_gap)
    j["exact"] = g.exact_gap->to_string();
  return j;
}

inline nlohmann::json to_json(const SpectrumSummary &s) {
  nlohmann::json hist = nlohmann::json::array();
  for (const auto &[v, c] : s.value_histogram)
    hist.push_back({v, c});
  return {{"min_value", s.min_value},
          {"min_count", s.min_count},
          {"max_value", s.max_value},
          {"satisfying_set", s.satisfying_set},
          {"value_histogram", hist}};
}

inline nlohmann::json to_json(const SolverReport &r) {
  nlohmann::json j{{"solver", r.solver},
                   {"verdict", to_string(r.verdict)},
                   {"config", r.config},
                   {"seed", r.seed.value},
                   {"shots_used", r.shots_used},
                   {"details", r.details}};
  if (std::isfinite(r.best_value))
    j["best_value"] = r.best_value;
  if (r.witness)
    j["witness"] = assignment_bits(*r.witness);
  else
    j["budget"] = r.budget;
  if (r.rate)
    j["rate"] = *r.rate;
  return j;
}

} // namespace qverify
