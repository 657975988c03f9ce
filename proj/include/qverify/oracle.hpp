/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

// Exhaustive classical reference: plain enumeration over bit masks, used as
// ground truth for every solver.

#include "qverify/cnf.hpp"
#include "qverify/qubo.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace qverify {

inline constexpr std::size_t kDefaultOracleBudget = 24;

/// Satisfying assignments as masks (bit v-1 = variable v), ascending.
inline std::vector<std::uint64_t>
enumerate_sat(const CnfFormula &f, std::size_t budget = kDefaultOracleBudget) {
  const std::size_t n = f.num_variables();
  if (n > budget || n > 62)
    throw BudgetError("enumerate_sat: " + std::to_string(n) +
                      " variables exceed the exhaustive budget of " +
                      std::to_string(budget));
  // Per clause: masks of positive and negative literals.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;
  for (const auto &c : f.clauses()) {
    std::uint64_t p = 0, q = 0;
    for (const auto &l : c.literals)
      (l.negated ? q : p) |= std::uint64_t{1} << (l.variable - 1);
    masks.emplace_back(p, q);
  }
  std::vector<std::uint64_t> out;
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < dim; ++x) {
    bool ok = true;
    for (const auto &[p, q] : masks)
      if (((x & p) | (~x & q)) == 0) {
        ok = false;
        break;
      }
    if (ok)
      out.push_back(x);
  }
  return out;
}

struct SpectrumSummary {
  std::int64_t min_value = 0;
  std::uint64_t min_count = 0;
  std::int64_t max_value = 0;
  /// Zero-level set projected onto the Original variables, as CNF masks
  /// (bit v-1 = variable v), ascending and de-duplicated.
  std::vector<std::uint64_t> satisfying_set;
  std::map<std::int64_t, std::uint64_t> value_histogram;

  /// Smallest strictly positive objective value, if any.
  std::optional<std::int64_t> min_nonzero() const {
    auto it = value_histogram.upper_bound(0);
    if (it == value_histogram.end())
      return std::nullopt;
    return it->first;
  }
};

namespace detail {

/// Maps a QUBO assignment mask onto a CNF mask through the variable map.
struct Projector {
  std::vector<std::pair<std::size_t, std::uint32_t>> originals; // qubo idx, cnf var

  explicit Projector(const Qubo &q) {
    for (std::size_t i = 0; i < q.size(); ++i)
      if (const auto *o = std::get_if<OriginalVar>(&q.variable_map()[i]))
        originals.emplace_back(i, o->cnf_variable);
  }
  std::uint64_t operator()(std::uint64_t x) const {
    std::uint64_t m = 0;
    for (const auto &[i, v] : originals)
      if ((x >> i) & 1U)
        m |= std::uint64_t{1} << (v - 1);
    return m;
  }
};

} // namespace detail

/// Full objective spectrum by evaluating x^T Q x + c on every assignment.
inline SpectrumSummary qubo_spectrum(const Qubo &q,
                                     std::size_t budget = kDefaultOracleBudget) {
  const std::size_t n = q.size();
  if (n > budget || n > 30)
    throw BudgetError("qubo_spectrum: " + std::to_string(n) +
                      " variables exceed the exhaustive budget of " +
                      std::to_string(budget));
  detail::Projector project(q);
  SpectrumSummary s;
  std::set<std::uint64_t> zero_set;
  for_each_objective(q, [&](std::uint64_t x, std::int64_t v) {
    ++s.value_histogram[v];
    if (v == 0)
      zero_set.insert(project(x));
  });
  s.min_value = s.value_histogram.begin()->first;
  s.min_count = s.value_histogram.begin()->second;
  s.max_value = s.value_histogram.rbegin()->first;
  s.satisfying_set.assign(zero_set.begin(), zero_set.end());
  return s;
}

/// For every assignment of the Original variables (CNF mask, bit v-1 =
/// variable v), the exact minimum of the objective over all auxiliaries.
///
/// Auxiliaries are split into connected components of the coupling graph
/// restricted to auxiliaries. Components do not interact, so each one is
/// minimized independently by enumeration given the original bits. This keeps
/// the minimum exact for QUBOs whose auxiliaries alone would be far beyond an
/// exhaustive sweep.
inline std::vector<std::int64_t>
minimum_over_auxiliaries(const Qubo &q, std::uint32_t num_cnf_vars,
                         std::size_t budget = kDefaultOracleBudget,
                         std::size_t component_budget = 20) {
  const std::size_t n = q.size();
  std::vector<std::size_t> orig, aux;
  std::vector<std::uint32_t> orig_var;
  for (std::size_t i = 0; i < n; ++i) {
    if (const auto *o = std::get_if<OriginalVar>(&q.variable_map()[i])) {
      orig.push_back(i);
      orig_var.push_back(o->cnf_variable);
    } else {
      aux.push_back(i);
    }
  }
  if (num_cnf_vars > budget || orig.size() > budget)
    throw BudgetError("minimum_over_auxiliaries: original variables exceed "
                      "the exhaustive budget");

  // Union-find over auxiliaries.
  std::vector<std::size_t> parent(aux.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a)
      a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < aux.size(); ++a)
    for (std::size_t b = a + 1; b < aux.size(); ++b)
      if (q.coupling(aux[a], aux[b]) != 0)
        parent[find(a)] = find(b);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t a = 0; a < aux.size(); ++a)
    groups[find(a)].push_back(aux[a]);
  for (const auto &[root, members] : groups)
    if (members.size() > component_budget)
      throw BudgetError("minimum_over_auxiliaries: auxiliary component too "
                        "large for enumeration");

  const std::uint64_t dim = std::uint64_t{1} << num_cnf_vars;
  std::vector<std::int64_t> out(dim);
  std::vector<std::uint8_t> x(n, 0);
  for (std::uint64_t m = 0; m < dim; ++m) {
    for (std::size_t k = 0; k < orig.size(); ++k)
      x[orig[k]] = static_cast<std::uint8_t>((m >> (orig_var[k] - 1)) & 1U);
    // Objective with all auxiliaries at 0.
    std::int64_t base = q.offset();
    for (std::size_t a = 0; a < orig.size(); ++a) {
      if (!x[orig[a]])
        continue;
      for (std::size_t b = a; b < orig.size(); ++b)
        if (x[orig[b]])
          base += q.coupling(orig[a], orig[b]);
    }
    for (const auto &[root, members] : groups) {
      const std::size_t k = members.size();
      std::vector<std::int64_t> lin(k);
      for (std::size_t t = 0; t < k; ++t) {
        std::int64_t v = q.entry(members[t], members[t]);
        for (auto i : orig)
          if (x[i])
            v += q.coupling(members[t], i);
        lin[t] = v;
      }
      std::int64_t best = 0; // all-zero setting
      for (std::uint64_t a = 1; a < (std::uint64_t{1} << k); ++a) {
        std::int64_t d = 0;
        for (std::size_t t = 0; t < k; ++t) {
          if (!((a >> t) & 1U))
            continue;
          d += lin[t];
          for (std::size_t u = t + 1; u < k; ++u)
            if ((a >> u) & 1U)
              d += q.coupling(members[t], members[u]);
        }
        best = std::min(best, d);
      }
      base += best;
    }
    out[m] = base;
  }
  return out;
}

} // namespace qverify
