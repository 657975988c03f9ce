/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/cnf.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qverify {

namespace detail {

/// Minimal-ish CNF over `vars` (local bit b is variable vars[b]) whose models
/// are exactly the points where `pred` holds. Prime implicants of the
/// falsifying set are computed by Quine-McCluskey and covered greedily, so no
/// auxiliary variables are introduced.
inline std::vector<Clause>
cnf_from_predicate(const std::vector<std::uint32_t> &vars,
                   const std::function<bool(std::uint32_t)> &pred) {
  const auto nv = static_cast<std::uint32_t>(vars.size());
  if (nv == 0 || nv > 16)
    throw Error("truth-table encoding supports 1..16 variables");
  const std::uint32_t full = (std::uint32_t{1} << nv) - 1;

  std::vector<std::uint32_t> falsifying;
  for (std::uint32_t m = 0; m <= full; ++m)
    if (!pred(m))
      falsifying.push_back(m);
  if (falsifying.empty())
    return {};

  // Cube = (care mask, values on the care bits).
  using Cube = std::pair<std::uint32_t, std::uint32_t>;
  std::set<Cube> current;
  for (auto m : falsifying)
    current.insert({full, m});
  std::set<Cube> primes;
  while (!current.empty()) {
    std::set<Cube> next;
    std::set<Cube> merged;
    for (const auto &[mask, val] : current) {
      for (std::uint32_t b = 0; b < nv; ++b) {
        const std::uint32_t bit = std::uint32_t{1} << b;
        if (!(mask & bit) || (val & bit))
          continue;
        const Cube partner{mask, val | bit};
        if (current.count(partner)) {
          next.insert({mask & ~bit, val});
          merged.insert({mask, val});
          merged.insert(partner);
        }
      }
    }
    for (const auto &c : current)
      if (!merged.count(c))
        primes.insert(c);
    current = std::move(next);
  }

  // Each clause costs its penalty term plus one gadget per literal beyond
  // two, so the cover is chosen greedily by points covered per unit cost.
  auto cost = [](const Cube &c) {
    const int w = std::popcount(c.first);
    return static_cast<double>(w > 2 ? w - 1 : 1);
  };
  auto covers = [](const Cube &c, std::uint32_t m) {
    return (m & c.first) == c.second;
  };
  std::set<std::uint32_t> uncovered(falsifying.begin(), falsifying.end());
  std::vector<Cube> chosen;
  while (!uncovered.empty()) {
    const Cube *best = nullptr;
    double best_ratio = 0.0;
    for (const auto &p : primes) {
      std::size_t cover = 0;
      for (auto m : uncovered)
        if (covers(p, m))
          ++cover;
      const double ratio = static_cast<double>(cover) / cost(p);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = &p;
      }
    }
    chosen.push_back(*best);
    for (auto it = uncovered.begin(); it != uncovered.end();)
      it = covers(*best, *it) ? uncovered.erase(it) : std::next(it);
  }

  // Drop clauses made redundant by later picks, most expensive first.
  std::vector<std::size_t> order(chosen.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cost(chosen[a]) > cost(chosen[b]);
  });
  std::vector<bool> keep(chosen.size(), true);
  for (const auto i : order) {
    keep[i] = false;
    const bool redundant = std::all_of(
        falsifying.begin(), falsifying.end(), [&](std::uint32_t m) {
          for (std::size_t j = 0; j < chosen.size(); ++j)
            if (keep[j] && covers(chosen[j], m))
              return true;
          return false;
        });
    if (!redundant)
      keep[i] = true;
  }
  std::vector<Cube> kept;
  for (std::size_t i = 0; i < chosen.size(); ++i)
    if (keep[i])
      kept.push_back(chosen[i]);
  chosen = std::move(kept);

  std::vector<Clause> clauses;
  for (const auto &[mask, val] : chosen) {
    Clause c;
    for (std::uint32_t b = 0; b < nv; ++b)
      if (mask & (std::uint32_t{1} << b))
        c.literals.push_back({vars[b], ((val >> b) & 1U) != 0});
    clauses.push_back(std::move(c));
  }
  return clauses;
}

inline std::vector<std::uint32_t> var_range(std::uint32_t first,
                                            std::uint32_t count) {
  std::vector<std::uint32_t> v(count);
  for (std::uint32_t i = 0; i < count; ++i)
    v[i] = first + i;
  return v;
}

inline std::uint32_t field(std::uint32_t m, std::uint32_t offset,
                           std::uint32_t width) {
  return (m >> offset) & ((std::uint32_t{1} << width) - 1);
}

/// Clauses forcing t = a xor b.
inline void append_xor_definition(std::vector<Clause> &out, std::uint32_t t,
                                  std::uint32_t a, std::uint32_t b) {
  out.push_back({{neg(t), pos(a), pos(b)}});
  out.push_back({{neg(t), neg(a), neg(b)}});
  out.push_back({{pos(t), neg(a), pos(b)}});
  out.push_back({{pos(t), pos(a), neg(b)}});
}

inline CnfFormula value_set_instance(std::uint32_t bits,
                                     const std::vector<std::uint64_t> &values,
                                     const std::string &name) {
  std::vector<Clause> clauses;
  if (values.size() == 1) {
    for (std::uint32_t j = 0; j < bits; ++j)
      clauses.push_back({{{j + 1, ((values[0] >> j) & 1U) == 0}}});
    return {bits, std::move(clauses), "synthetic:" + name};
  }
  // One selector per allowed value; selector s_v forces the bits to v.
  const auto m = static_cast<std::uint32_t>(values.size());
  Clause any;
  for (std::uint32_t s = 0; s < m; ++s)
    any.literals.push_back(pos(bits + 1 + s));
  clauses.push_back(std::move(any));
  for (std::uint32_t s = 0; s < m; ++s)
    for (std::uint32_t j = 0; j < bits; ++j)
      clauses.push_back(
          {{neg(bits + 1 + s), {j + 1, ((values[s] >> j) & 1U) == 0}}});
  return {bits + m, std::move(clauses), "synthetic:" + name};
}

} // namespace detail

/// Names accepted by generate_synthetic, in table order.
inline const std::vector<std::string> &synthetic_names() {
  static const std::vector<std::string> names = {
      "addition",  "program-flow",  "indicator",     "or",
      "xor",       "unique",        "semi-unique",   "two-solutions",
      "two-solutions-overlap",      "three-solutions"};
  return names;
}

/// Instance name plus its single optional size parameter (n for or/xor, bit
/// width for the arithmetic rows).
struct SyntheticSpec {
  std::string name;
  std::optional<std::uint32_t> param;

  /// Parses "name" or "name:param".
  static SyntheticSpec parse(const std::string &text) {
    SyntheticSpec s;
    const auto colon = text.find(':');
    s.name = text.substr(0, colon);
    if (colon != std::string::npos) {
      const std::string p = text.substr(colon + 1);
      std::size_t used = 0;
      long long v = -1;
      try {
        v = std::stoll(p, &used);
      } catch (const std::exception &) {
        throw Error("invalid synthetic parameter '" + p + "'");
      }
      if (used != p.size() || v < 0 || v > 1'000'000)
        throw Error("invalid synthetic parameter '" + p + "'");
      s.param = static_cast<std::uint32_t>(v);
    }
    return s;
  }

  std::string to_string() const {
    return param ? name + ":" + std::to_string(*param) : name;
  }
};

/// Number of leading CNF variables that carry the instance's value bits; the
/// rest (if any) are encoding auxiliaries.
inline std::uint32_t synthetic_value_bits(const SyntheticSpec &spec) {
  const auto &n = spec.name;
  if (n == "or" || n == "xor")
    return spec.param.value_or(n == "or" ? 3 : 2);
  if (n == "addition" || n == "indicator")
    return 4 * spec.param.value_or(1);
  if (n == "program-flow")
    return 6 * spec.param.value_or(1);
  if (n == "unique")
    return 6;
  if (n == "semi-unique" || n == "two-solutions-overlap" ||
      n == "three-solutions")
    return 8;
  if (n == "two-solutions")
    return 14;
  throw Error("unknown synthetic instance '" + n + "'");
}

inline CnfFormula generate_synthetic(const SyntheticSpec &spec) {
  using detail::field;
  const auto &name = spec.name;
  const std::string tag = spec.to_string();

  auto fixed = [&](const char *what) {
    if (spec.param)
      throw Error("synthetic instance '" + name + "' takes no parameter (" +
                  what + ")");
  };
  auto width = [&]() {
    const std::uint32_t w = spec.param.value_or(1);
    if (w < 1 || w > 4)
      throw Error("bit width for '" + name + "' must be in 1..4");
    return w;
  };

  if (name == "or") {
    const std::uint32_t n = spec.param.value_or(3);
    if (n < 1 || n > 64)
      throw Error("or(n) requires 1 <= n <= 64");
    std::vector<Clause> clauses;
    for (std::uint32_t j = 1; j <= n; ++j)
      clauses.push_back({{pos(j)}});
    return {n, std::move(clauses), "synthetic:" + tag};
  }

  if (name == "xor") {
    const std::uint32_t n = spec.param.value_or(2);
    if (n < 1 || n > 64)
      throw Error("xor(n) requires 1 <= n <= 64");
    std::vector<Clause> clauses;
    if (n <= 4) {
      // Exclude every even-parity point directly.
      for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
        if (std::popcount(m) % 2 != 0)
          continue;
        Clause c;
        for (std::uint32_t j = 0; j < n; ++j)
          c.literals.push_back({j + 1, ((m >> j) & 1U) != 0});
        clauses.push_back(std::move(c));
      }
      return {n, std::move(clauses), "synthetic:" + tag};
    }
    // Chain: t1 = x1^x2, t_k = t_{k-1}^x_{k+1}, and t_{n-2}^x_n = 1.
    std::uint32_t prev = 1;
    for (std::uint32_t k = 1; k <= n - 2; ++k) {
      const std::uint32_t t = n + k;
      detail::append_xor_definition(clauses, t, prev, k + 1);
      prev = t;
    }
    clauses.push_back({{pos(prev), pos(n)}});
    clauses.push_back({{neg(prev), neg(n)}});
    return {2 * n - 2, std::move(clauses), "synthetic:" + tag};
  }

  if (name == "unique") {
    fixed("fixed at 6 bits");
    return detail::value_set_instance(6, {42}, tag);
  }
  if (name == "semi-unique") {
    fixed("fixed at 8 bits");
    return detail::value_set_instance(8, {42, 69}, tag);
  }
  if (name == "two-solutions") {
    fixed("fixed at 14 bits");
    return detail::value_set_instance(14, {15, 240}, tag);
  }
  if (name == "two-solutions-overlap") {
    fixed("fixed at 8 bits");
    return detail::value_set_instance(8, {85, 204}, tag);
  }
  if (name == "three-solutions") {
    fixed("fixed at 8 bits");
    return detail::value_set_instance(8, {42, 101, 205}, tag);
  }

  if (name == "addition") {
    // a + b = 2c + d
    const std::uint32_t w = width();
    auto clauses = detail::cnf_from_predicate(
        detail::var_range(1, 4 * w), [w](std::uint32_t m) {
          return field(m, 0, w) + field(m, w, w) ==
                 2 * field(m, 2 * w, w) + field(m, 3 * w, w);
        });
    return {4 * w, std::move(clauses), "synthetic:" + tag};
  }
  if (name == "indicator") {
    // 2a + b > 2c + d
    const std::uint32_t w = width();
    auto clauses = detail::cnf_from_predicate(
        detail::var_range(1, 4 * w), [w](std::uint32_t m) {
          return 2 * field(m, 0, w) + field(m, w, w) >
                 2 * field(m, 2 * w, w) + field(m, 3 * w, w);
        });
    return {4 * w, std::move(clauses), "synthetic:" + tag};
  }
  if (name == "program-flow") {
    // (a = b = c) and (d + e + f > 1); the two conjuncts share no variables.
    const std::uint32_t w = width();
    auto clauses = detail::cnf_from_predicate(
        detail::var_range(1, 3 * w), [w](std::uint32_t m) {
          return field(m, 0, w) == field(m, w, w) &&
                 field(m, w, w) == field(m, 2 * w, w);
        });
    auto sum = detail::cnf_from_predicate(
        detail::var_range(3 * w + 1, 3 * w), [w](std::uint32_t m) {
          return field(m, 0, w) + field(m, w, w) + field(m, 2 * w, w) > 1;
        });
    clauses.insert(clauses.end(), sum.begin(), sum.end());
    return {6 * w, std::move(clauses), "synthetic:" + tag};
  }

  throw Error("unknown synthetic instance '" + name + "'");
}

inline CnfFormula generate_synthetic(const std::string &text) {
  return generate_synthetic(SyntheticSpec::parse(text));
}

} // namespace qverify
