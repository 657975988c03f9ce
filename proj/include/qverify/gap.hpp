/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/oracle.hpp"
#include "qverify/qubo.hpp"
#include "qverify/rational.hpp"

#include <algorithm>
#include <optional>

namespace qverify {

/// Normalization bound and spectral gap of a reduced instance.
struct GapInfo {
  /// Upper bound on the objective: one per clause penalty, three per gadget.
  std::int64_t bound_M = 1;
  Rational estimated_gap{1};
  /// Smallest nonzero objective over the largest one (best possible gap).
  std::optional<Rational> exact_gap;
  /// Largest objective value, known when the exact gap was computed.
  std::optional<std::int64_t> exact_max;

  /// Scale that maps the objective into [0, 1] for the chosen gap.
  std::int64_t scale(bool use_exact) const {
    return use_exact && exact_max ? *exact_max : bound_M;
  }
  Rational gap(bool use_exact) const {
    return use_exact && exact_gap ? *exact_gap : estimated_gap;
  }
};

inline constexpr std::int64_t kClausePenaltyMax = 1;
inline constexpr std::int64_t kGadgetPenaltyMax = 3;

inline GapInfo compute_gap(const Qubo &q, bool exact,
                           std::size_t budget = kDefaultOracleBudget) {
  GapInfo g;
  const std::int64_t m =
      detail::checked_add(
          detail::checked_mul(static_cast<std::int64_t>(q.clause_terms()),
                              kClausePenaltyMax),
          detail::checked_mul(static_cast<std::int64_t>(q.gadget_terms()),
                              kGadgetPenaltyMax));
  g.bound_M = std::max<std::int64_t>(1, m);
  g.estimated_gap = Rational(1, g.bound_M);
  if (!exact)
    return g;
  if (q.size() > budget)
    throw BudgetError("exact gap requested for " + std::to_string(q.size()) +
                      " variables, budget is " + std::to_string(budget));
  const auto s = qubo_spectrum(q, budget);
  const auto nz = s.min_nonzero();
  g.exact_max = std::max<std::int64_t>(1, s.max_value);
  g.exact_gap = nz ? Rational(*nz, *g.exact_max) : Rational(1);
  return g;
}

} // namespace qverify
