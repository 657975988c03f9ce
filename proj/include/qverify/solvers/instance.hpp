/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/cnf.hpp"
#include "qverify/gap.hpp"
#include "qverify/ising.hpp"
#include "qverify/oracle.hpp"
#include "qverify/qubo.hpp"

#include <optional>

namespace qverify {

/// A formula together with everything the reduction derives from it.
struct ReducedInstance {
  CnfFormula formula;
  Qubo qubo;
  IsingModel ising;
  GapInfo gap;
  /// Exhaustive spectrum, when the QUBO fits the oracle budget.
  std::optional<SpectrumSummary> spectrum;

  static ReducedInstance reduce(CnfFormula f, std::size_t oracle_budget = 20) {
    ReducedInstance r;
    r.qubo = cnf_to_qubo(f);
    r.ising = qubo_to_ising(r.qubo);
    const bool exact = r.qubo.size() <= oracle_budget;
    r.gap = compute_gap(r.qubo, exact, oracle_budget);
    if (exact)
      r.spectrum = qubo_spectrum(r.qubo, oracle_budget);
    r.formula = std::move(f);
    return r;
  }

  std::optional<double> optimum() const {
    if (!spectrum)
      return std::nullopt;
    return static_cast<double>(spectrum->min_value);
  }
};

} // namespace qverify
