/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "qverify/pipeline.hpp"
#include "qverify/solvers/grover.hpp"
#include "qverify/solvers/qsvt.hpp"
#include "qverify/solvers/vqa.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qverify;
using qverify::testing::naive_models;

namespace {

const CnfFormula kSingleClause(2, {{{pos(1), pos(2)}}});
const CnfFormula kContradiction(1, {{{pos(1)}}, {{neg(1)}}});

VqaConfig vqa(std::size_t layers, OptimizerKind k, std::uint64_t seed,
              std::size_t iters = 200) {
  VqaConfig c;
  c.layers = layers;
  c.optimizer.kind = k;
  c.optimizer.max_iterations = iters;
  c.seed = RunSeed{seed};
  return c;
}

void expect_verified(const SolverReport &r, const CnfFormula &f) {
  if (r.verdict == Verdict::sat) {
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(qverify::testing::naive_satisfies(f, mask_from_assignment(*r.witness)));
  } else {
    EXPECT_FALSE(r.witness.has_value());
  }
}

/// Central finite difference of `e` at `p`.
template <typename E>
std::vector<double> finite_difference(E &&e, std::vector<double> p, double h) {
  std::vector<double> g(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double keep = p[j];
    p[j] = keep + h;
    const double plus = e(p);
    p[j] = keep - h;
    const double minus = e(p);
    p[j] = keep;
    g[j] = (plus - minus) / (2 * h);
  }
  return g;
}

DiagonalHamiltonian three_qubit_hamiltonian() {
  const auto inst = ReducedInstance::reduce(CnfFormula(3, {{{pos(1), neg(2)}}, {{pos(2), pos(3)}}, {{neg(1), neg(3)}}}));
  return DiagonalHamiltonian::from_ising(inst.ising);
}

} // namespace

// --- Gradients ------------------------------------------------------------------

TEST(Gradients, VqeParameterShiftMatchesFiniteDifference) {
  const auto h = three_qubit_hamiltonian();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> p(ansatz_parameter_count(3, 2));
    for (auto &x : p) x = u(rng);
    const auto g = vqe_gradient(h, 2, p);
    const auto fd = finite_difference([&](const auto &q) { return vqe_energy(h, 2, q); }, p, 1e-5);
    for (std::size_t j = 0; j < p.size(); ++j)
      EXPECT_NEAR(g[j], fd[j], 1e-4);
  }
}

TEST(Gradients, QaoaAdjointMatchesFiniteDifference) {
  const auto h = three_qubit_hamiltonian();
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> p(6);
    for (auto &x : p) x = u(rng);
    const auto g = qaoa_gradient(h, p);
    const auto fd = finite_difference([&](const auto &q) { return qaoa_energy(h, q); }, p, 1e-5);
    for (std::size_t j = 0; j < p.size(); ++j)
      EXPECT_NEAR(g[j], fd[j], 1e-4);
  }
}

TEST(Qaoa, StateIsNormalizedAndUniformAtZeroAngles) {
  const auto h = three_qubit_hamiltonian();
  const std::vector<double> zero(4, 0.0);
  const auto s = qaoa_state(h, zero);
  for (std::size_t i = 0; i < s.dim(); ++i)
    EXPECT_NEAR(s.probability(i), 1.0 / 8, 1e-14);
  EXPECT_THROW(qaoa_state(h, std::vector<double>(3, 0.0)), Error);
}

// --- QAOA / VQE -----------------------------------------------------------------

TEST(Qaoa, SingleClauseIsSat) {
  const auto inst = ReducedInstance::reduce(kSingleClause);
  for (auto k : {OptimizerKind::spsa, OptimizerKind::trust_region}) {
    const auto r = solve_qaoa(inst, vqa(1, k, 42));
    EXPECT_EQ(r.verdict, Verdict::sat);
    expect_verified(r, kSingleClause);
    EXPECT_NE(mask_from_assignment(*r.witness), 0u);
  }
}

TEST(Qaoa, ContradictionFindsNothing) {
  const auto inst = ReducedInstance::reduce(kContradiction);
  const auto r = solve_qaoa(inst, vqa(1, OptimizerKind::trust_region, 42));
  EXPECT_EQ(r.verdict, Verdict::no_solution_found);
  EXPECT_GE(r.best_value, 1.0 - 1e-4);
  EXPECT_FALSE(r.budget.empty());
}

TEST(Qaoa, ConfigEchoAndTrace) {
  const auto inst = ReducedInstance::reduce(generate_synthetic("xor:3"));
  const auto r = solve_qaoa(inst, vqa(2, OptimizerKind::spsa, 5, 40));
  EXPECT_EQ(r.config["solver"], "qaoa");
  EXPECT_EQ(r.config["layers"], 2);
  EXPECT_EQ(r.config["optimizer"]["kind"], "spsa");
  EXPECT_EQ(r.config["optimizer"]["max_iterations"], 40);
  EXPECT_EQ(r.seed.value, 5u);
  EXPECT_EQ(r.normalized_trace.size(), r.trace.size());
  for (double v : r.normalized_trace) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Vqe, SingleClauseTwoLayers) {
  const auto inst = ReducedInstance::reduce(kSingleClause);
  const auto r = solve_vqe(inst, vqa(2, OptimizerKind::trust_region, 42));
  EXPECT_EQ(r.verdict, Verdict::sat);
  expect_verified(r, kSingleClause);
}

TEST(Vqe, EmptyFormulaIsSat) {
  const CnfFormula f(3, {});
  const auto inst = ReducedInstance::reduce(f);
  EXPECT_EQ(solve_vqe(inst, vqa(1, OptimizerKind::spsa, 1)).verdict, Verdict::sat);
  EXPECT_EQ(solve_qaoa(inst, vqa(1, OptimizerKind::spsa, 1)).verdict, Verdict::sat);
  const CnfFormula none(0, {});
  EXPECT_EQ(solve_vqe(ReducedInstance::reduce(none), vqa(1, OptimizerKind::spsa, 1)).verdict,
            Verdict::sat);
}

TEST(Vqe, RunningMinimumIsNonIncreasing) {
  const auto inst = ReducedInstance::reduce(generate_synthetic("addition"));
  for (auto k : {OptimizerKind::spsa, OptimizerKind::trust_region}) {
    const auto r = solve_vqe(inst, vqa(1, k, 3, 60));
    double running = std::numeric_limits<double>::infinity();
    for (const auto &t : r.trace) {
      const double next = std::min(running, t.value);
      EXPECT_LE(next, running);
      running = next;
    }
    EXPECT_LE(r.best_value, running + 1e-12);
  }
}

TEST(Vqa, SizeCap) {
  const auto inst = ReducedInstance::reduce(generate_synthetic("or:21"), 10);
  EXPECT_THROW(solve_qaoa(inst, vqa(1, OptimizerKind::spsa, 1)), BudgetError);
}

TEST(Vqa, SeedDeterminism) {
  const auto inst = ReducedInstance::reduce(generate_synthetic("indicator"));
  const auto a = solve_qaoa(inst, vqa(2, OptimizerKind::spsa, 9, 30));
  const auto b = solve_qaoa(inst, vqa(2, OptimizerKind::spsa, 9, 30));
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i)
    EXPECT_EQ(a.trace[i].value, b.trace[i].value);
  EXPECT_EQ(a.witness, b.witness);
}

// --- Grover -------------------------------------------------------------------

TEST(Grover, Iterations) {
  EXPECT_EQ(grover_iterations(6, 1), 6u);
  EXPECT_EQ(grover_iterations(2, 1), 1u);
  EXPECT_EQ(grover_iterations(4, 4), 1u);
  EXPECT_THROW(grover_iterations(3, 0), Error);
}

TEST(Grover, UniqueExactProbability) {
  const auto f = generate_synthetic("unique");
  const auto s = grover_state(f, 6);
  const double expected = qverify::testing::grover_probability(1, 64, 6);
  EXPECT_NEAR(s.probability(42), expected, 1e-9);
  EXPECT_NEAR(expected, 0.9966, 1e-4);
}

TEST(Grover, ExactnessForSingleSolutionInstances) {
  for (std::uint32_t n = 1; n <= 10; ++n) {
    std::vector<Clause> cl;
    for (std::uint32_t v = 1; v <= n; ++v)
      cl.push_back({{v % 3 == 0 ? neg(v) : pos(v)}});
    const CnfFormula f(n, cl);
    const auto models = naive_models(f);
    ASSERT_EQ(models.size(), 1u);
    for (std::uint64_t r = 0; r <= grover_iterations(n, 1) + 2; ++r) {
      const auto s = grover_state(f, r);
      EXPECT_NEAR(s.probability(*models.begin()),
                  qverify::testing::grover_probability(1, std::ldexp(1.0, n), r), 1e-9);
    }
  }
}

TEST(Grover, SolvesUnique) {
  const auto f = generate_synthetic("unique");
  const auto r = solve_grover(f, {256, RunSeed{42}});
  ASSERT_EQ(r.verdict, Verdict::sat);
  EXPECT_EQ(assignment_bits(*r.witness), "101010");
}

TEST(Grover, ContradictionAfterDoubledPass) {
  const auto r = solve_grover(kContradiction, {256, RunSeed{42}});
  EXPECT_EQ(r.verdict, Verdict::no_solution_found);
  bool doubled = false;
  for (const auto &p : r.details["schedule"])
    doubled = doubled || p["doubled"].get<bool>();
  EXPECT_TRUE(doubled);
}

TEST(Grover, Xor2) {
  const auto f = generate_synthetic("xor:2");
  const auto r = solve_grover(f, {256, RunSeed{42}});
  ASSERT_EQ(r.verdict, Verdict::sat);
  const auto m = mask_from_assignment(*r.witness);
  EXPECT_TRUE(m == 1 || m == 2);
}

TEST(Grover, HalfTheSpaceNeedsTheDoubledPass) {
  // x1 alone: half of the two states are solutions, where plain Grover
  // cannot amplify; the doubled space can.
  const CnfFormula f(1, {{{pos(1)}}});
  const auto r = solve_grover(f, {64, RunSeed{3}});
  ASSERT_EQ(r.verdict, Verdict::sat);
  EXPECT_EQ((*r.witness)[0], 1);
}

// --- QSVT ---------------------------------------------------------------------

TEST(Qsvt, RateMatchesSpectrumArithmetic) {
  for (const char *name : {"or:3", "xor:3", "unique", "indicator", "addition"}) {
    const auto inst = ReducedInstance::reduce(generate_synthetic(name));
    QsvtConfig cfg;
    const auto r = solve_qsvt(inst, cfg);
    // Recompute from the spectrum: sum over values of count * F(v / max)^2.
    const auto &spec = *inst.spectrum;
    const double delta = std::min(inst.gap.exact_gap->to_double(), kMaxFilterGap);
    const FilterPolynomial f(r.details["half_degree"].get<unsigned>(), delta);
    double rate = 0.0;
    for (const auto &[v, c] : spec.value_histogram) {
      const double fv = f(static_cast<double>(v) / static_cast<double>(spec.max_value));
      rate += static_cast<double>(c) * fv * fv;
    }
    rate /= std::ldexp(1.0, static_cast<int>(inst.qubo.size()));
    EXPECT_NEAR(*r.rate, rate, 1e-12) << name;
    const double solutions = static_cast<double>(spec.min_value == 0 ? spec.min_count : 0) /
                             std::ldexp(1.0, static_cast<int>(inst.qubo.size()));
    EXPECT_GE(*r.rate, solutions - 1e-12);
    EXPECT_LE(*r.rate, solutions + filter_leakage(f) + 1e-12);
    EXPECT_EQ(r.verdict, Verdict::sat) << name;
    expect_verified(r, inst.formula);
  }
}

TEST(Qsvt, ContradictionRateIsPureLeakage) {
  const CnfFormula f(2, {{{pos(1)}}, {{neg(1)}}, {{pos(2), pos(1)}}});
  const auto inst = ReducedInstance::reduce(f);
  QsvtConfig cfg;
  cfg.half_degree = 3;
  const auto r = solve_qsvt(inst, cfg);
  const double delta = std::min(inst.gap.exact_gap->to_double(), kMaxFilterGap);
  const double bound = std::pow(FilterPolynomial(3, delta)(delta), 2);
  EXPECT_LE(*r.rate, bound + 1e-15);
  EXPECT_EQ(r.verdict, Verdict::no_solution_found);
}

TEST(Qsvt, StateAgreesWithDenseBlockEncoding) {
  const auto inst = ReducedInstance::reduce(generate_synthetic("xor:3"));
  const auto fd = filtered_diagonal(inst, 4, 0.2, true);
  const auto s = qsvt_state(fd.values, inst.qubo.size());
  // Dense construction: U' with A = diag(F(a_x)) applied to |0> (x) uniform.
  const std::size_t m = fd.values.size();
  ComplexMatrix u = ComplexMatrix::Zero(2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = fd.values[i], c = std::sqrt(1 - a * a);
    u(i, i) = a;
    u(i, i + m) = c;
    u(i + m, i) = c;
    u(i + m, i + m) = -a;
  }
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(2 * m);
  for (std::size_t i = 0; i < m; ++i)
    in(i) = 1.0 / std::sqrt(double(m));
  const Eigen::VectorXcd out = u * in;
  for (std::size_t i = 0; i < 2 * m; ++i)
    EXPECT_NEAR(std::abs(out(i) - s[i]), 0.0, 1e-12);
}

TEST(Qsvt, SampledRateWithinThreeSigma) {
  const auto inst = ReducedInstance::reduce(generate_synthetic("or:3"));
  QsvtConfig cfg;
  cfg.shots = 100000;
  const auto r = solve_qsvt(inst, cfg);
  const double p = *r.rate;
  const double sigma = std::sqrt(p * (1 - p) / 100000.0);
  EXPECT_NEAR(r.details["rate_sampled"].get<double>(), p, 3 * sigma + 1e-12);
}

TEST(Qsvt, TableReferenceConfiguration) {
  // OR(3) as one wide clause: estimated gap 1/4; table degree 17 -> d = 9.
  const CnfFormula f(3, {{{pos(1), pos(2), pos(3)}}});
  const auto inst = ReducedInstance::reduce(f);
  QsvtConfig cfg;
  cfg.use_exact_gap = false;
  cfg.half_degree = 9;
  const auto r = solve_qsvt(inst, cfg);
  EXPECT_EQ(r.details["delta"].get<double>(), 0.25);
  EXPECT_EQ(r.details["degree"].get<unsigned>(), 18u);
  EXPECT_EQ(r.verdict, Verdict::sat);
}

TEST(QsvtProperty, FilteringTwiceIsNearlyIdempotent) {
  for (const char *name : {"or:3", "xor:3", "unique", "addition", "semi-unique"}) {
    const auto inst = ReducedInstance::reduce(generate_synthetic(name));
    const double delta = std::min(inst.gap.exact_gap->to_double(), kMaxFilterGap);
    const unsigned d = choose_degree(delta, inst.qubo.size());
    const auto fd = filtered_diagonal(inst, d, delta, true);
    const std::size_t n = inst.qubo.size();
    // Distribution after one and two post-selected applications.
    std::vector<double> once(fd.values.size()), twice(fd.values.size());
    double z1 = 0, z2 = 0, bad = 0;
    for (std::size_t x = 0; x < once.size(); ++x) {
      once[x] = std::pow(fd.values[x], 2);
      twice[x] = std::pow(fd.values[x], 4);
      z1 += once[x];
      z2 += twice[x];
    }
    double tv = 0.0;
    for (std::size_t x = 0; x < once.size(); ++x) {
      once[x] /= z1;
      twice[x] /= z2;
      tv += 0.5 * std::abs(once[x] - twice[x]);
      if (fd.encoding.a[x] != 0.0)
        bad += once[x];
    }
    EXPECT_LE(tv, 10 * bad + 1e-12) << name;
    (void)n;
  }
}

TEST(Qsvt, SizeCapAndTrivialInstance) {
  const auto big = ReducedInstance::reduce(generate_synthetic("or:17"), 10);
  EXPECT_THROW(solve_qsvt(big, {}), BudgetError);
  const auto none = ReducedInstance::reduce(CnfFormula(0, {}));
  EXPECT_EQ(solve_qsvt(none, {}).verdict, Verdict::sat);
}

// --- Soundness --------------------------------------------------------------

TEST(SoundnessProperty, NoSolverReportsAFalseWitness) {
  std::mt19937_64 rng(99);
  int sat_seen = 0, unsat_seen = 0;
  for (int t = 0; t < 40; ++t) {
    const auto f = qverify::testing::random_formula(rng, 6, 12, 1, 3);
    const auto models = naive_models(f);
    (models.empty() ? unsat_seen : sat_seen)++;
    const auto inst = ReducedInstance::reduce(f);
    std::vector<SolverReport> reports;
    reports.push_back(solve_brute(f, 20));
    reports.push_back(solve_grover(f, {64, RunSeed{static_cast<std::uint64_t>(t)}}));
    if (inst.qubo.size() <= 10) {
      reports.push_back(solve_qaoa(inst, vqa(1, OptimizerKind::trust_region, t, 40)));
      reports.push_back(solve_vqe(inst, vqa(1, OptimizerKind::spsa, t, 20)));
      try {
        reports.push_back(solve_qsvt(inst, {}));
      } catch (const BudgetError &) {
      }
    }
    for (const auto &r : reports) {
      expect_verified(r, f);
      if (models.empty())
        EXPECT_EQ(r.verdict, Verdict::no_solution_found) << r.solver;
    }
    EXPECT_EQ(reports[0].verdict == Verdict::sat, !models.empty());
  }
  EXPECT_GT(sat_seen, 0);
  EXPECT_GT(unsat_seen, 0);
}

TEST(Report, OfferWitnessRejectsWrongCandidates) {
  SolverReport r;
  EXPECT_FALSE(r.offer_witness(kSingleClause, {0, 0}));
  EXPECT_EQ(r.verdict, Verdict::no_solution_found);
  EXPECT_TRUE(r.offer_witness(kSingleClause, {1, 0}));
  EXPECT_FALSE(r.offer_witness(kSingleClause, {0, 1}));
  EXPECT_EQ(*r.witness, (Assignment{1, 0}));
}

TEST(Report, NormalizeTrace) {
  const std::vector<TracePoint> t{{1, 5.0}, {2, 3.0}, {3, 1.0}, {4, 0.5}};
  EXPECT_EQ(normalize_trace(t, 5.0, 1.0), (std::vector<double>{1.0, 0.5, 0.0, 0.0}));
}
