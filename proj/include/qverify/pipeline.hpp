/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/export.hpp"
#include "qverify/model_checker.hpp"
#include "qverify/oracle.hpp"
#include "qverify/solvers/grover.hpp"
#include "qverify/solvers/instance.hpp"
#include "qverify/solvers/qsvt.hpp"
#include "qverify/solvers/vqa.hpp"
#include "qverify/synthetic.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qverify {

enum class SolverKind { brute, qaoa, vqe, grover, qsvt };

inline std::string to_string(SolverKind k) {
  switch (k) {
  case SolverKind::brute:
    return "brute";
  case SolverKind::qaoa:
    return "qaoa";
  case SolverKind::vqe:
    return "vqe";
  case SolverKind::grover:
    return "grover";
  case SolverKind::qsvt:
    return "qsvt";
  }
  return "?";
}

inline SolverKind parse_solver_kind(const std::string &s) {
  for (auto k : {SolverKind::brute, SolverKind::qaoa, SolverKind::vqe,
                 SolverKind::grover, SolverKind::qsvt})
    if (to_string(k) == s)
      return k;
  throw Error("unknown solver '" + s + "' (expected brute, qaoa, vqe, grover or qsvt)");
}

/// Exit codes of `qverify verify`.
enum ExitCode : int {
  kExitNoFlaw = 0,
  kExitFlaw = 1,
  kExitError = 2,
  kExitCheckerUnavailable = 3,
};

// --- Instances ------------------------------------------------------------

struct InstanceRequest {
  std::optional<std::filesystem::path> source;
  std::optional<std::filesystem::path> dimacs;
  std::optional<std::string> synthetic;
  std::set<CheckKind> checks;
  unsigned unwind = 1;
  std::filesystem::path checker;
  std::optional<std::filesystem::path> flag_table;
};

struct LoadedInstance {
  std::string name;
  CnfFormula formula;
};

inline LoadedInstance load_instance(const InstanceRequest &req) {
  const int given = int(req.source.has_value()) + int(req.dimacs.has_value()) +
                    int(req.synthetic.has_value());
  if (given != 1)
    throw Error("exactly one of --source, --dimacs, --synthetic is required");
  if (req.synthetic)
    return {*req.synthetic, generate_synthetic(*req.synthetic)};
  if (req.dimacs) {
    std::ifstream in(*req.dimacs);
    if (!in)
      throw Error("cannot open " + req.dimacs->string());
    return {req.dimacs->filename().string(), parse_dimacs(in)};
  }
  CheckerConfig cfg;
  cfg.source_path = *req.source;
  cfg.checks = req.checks;
  cfg.unwind_depth = req.unwind;
  cfg.checker_executable = req.checker;
  if (req.flag_table)
    cfg.flag_table = CheckerFlagTable::load(*req.flag_table);
  return {req.source->filename().string(), run_model_checker(cfg)};
}

/// Sizes the reduction would produce, computed from clause widths alone.
struct ReductionCounts {
  std::size_t n_cnf = 0;
  std::size_t n_aux = 0;
  std::size_t n_qubo = 0;
  std::int64_t bound_M = 1;
};

inline ReductionCounts reduction_counts(const CnfFormula &f) {
  ReductionCounts c;
  c.n_cnf = f.num_variables();
  std::int64_t m = 0;
  for (const auto &cl : f.clauses()) {
    const std::size_t extra = cl.width() > 2 ? cl.width() - 2 : 0;
    c.n_aux += extra;
    m += kClausePenaltyMax + kGadgetPenaltyMax * static_cast<std::int64_t>(extra);
  }
  c.n_qubo = c.n_cnf + c.n_aux;
  c.bound_M = std::max<std::int64_t>(1, m);
  return c;
}

/// Above this many QUBO variables the dense coefficient matrix is not built.
inline constexpr std::size_t kMaxMaterializedQubo = 2048;

// --- Verify ---------------------------------------------------------------

struct VerifyOptions {
  SolverKind solver = SolverKind::brute;
  std::uint64_t shots = 1024;
  std::size_t layers = 1;
  unsigned degree = 0;
  OptimizerKind optimizer = OptimizerKind::trust_region;
  std::size_t max_iterations = 200;
  std::size_t oracle_budget = 20;
  RunSeed seed{};
};

/// Exhaustive search over the CNF variables.
inline SolverReport solve_brute(const CnfFormula &f, std::size_t budget) {
  Stopwatch clock;
  SolverReport r;
  r.solver = "brute";
  r.config = {{"solver", "brute"}, {"budget", budget}};
  const auto sat = enumerate_sat(f, budget);
  r.details = {{"models", sat.size()}};
  if (!sat.empty())
    r.offer_witness(f, assignment_from_mask(sat.front(), f.num_variables()));
  if (r.verdict != Verdict::sat)
    r.budget = "all " + std::to_string(std::uint64_t{1} << f.num_variables()) +
               " assignments enumerated";
  r.best_value = r.verdict == Verdict::sat ? 0.0 : 1.0;
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

inline SolverReport run_solver(const ReducedInstance &inst, const VerifyOptions &o) {
  switch (o.solver) {
  case SolverKind::brute:
    return solve_brute(inst.formula, o.oracle_budget);
  case SolverKind::grover:
    return solve_grover(inst.formula, {o.shots, o.seed});
  case SolverKind::qaoa:
  case SolverKind::vqe: {
    VqaConfig cfg;
    cfg.layers = o.layers;
    cfg.shots = o.shots;
    cfg.seed = o.seed;
    cfg.optimizer.kind = o.optimizer;
    cfg.optimizer.max_iterations = o.max_iterations;
    return o.solver == SolverKind::qaoa ? solve_qaoa(inst, cfg) : solve_vqe(inst, cfg);
  }
  case SolverKind::qsvt: {
    QsvtConfig cfg;
    cfg.half_degree = o.degree;
    cfg.shots = o.shots;
    cfg.seed = o.seed;
    return solve_qsvt(inst, cfg);
  }
  }
  throw Error("unhandled solver");
}

struct PipelineRun {
  std::string instance;
  std::string provenance;
  ReductionCounts counts;
  std::optional<GapInfo> gap;
  SolverReport report;
  /// Oracle verdict when the formula fits the exhaustive budget.
  std::optional<bool> oracle_sat;
};

inline PipelineRun run_verify(const LoadedInstance &li, const VerifyOptions &o) {
  PipelineRun run;
  run.instance = li.name;
  run.provenance = li.formula.provenance();
  run.counts = reduction_counts(li.formula);

  if (o.solver == SolverKind::brute || o.solver == SolverKind::grover) {
    ReducedInstance inst;
    inst.formula = li.formula;
    if (run.counts.n_qubo <= kMaxMaterializedQubo) {
      inst.qubo = cnf_to_qubo(li.formula);
      inst.gap = compute_gap(inst.qubo, inst.qubo.size() <= o.oracle_budget,
                             o.oracle_budget);
      run.gap = inst.gap;
    }
    run.report = run_solver(inst, o);
  } else {
    if (run.counts.n_qubo > kMaxMaterializedQubo)
      throw BudgetError("instance reduces to " + std::to_string(run.counts.n_qubo) +
                        " QUBO variables");
    const auto inst = ReducedInstance::reduce(li.formula, o.oracle_budget);
    run.gap = inst.gap;
    run.report = run_solver(inst, o);
  }

  if (li.formula.num_variables() <= o.oracle_budget) {
    run.oracle_sat = !enumerate_sat(li.formula, o.oracle_budget).empty();
    if (run.report.verdict == Verdict::sat && !*run.oracle_sat)
      throw std::logic_error("solver reported a witness for an unsatisfiable formula");
  }
  return run;
}

inline int exit_code_of(const PipelineRun &run) {
  return run.report.verdict == Verdict::sat ? kExitFlaw : kExitNoFlaw;
}

/// Report schema: instance, provenance, sizes, gap, solver, config, verdict,
/// witness, rate, trace_file, seed, duration_ms, oracle.
inline nlohmann::json to_json(const PipelineRun &run, bool timing,
                              const std::optional<std::string> &trace_file = {}) {
  nlohmann::json j{{"instance", run.instance},
                   {"provenance", run.provenance},
                   {"n_cnf_vars", run.counts.n_cnf},
                   {"n_qubo_vars", run.counts.n_qubo},
                   {"n_aux", run.counts.n_aux},
                   {"solver", run.report.solver},
                   {"config", run.report.config},
                   {"verdict", to_string(run.report.verdict)},
                   {"seed", run.report.seed.value},
                   {"duration_ms", timing ? run.report.wall_time_ms : 0.0},
                   {"details", run.report.details}};
  j["gap"] = run.gap ? to_json(*run.gap)
                     : nlohmann::json{{"M", run.counts.bound_M},
                                      {"estimated", Rational(1, run.counts.bound_M)
                                                        .to_string()}};
  if (run.report.witness) {
    j["witness"] = assignment_bits(*run.report.witness);
    j["witness_literals"] = assignment_literals(*run.report.witness);
  } else {
    j["budget"] = run.report.budget;
  }
  if (run.report.rate)
    j["rate"] = *run.report.rate;
  if (trace_file)
    j["trace_file"] = *trace_file;
  if (run.oracle_sat)
    j["oracle"] = {{"sat", *run.oracle_sat},
                   {"agrees", *run.oracle_sat == (run.report.verdict == Verdict::sat)}};
  return j;
}

// --- Files and formatting -------------------------------------------------

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

/// Writes to a sibling temporary and renames it over `path`.
inline void write_file_atomic(const std::filesystem::path &path,
                              const std::string &content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error("cannot write " + tmp.string());
    out << content;
    if (!out.flush())
      throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string trace_csv(const SolverReport &r) {
  std::ostringstream os;
  os << "iteration,value,normalized_value\n";
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    os << r.trace[i].iteration << ',' << format_double(r.trace[i].value) << ',';
    if (i < r.normalized_trace.size())
      os << format_double(r.normalized_trace[i]);
    os << '\n';
  }
  return os.str();
}

/// Runs fn(0..n-1) on up to `jobs` threads. Results must be written to
/// per-index slots so the outcome does not depend on scheduling. The first
/// exception (by index) is rethrown after all workers finish.
template <typename Fn> void parallel_for(std::size_t n, std::size_t jobs, Fn &&fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, n));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
}

// --- Sweep ----------------------------------------------------------------

struct SweepSpec {
  std::vector<std::string> instances;
  std::vector<SolverKind> solvers;
  std::vector<OptimizerKind> optimizers{OptimizerKind::spsa,
                                        OptimizerKind::trust_region};
  std::size_t seeds = 5;
  RunSeed seed{};
  std::size_t layers = 1;
  std::size_t max_iterations = 200;
  std::uint64_t shots = 1024;
  unsigned degree = 0;
  std::size_t oracle_budget = 20;
  /// Heatmap grid: d in [d_min, d_max], delta = 1/k for k in [k_min, k_max].
  unsigned d_min = 1, d_max = 0;
  unsigned k_min = 2, k_max = 0;
  std::size_t jobs = 1;
};

struct SweepOutputs {
  std::string convergence_csv;
  std::string rates_csv;
  std::string heatmap_csv;
};

/// Parses "a:b" (inclusive) or a single number into a range.
inline std::pair<unsigned, unsigned> parse_range(const std::string &s) {
  auto num = [&](const std::string &t) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(t, &used);
    } catch (const std::exception &) {
      throw Error("invalid range '" + s + "'");
    }
    if (used != t.size() || v > 100000)
      throw Error("invalid range '" + s + "'");
    return static_cast<unsigned>(v);
  };
  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    const unsigned v = num(s);
    return {v, v};
  }
  const unsigned a = num(s.substr(0, colon)), b = num(s.substr(colon + 1));
  if (a > b)
    throw Error("invalid range '" + s + "'");
  return {a, b};
}

inline std::string heatmap_csv(unsigned d_min, unsigned d_max, unsigned k_min,
                               unsigned k_max) {
  if (d_min < 1 || k_min < 2)
    throw Error("heatmap needs d >= 1 and delta denominators >= 2");
  std::ostringstream os;
  os << "d,delta,value\n";
  for (unsigned k = k_min; k <= k_max; ++k)
    for (unsigned d = d_min; d <= d_max; ++d)
      os << d << ',' << format_double(1.0 / k) << ','
         << format_double(filter_heat(FilterPolynomial(d, 1.0 / k))) << '\n';
  return os.str();
}

inline SweepOutputs run_sweep(const SweepSpec &spec) {
  SweepOutputs out;
  for (auto s : spec.solvers)
    if (s != SolverKind::qaoa && s != SolverKind::vqe && s != SolverKind::qsvt)
      throw Error("sweep supports the qaoa, vqe and qsvt solvers, got " + to_string(s));
  if (!spec.solvers.empty() && spec.instances.empty())
    throw Error("sweep needs at least one instance");

  std::vector<ReducedInstance> reduced;
  for (const auto &name : spec.instances)
    reduced.push_back(ReducedInstance::reduce(generate_synthetic(name), spec.oracle_budget));

  struct Task {
    std::size_t instance;
    SolverKind solver;
    OptimizerKind optimizer;
    std::size_t seed_index;
  };
  std::vector<Task> vqa_tasks;
  std::vector<std::size_t> qsvt_tasks;
  for (std::size_t i = 0; i < reduced.size(); ++i)
    for (auto s : spec.solvers) {
      if (s == SolverKind::qsvt) {
        qsvt_tasks.push_back(i);
        continue;
      }
      for (auto opt : spec.optimizers)
        for (std::size_t k = 0; k < spec.seeds; ++k)
          vqa_tasks.push_back({i, s, opt, k});
    }

  std::vector<SolverReport> vqa_reports(vqa_tasks.size());
  std::vector<SolverReport> qsvt_reports(qsvt_tasks.size());
  const std::size_t total = vqa_tasks.size() + qsvt_tasks.size();
  parallel_for(total, spec.jobs, [&](std::size_t t) {
    VerifyOptions o;
    o.shots = spec.shots;
    o.layers = spec.layers;
    o.degree = spec.degree;
    o.max_iterations = spec.max_iterations;
    o.oracle_budget = spec.oracle_budget;
    if (t < vqa_tasks.size()) {
      const auto &task = vqa_tasks[t];
      o.solver = task.solver;
      o.optimizer = task.optimizer;
      o.seed = RunSeed{spec.seed.value + task.seed_index};
      vqa_reports[t] = run_solver(reduced[task.instance], o);
    } else {
      const std::size_t q = t - vqa_tasks.size();
      o.solver = SolverKind::qsvt;
      o.seed = spec.seed;
      qsvt_reports[q] = run_solver(reduced[qsvt_tasks[q]], o);
    }
  });

  std::ostringstream conv;
  conv << "instance,solver,optimizer,seed,iteration,normalized_value,running_min\n";
  for (std::size_t t = 0; t < vqa_tasks.size(); ++t) {
    const auto &task = vqa_tasks[t];
    const auto &r = vqa_reports[t];
    const bool normalized = r.normalized_trace.size() == r.trace.size();
    double running = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      const double v = normalized ? r.normalized_trace[i] : r.trace[i].value;
      running = std::min(running, v);
      conv << spec.instances[task.instance] << ',' << to_string(task.solver) << ','
           << to_string(task.optimizer) << ',' << spec.seed.value + task.seed_index
           << ',' << r.trace[i].iteration << ',' << format_double(v) << ','
           << format_double(running) << '\n';
    }
  }
  out.convergence_csv = conv.str();

  std::ostringstream rates;
  rates << "instance,n_qubits,gap_estimated,gap_exact,degree,rate,verdict,rate_exact\n";
  for (std::size_t q = 0; q < qsvt_tasks.size(); ++q) {
    const auto &inst = reduced[qsvt_tasks[q]];
    const auto &r = qsvt_reports[q];
    const auto &d = r.details;
    rates << spec.instances[qsvt_tasks[q]] << ',' << inst.qubo.size() << ','
          << inst.gap.estimated_gap.to_string() << ','
          << (inst.gap.exact_gap ? inst.gap.exact_gap->to_string() : "") << ','
          << (d.contains("degree") ? std::to_string(d["degree"].get<unsigned>()) : "")
          << ','
          << format_double(d.contains("rate_sampled") ? d["rate_sampled"].get<double>()
                                                      : r.rate.value_or(0.0))
          << ',' << to_string(r.verdict) << ','
          << format_double(r.rate.value_or(0.0)) << '\n';
  }
  out.rates_csv = rates.str();

  if (spec.d_max >= spec.d_min && spec.k_max >= spec.k_min && spec.d_max > 0)
    out.heatmap_csv = heatmap_csv(spec.d_min, spec.d_max, spec.k_min, spec.k_max);
  else
    out.heatmap_csv = "d,delta,value\n";
  return out;
}

} // namespace qverify
