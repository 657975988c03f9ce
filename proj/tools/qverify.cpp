/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

// qverify command-line driver: `verify` runs one instance through the
// pipeline, `sweep` produces the experiment CSV files.

#include "qverify/qverify.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

using namespace qverify;

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      out.push_back(item);
  return out;
}

struct VerifyArgs {
  std::string source, dimacs, synthetic;
  std::vector<std::string> checks;
  unsigned unwind = 1;
  std::string checker, flag_table;
  std::string solver = "brute";
  std::uint64_t shots = 1024;
  std::size_t layers = 1;
  unsigned degree = 0;
  std::string optimizer = "trust-region";
  std::size_t max_iterations = 200;
  std::string out, trace;
  std::size_t jobs = 1;
  std::size_t oracle_budget = 20;
  std::uint64_t seed = 42;
  bool no_timing = false;
};

int run_verify_command(const VerifyArgs &a) {
  InstanceRequest req;
  if (!a.source.empty())
    req.source = a.source;
  if (!a.dimacs.empty())
    req.dimacs = a.dimacs;
  if (!a.synthetic.empty())
    req.synthetic = a.synthetic;
  for (const auto &c : a.checks)
    for (const auto &name : split_list(c))
      req.checks.insert(parse_check(name));
  if (req.source && req.checks.empty())
    throw Error("--source needs at least one --check");
  req.unwind = a.unwind;
  req.checker = a.checker;
  if (!a.flag_table.empty())
    req.flag_table = a.flag_table;

  VerifyOptions o;
  o.solver = parse_solver_kind(a.solver);
  o.shots = a.shots;
  o.layers = a.layers;
  o.degree = a.degree;
  o.optimizer = parse_optimizer_kind(a.optimizer);
  o.max_iterations = a.max_iterations;
  o.oracle_budget = a.oracle_budget;
  o.seed = RunSeed{a.seed};

  const auto instance = load_instance(req);
  const auto run = run_verify(instance, o);

  std::optional<std::string> trace_file;
  if (!a.trace.empty()) {
    write_file_atomic(a.trace, trace_csv(run.report));
    trace_file = a.trace;
  }
  if (!a.out.empty())
    write_file_atomic(a.out, to_json(run, !a.no_timing, trace_file).dump(2) + "\n");

  std::cout << "instance: " << run.instance << " (" << run.counts.n_cnf
            << " CNF vars, " << run.counts.n_qubo << " QUBO vars)\n";
  std::cout << "solver: " << run.report.solver << "\n";
  if (run.report.witness) {
    std::cout << "verdict: flaw found\n";
    std::cout << "witness: " << assignment_bits(*run.report.witness) << "\n";
    std::cout << assignment_literals(*run.report.witness) << "\n";
  } else {
    std::cout << "verdict: no flaw found within budget (" << run.report.budget << ")\n";
  }
  if (run.oracle_sat)
    std::cout << "oracle: " << (*run.oracle_sat ? "sat" : "unsat") << "\n";
  return exit_code_of(run);
}

struct SweepArgs {
  std::string instances, solvers = "qaoa,vqe",
                         optimizers = "spsa,trust-region";
  std::size_t seeds = 5;
  std::uint64_t seed = 42;
  std::size_t layers = 1, max_iterations = 200, jobs = 1, oracle_budget = 20;
  std::uint64_t shots = 1024;
  unsigned degree = 0;
  std::string heatmap_d, heatmap_delta;
  std::string out_dir = ".";
};

int run_sweep_command(const SweepArgs &a) {
  SweepSpec spec;
  spec.instances = split_list(a.instances);
  // Without instances only the heatmap is produced.
  if (!spec.instances.empty())
    for (const auto &s : split_list(a.solvers))
      spec.solvers.push_back(parse_solver_kind(s));
  spec.optimizers.clear();
  for (const auto &s : split_list(a.optimizers))
    spec.optimizers.push_back(parse_optimizer_kind(s));
  spec.seeds = a.seeds;
  spec.seed = RunSeed{a.seed};
  spec.layers = a.layers;
  spec.max_iterations = a.max_iterations;
  spec.shots = a.shots;
  spec.degree = a.degree;
  spec.oracle_budget = a.oracle_budget;
  spec.jobs = std::max<std::size_t>(1, a.jobs);
  if (!a.heatmap_d.empty() || !a.heatmap_delta.empty()) {
    std::tie(spec.d_min, spec.d_max) = parse_range(a.heatmap_d.empty() ? "1:60" : a.heatmap_d);
    std::tie(spec.k_min, spec.k_max) =
        parse_range(a.heatmap_delta.empty() ? "2:20" : a.heatmap_delta);
  }
  const auto out = run_sweep(spec);
  const std::filesystem::path dir(a.out_dir);
  write_file_atomic(dir / "convergence.csv", out.convergence_csv);
  write_file_atomic(dir / "rates.csv", out.rates_csv);
  write_file_atomic(dir / "heatmap.csv", out.heatmap_csv);
  std::cout << "wrote " << (dir / "convergence.csv").string() << ", "
            << (dir / "rates.csv").string() << ", " << (dir / "heatmap.csv").string()
            << "\n";
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"qverify: reachability of software errors via CNF, QUBO and "
               "simulated quantum solvers"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto *verify = app.add_subcommand("verify", "decide one instance");
  auto *src = verify->add_option("--source", va.source, "C source for the model checker");
  auto *dim = verify->add_option("--dimacs", va.dimacs, "DIMACS CNF file");
  auto *syn = verify->add_option("--synthetic", va.synthetic,
                                 "built-in instance, name[:param]");
  src->excludes(dim, syn);
  dim->excludes(syn);
  verify->add_option("--check", va.checks,
                     "checks for --source: bounds, overflow, div-by-zero, "
                     "pointer, conversion, nan, memory-leak");
  verify->add_option("--unwind", va.unwind, "loop unwind depth")->check(CLI::PositiveNumber);
  verify->add_option("--checker", va.checker, "model checker executable");
  verify->add_option("--checker-flags", va.flag_table, "JSON flag table for the checker");
  verify->add_option("--solver", va.solver, "brute, qaoa, vqe, grover or qsvt")
      ->capture_default_str();
  verify->add_option("--shots", va.shots, "measurement shots")->capture_default_str();
  verify->add_option("--layers", va.layers, "QAOA/VQE layers")->capture_default_str();
  verify->add_option("--degree", va.degree, "filter half degree d (0 = automatic)")
      ->capture_default_str();
  verify->add_option("--optimizer", va.optimizer, "spsa or trust-region")
      ->capture_default_str();
  verify->add_option("--max-iterations", va.max_iterations, "optimizer budget")
      ->capture_default_str();
  verify->add_option("--out", va.out, "JSON report path");
  verify->add_option("--trace", va.trace, "convergence trace CSV path");
  verify->add_option("--jobs", va.jobs, "worker threads (unused for a single run)");
  verify->add_option("--oracle-budget", va.oracle_budget,
                     "largest variable count for exhaustive enumeration")
      ->capture_default_str();
  verify->add_option("--seed", va.seed, "run seed")->capture_default_str();
  verify->add_flag("--no-timing", va.no_timing, "write duration_ms as 0");

  SweepArgs sa;
  auto *sweep = app.add_subcommand("sweep", "experiment grids and heatmap data");
  sweep->add_option("--instances", sa.instances, "comma-separated synthetic instances");
  sweep->add_option("--solvers", sa.solvers, "comma-separated: qaoa, vqe, qsvt")
      ->capture_default_str();
  sweep->add_option("--optimizers", sa.optimizers, "comma-separated optimizer kinds")
      ->capture_default_str();
  sweep->add_option("--seeds", sa.seeds, "seeds per grid point")->capture_default_str();
  sweep->add_option("--seed", sa.seed, "first seed")->capture_default_str();
  sweep->add_option("--layers", sa.layers, "QAOA/VQE layers")->capture_default_str();
  sweep->add_option("--max-iterations", sa.max_iterations, "optimizer budget")
      ->capture_default_str();
  sweep->add_option("--shots", sa.shots, "shots per run")->capture_default_str();
  sweep->add_option("--degree", sa.degree, "filter half degree (0 = automatic)");
  sweep->add_option("--oracle-budget", sa.oracle_budget, "exhaustive budget")
      ->capture_default_str();
  sweep->add_option("--heatmap-d", sa.heatmap_d, "half-degree range a:b");
  sweep->add_option("--heatmap-delta", sa.heatmap_delta,
                    "gap denominators a:b (delta = 1/k)");
  sweep->add_option("--jobs", sa.jobs, "worker threads")->capture_default_str();
  sweep->add_option("--out-dir", sa.out_dir, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (*verify)
      return run_verify_command(va);
    return run_sweep_command(sa);
  } catch (const CheckerUnavailable &e) {
    std::cerr << "qverify: " << e.what() << "\n";
    return kExitCheckerUnavailable;
  } catch (const std::exception &e) {
    std::cerr << "qverify: " << e.what() << "\n";
    return kExitError;
  }
}
