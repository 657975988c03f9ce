/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

// Bridge to an external bounded model checker that can print the verification
// condition of a C program as DIMACS CNF. Satisfiable output means the
// flagged error is reachable within the unwind depth.

#include "qverify/cnf.hpp"
#include "qverify/error.hpp"

#include "json.hpp"

#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

namespace qverify {

enum class CheckKind {
  bounds,
  overflow,
  div_by_zero,
  pointer,
  conversion,
  nan,
  memory_leak,
};

inline const std::map<std::string, CheckKind> &check_names() {
  static const std::map<std::string, CheckKind> names{
      {"bounds", CheckKind::bounds},
      {"overflow", CheckKind::overflow},
      {"div-by-zero", CheckKind::div_by_zero},
      {"pointer", CheckKind::pointer},
      {"conversion", CheckKind::conversion},
      {"nan", CheckKind::nan},
      {"memory-leak", CheckKind::memory_leak},
  };
  return names;
}

inline std::string to_string(CheckKind k) {
  for (const auto &[name, kind] : check_names())
    if (kind == k)
      return name;
  return "?";
}

inline CheckKind parse_check(const std::string &s) {
  const auto it = check_names().find(s);
  if (it == check_names().end())
    throw Error("unknown check '" + s + "'");
  return it->second;
}

/// Command-line flags passed to the checker for each property.
class CheckerFlagTable {
public:
  /// CBMC 5.x/6.x flag names.
  static CheckerFlagTable defaults() {
    CheckerFlagTable t;
    t.flags_ = {
        {CheckKind::bounds, {"--bounds-check"}},
        {CheckKind::overflow, {"--signed-overflow-check"}},
        {CheckKind::div_by_zero, {"--div-by-zero-check"}},
        {CheckKind::pointer, {"--pointer-check"}},
        {CheckKind::conversion, {"--conversion-check"}},
        {CheckKind::nan, {"--nan-check"}},
        {CheckKind::memory_leak, {"--memory-leak-check"}},
    };
    return t;
  }

  /// Reads {"check-name": ["--flag", ...], ...}; checks not listed keep their
  /// default flags.
  static CheckerFlagTable from_json(const nlohmann::json &j) {
    CheckerFlagTable t = defaults();
    if (!j.is_object())
      throw Error("checker flag table must be a JSON object");
    for (const auto &[name, value] : j.items()) {
      if (!value.is_array())
        throw Error("flags for '" + name + "' must be an array of strings");
      std::vector<std::string> flags;
      for (const auto &f : value)
        flags.push_back(f.get<std::string>());
      t.flags_[parse_check(name)] = std::move(flags);
    }
    return t;
  }

  static CheckerFlagTable load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
      throw Error("cannot open checker flag table " + path.string());
    try {
      return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception &e) {
      throw Error("invalid checker flag table " + path.string() + ": " + e.what());
    }
  }

  const std::vector<std::string> &flags(CheckKind k) const { return flags_.at(k); }

private:
  std::map<CheckKind, std::vector<std::string>> flags_;
};

struct CheckerConfig {
  std::filesystem::path source_path;
  std::set<CheckKind> checks;
  unsigned unwind_depth = 1;
  /// Empty: resolve from QVERIFY_CHECKER, then `cbmc` on PATH.
  std::filesystem::path checker_executable;
  CheckerFlagTable flag_table = CheckerFlagTable::defaults();
};

namespace detail {

inline bool is_executable(const std::filesystem::path &p) {
  return !p.empty() && ::access(p.c_str(), X_OK) == 0 &&
         !std::filesystem::is_directory(p);
}

inline std::optional<std::filesystem::path> search_path(const std::string &name) {
  const char *path = std::getenv("PATH");
  if (!path)
    return std::nullopt;
  std::stringstream ss(path);
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    if (dir.empty())
      continue;
    const auto candidate = std::filesystem::path(dir) / name;
    if (is_executable(candidate))
      return candidate;
  }
  return std::nullopt;
}

struct ProcessResult {
  int exit_code = -1;
  std::string out;
};

/// Runs argv[0] with the given arguments, capturing stdout. stderr is
/// discarded.
inline ProcessResult run_process(const std::vector<std::string> &argv) {
  int pipefd[2];
  if (::pipe(pipefd) != 0)
    throw CheckerError("pipe failed");
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    throw CheckerError("fork failed");
  }
  if (pid == 0) {
    ::dup2(pipefd[1], STDOUT_FILENO);
    const int devnull = ::open("/dev/null", O_WRONLY);
    if (devnull >= 0)
      ::dup2(devnull, STDERR_FILENO);
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    std::vector<char *> args;
    for (const auto &a : argv)
      args.push_back(const_cast<char *>(a.c_str()));
    args.push_back(nullptr);
    ::execv(args[0], args.data());
    ::_exit(127);
  }
  ::close(pipefd[1]);
  ProcessResult r;
  char buf[8192];
  for (;;) {
    const ssize_t k = ::read(pipefd[0], buf, sizeof buf);
    if (k > 0)
      r.out.append(buf, static_cast<std::size_t>(k));
    else if (k == 0 || errno != EINTR)
      break;
  }
  ::close(pipefd[0]);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  return r;
}

} // namespace detail

/// Checker to run: explicit config path, else QVERIFY_CHECKER, else `cbmc`
/// on PATH. Throws CheckerUnavailable when none is executable.
inline std::filesystem::path resolve_checker(const CheckerConfig &cfg) {
  if (const char *env = std::getenv("QVERIFY_CHECKER"); env && *env) {
    if (!detail::is_executable(env))
      throw CheckerUnavailable(std::string("QVERIFY_CHECKER=") + env +
                               " is not an executable file");
    return env;
  }
  if (!cfg.checker_executable.empty()) {
    if (!detail::is_executable(cfg.checker_executable))
      throw CheckerUnavailable("checker " + cfg.checker_executable.string() +
                               " is not an executable file");
    return cfg.checker_executable;
  }
  if (auto p = detail::search_path("cbmc"))
    return *p;
  throw CheckerUnavailable("no model checker found (set QVERIFY_CHECKER or "
                           "put cbmc on PATH)");
}

inline std::vector<std::string> checker_command(const std::filesystem::path &exe,
                                                const CheckerConfig &cfg) {
  std::vector<std::string> argv{exe.string(), cfg.source_path.string(), "--dimacs"};
  for (const auto k : cfg.checks)
    for (const auto &f : cfg.flag_table.flags(k))
      argv.push_back(f);
  argv.push_back("--unwind");
  argv.push_back(std::to_string(cfg.unwind_depth));
  return argv;
}

inline CnfFormula run_model_checker(const CheckerConfig &cfg) {
  if (cfg.checks.empty())
    throw Error("model checker needs at least one check");
  if (cfg.unwind_depth < 1)
    throw Error("unwind depth must be >= 1");
  if (!std::filesystem::is_regular_file(cfg.source_path))
    throw Error("source file " + cfg.source_path.string() + " does not exist");
  const auto exe = resolve_checker(cfg);
  const auto result = detail::run_process(checker_command(exe, cfg));
  if (result.exit_code == 127 && result.out.empty())
    throw CheckerUnavailable("checker " + exe.string() + " could not be started");
  if (result.out.find("p cnf") == std::string::npos)
    throw CheckerError("checker exited with status " +
                       std::to_string(result.exit_code) + " and no DIMACS output");
  DimacsOptions opts;
  opts.tautologies = TautologyPolicy::drop;
  opts.provenance = "model-checker";
  try {
    return parse_dimacs(result.out, opts);
  } catch (const ParseError &e) {
    throw CheckerError(std::string("unparseable checker output: ") + e.what());
  }
}

} // namespace qverify
