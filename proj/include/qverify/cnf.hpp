/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/error.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qverify {

/// A variable or its negation. Variables are numbered from 1 as in DIMACS.
struct Literal {
  std::uint32_t variable = 1;
  bool negated = false;

  /// Signed DIMACS form: +v or -v.
  std::int64_t dimacs() const {
    return negated ? -static_cast<std::int64_t>(variable)
                   : static_cast<std::int64_t>(variable);
  }
  static Literal from_dimacs(std::int64_t lit) {
    return {static_cast<std::uint32_t>(lit < 0 ? -lit : lit), lit < 0};
  }
  Literal operator!() const { return {variable, !negated}; }

  friend bool operator==(const Literal &, const Literal &) = default;
  friend auto operator<=>(const Literal &a, const Literal &b) {
    return std::pair(a.variable, a.negated) <=> std::pair(b.variable, b.negated);
  }
};

inline Literal pos(std::uint32_t v) { return {v, false}; }
inline Literal neg(std::uint32_t v) { return {v, true}; }

/// Disjunction of literals. Non-empty, each variable at most once.
struct Clause {
  std::vector<Literal> literals;

  std::size_t width() const { return literals.size(); }

  /// Literal set in canonical order, used for order-insensitive comparison.
  std::vector<Literal> sorted() const {
    auto out = literals;
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// Values of variables 1..n; element v-1 holds variable v.
using Assignment = std::vector<std::uint8_t>;

/// Bit v-1 of the mask is the value of variable v.
inline Assignment assignment_from_mask(std::uint64_t mask, std::size_t n) {
  Assignment a(n);
  for (std::size_t i = 0; i < n; ++i)
    a[i] = static_cast<std::uint8_t>((mask >> i) & 1U);
  return a;
}

inline std::uint64_t mask_from_assignment(std::span<const std::uint8_t> a) {
  if (a.size() > 64)
    throw BudgetError("assignment wider than 64 variables has no mask form");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      m |= std::uint64_t{1} << i;
  return m;
}

/// Most significant variable first, so the string reads as the binary value
/// of the basis index (variable 1 is the last character).
inline std::string assignment_bits(std::span<const std::uint8_t> a) {
  std::string s;
  s.reserve(a.size());
  for (std::size_t i = a.size(); i-- > 0;)
    s.push_back(a[i] ? '1' : '0');
  return s;
}

/// DIMACS-style model line: "v 1 -2 3 0".
inline std::string assignment_literals(std::span<const std::uint8_t> a) {
  std::string s = "v";
  for (std::size_t i = 0; i < a.size(); ++i)
    s += " " + std::string(a[i] ? "" : "-") + std::to_string(i + 1);
  return s + " 0";
}

/// Conjunction of clauses over variables 1..num_variables.
class CnfFormula {
public:
  CnfFormula() = default;
  CnfFormula(std::uint32_t num_variables, std::vector<Clause> clauses,
             std::string provenance = "synthetic:anonymous")
      : num_variables_(num_variables), clauses_(std::move(clauses)),
        provenance_(std::move(provenance)) {
    validate();
  }

  std::uint32_t num_variables() const { return num_variables_; }
  const std::vector<Clause> &clauses() const { return clauses_; }
  const std::string &provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  bool satisfied_by(std::span<const std::uint8_t> assignment) const {
    if (assignment.size() < num_variables_)
      throw Error("assignment shorter than the variable count");
    return std::all_of(clauses_.begin(), clauses_.end(), [&](const Clause &c) {
      return std::any_of(c.literals.begin(), c.literals.end(),
                         [&](const Literal &l) {
                           return (assignment[l.variable - 1] != 0) != l.negated;
                         });
    });
  }

  /// Bit v-1 of `mask` is variable v. Requires num_variables <= 64.
  bool satisfied_by_mask(std::uint64_t mask) const {
    for (const auto &c : clauses_) {
      bool sat = false;
      for (const auto &l : c.literals) {
        if ((((mask >> (l.variable - 1)) & 1U) != 0) != l.negated) {
          sat = true;
          break;
        }
      }
      if (!sat)
        return false;
    }
    return true;
  }

  /// Same variable count and the same clause sequence, literal order within a
  /// clause ignored.
  bool equivalent(const CnfFormula &other) const {
    if (num_variables_ != other.num_variables_ ||
        clauses_.size() != other.clauses_.size())
      return false;
    for (std::size_t i = 0; i < clauses_.size(); ++i)
      if (clauses_[i].sorted() != other.clauses_[i].sorted())
        return false;
    return true;
  }

private:
  void validate() const {
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      const auto &c = clauses_[ci];
      if (c.literals.empty())
        throw ParseError("clause " + std::to_string(ci + 1) + " is empty");
      std::set<std::uint32_t> seen;
      for (const auto &l : c.literals) {
        if (l.variable == 0 || l.variable > num_variables_)
          throw ParseError("literal " + std::to_string(l.dimacs()) +
                           " outside 1.." + std::to_string(num_variables_));
        if (!seen.insert(l.variable).second)
          throw ParseError("variable " + std::to_string(l.variable) +
                           " repeated in clause " + std::to_string(ci + 1));
      }
    }
  }

  std::uint32_t num_variables_ = 0;
  std::vector<Clause> clauses_;
  std::string provenance_ = "synthetic:anonymous";
};

enum class TautologyPolicy { reject, drop };

struct DimacsOptions {
  TautologyPolicy tautologies = TautologyPolicy::reject;
  std::string provenance = "dimacs-file";
};

/// Reads DIMACS CNF. Duplicate literals inside a clause are merged; a clause
/// holding both polarities of a variable is rejected (or dropped, on request,
/// in which case the header clause count still has to match the input).
inline CnfFormula parse_dimacs(std::istream &in, const DimacsOptions &opts = {}) {
  std::string line;
  bool have_header = false;
  std::uint64_t nvars = 0;
  std::uint64_t nclauses = 0;
  std::uint64_t seen_clauses = 0;
  std::vector<Clause> clauses;
  std::vector<Literal> current;
  std::size_t line_no = 0;

  auto fail = [&](const std::string &msg) -> ParseError {
    return ParseError("dimacs line " + std::to_string(line_no) + ": " + msg);
  };

  auto finish_clause = [&]() {
    ++seen_clauses;
    if (current.empty())
      throw fail("empty clause");
    // Stable de-duplication: the reduction pairs literals in stored order.
    std::vector<Literal> kept;
    bool tautology = false;
    for (const auto &l : current) {
      auto same_var = std::find_if(kept.begin(), kept.end(), [&](const Literal &k) {
        return k.variable == l.variable;
      });
      if (same_var == kept.end())
        kept.push_back(l);
      else if (same_var->negated != l.negated)
        tautology = true;
    }
    current = std::move(kept);
    if (tautology) {
      if (opts.tautologies == TautologyPolicy::reject)
        throw fail("tautological clause");
      current.clear();
      return;
    }
    clauses.push_back(Clause{std::move(current)});
    current = {};
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos)
      continue;
    if (line[first] == 'c')
      continue;
    if (line[first] == '%')
      break;
    std::istringstream tokens(line.substr(first));
    if (line[first] == 'p') {
      if (have_header)
        throw fail("duplicate header");
      std::string p, fmt;
      std::int64_t v = -1, c = -1;
      std::string extra;
      if (!(tokens >> p >> fmt >> v >> c) || p != "p" || fmt != "cnf" ||
          v < 0 || c < 0 || (tokens >> extra))
        throw fail("malformed header, expected 'p cnf <nvars> <nclauses>'");
      nvars = static_cast<std::uint64_t>(v);
      nclauses = static_cast<std::uint64_t>(c);
      if (nvars > UINT32_MAX)
        throw fail("variable count too large");
      have_header = true;
      continue;
    }
    if (!have_header)
      throw fail("clause data before header");
    std::string tok;
    while (tokens >> tok) {
      std::size_t used = 0;
      std::int64_t lit = 0;
      try {
        lit = std::stoll(tok, &used);
      } catch (const std::exception &) {
        throw fail("bad token '" + tok + "'");
      }
      if (used != tok.size())
        throw fail("bad token '" + tok + "'");
      if (lit == 0) {
        finish_clause();
        continue;
      }
      const std::uint64_t var = static_cast<std::uint64_t>(lit < 0 ? -lit : lit);
      if (var > nvars)
        throw fail("literal " + tok + " exceeds declared variable count " +
                   std::to_string(nvars));
      current.push_back(Literal::from_dimacs(lit));
    }
  }
  if (!have_header)
    throw ParseError("dimacs: missing 'p cnf' header");
  if (!current.empty())
    throw ParseError("dimacs: last clause not terminated by 0");
  if (seen_clauses != nclauses)
    throw ParseError("dimacs: header declares " + std::to_string(nclauses) +
                     " clauses, found " + std::to_string(seen_clauses));
  return CnfFormula(static_cast<std::uint32_t>(nvars), std::move(clauses),
                    opts.provenance);
}

inline CnfFormula parse_dimacs(const std::string &text,
                               const DimacsOptions &opts = {}) {
  std::istringstream in(text);
  return parse_dimacs(in, opts);
}

inline std::string emit_dimacs(const CnfFormula &f) {
  std::ostringstream out;
  out << "p cnf " << f.num_variables() << ' ' << f.clauses().size() << '\n';
  for (const auto &c : f.clauses()) {
    for (const auto &l : c.literals)
      out << l.dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

} // namespace qverify
