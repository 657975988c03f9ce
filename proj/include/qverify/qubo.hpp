/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/cnf.hpp"
#include "qverify/rational.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace qverify {

/// Literal over a QUBO index (0-based), used once CNF variables and
/// auxiliaries share one index space.
struct QLiteral {
  std::size_t index = 0;
  bool negated = false;
};

/// Integer quadratic polynomial over binary variables. Because x*x = x on
/// {0,1}, squares are folded into the linear term (stored at key (i, i)).
class QuadraticPolynomial {
public:
  QuadraticPolynomial() = default;
  explicit QuadraticPolynomial(std::int64_t constant) : constant_(constant) {}

  std::int64_t constant() const { return constant_; }
  /// Keys (i, j) with i <= j; (i, i) is the linear coefficient of x_i.
  const std::map<std::pair<std::size_t, std::size_t>, std::int64_t> &
  terms() const {
    return terms_;
  }

  std::int64_t coefficient(std::size_t i, std::size_t j) const {
    if (i > j)
      std::swap(i, j);
    auto it = terms_.find({i, j});
    return it == terms_.end() ? 0 : it->second;
  }

  void add_constant(std::int64_t c) {
    constant_ = detail::checked_add(constant_, c);
  }
  void add_term(std::size_t i, std::size_t j, std::int64_t c) {
    if (c == 0)
      return;
    if (i > j)
      std::swap(i, j);
    auto &slot = terms_[{i, j}];
    slot = detail::checked_add(slot, c);
    if (slot == 0)
      terms_.erase({i, j});
  }

  QuadraticPolynomial &operator+=(const QuadraticPolynomial &o) {
    add_constant(o.constant_);
    for (const auto &[k, c] : o.terms_)
      add_term(k.first, k.second, c);
    return *this;
  }

  /// Value at the assignment `x` (x[i] in {0,1}).
  std::int64_t evaluate(std::span<const std::uint8_t> x) const {
    std::int64_t v = constant_;
    for (const auto &[k, c] : terms_)
      if (x[k.first] && x[k.second])
        v = detail::checked_add(v, c);
    return v;
  }

  friend bool operator==(const QuadraticPolynomial &,
                         const QuadraticPolynomial &) = default;

private:
  std::int64_t constant_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> terms_;
};

namespace detail {

/// Affine form c + s*x_i, with s = +1 for a positive literal and the
/// substitution x -> 1 - x for a negated one.
struct Affine {
  std::int64_t constant;
  std::int64_t slope;
  std::size_t index;
};

inline Affine literal_value(QLiteral l) {
  return l.negated ? Affine{1, -1, l.index} : Affine{0, 1, l.index};
}

/// Adds k * a * b to p.
inline void add_product(QuadraticPolynomial &p, std::int64_t k, const Affine &a,
                        const Affine &b) {
  p.add_constant(checked_mul(k, checked_mul(a.constant, b.constant)));
  p.add_term(a.index, a.index, checked_mul(k, checked_mul(a.slope, b.constant)));
  p.add_term(b.index, b.index, checked_mul(k, checked_mul(b.slope, a.constant)));
  p.add_term(a.index, b.index, checked_mul(k, checked_mul(a.slope, b.slope)));
}

inline void add_affine(QuadraticPolynomial &p, std::int64_t k, const Affine &a) {
  p.add_constant(checked_mul(k, a.constant));
  p.add_term(a.index, a.index, checked_mul(k, a.slope));
}

} // namespace detail

/// Penalty of a clause of width 1 or 2: the product of (1 - literal), which is
/// 1 - a - b + ab for (a or b) and 1 - x for (x). Zero iff the clause holds.
inline QuadraticPolynomial clause_penalty(std::span<const QLiteral> clause) {
  if (clause.empty() || clause.size() > 2)
    throw Error("clause_penalty needs a clause of width 1 or 2, got " +
                std::to_string(clause.size()));
  QuadraticPolynomial p;
  const auto a = detail::literal_value(clause[0]);
  if (clause.size() == 1) {
    p.add_constant(1);
    detail::add_affine(p, -1, a);
    return p;
  }
  if (clause[0].index == clause[1].index)
    throw Error("clause_penalty: repeated variable");
  const auto b = detail::literal_value(clause[1]);
  p.add_constant(1);
  detail::add_affine(p, -1, a);
  detail::add_affine(p, -1, b);
  detail::add_product(p, 1, a, b);
  return p;
}

/// (1 - 2a - 2b) r + a + b + ab with negated literals substituted as 1 - x.
/// Zero exactly when r = a or b, at least 1 elsewhere, at most 3.
inline QuadraticPolynomial reduction_gadget(QLiteral a, QLiteral b,
                                            std::size_t r) {
  if (a.index == b.index || a.index == r || b.index == r)
    throw Error("reduction_gadget: variables must be distinct");
  const auto av = detail::literal_value(a);
  const auto bv = detail::literal_value(b);
  const detail::Affine rv{0, 1, r};
  QuadraticPolynomial p;
  detail::add_affine(p, 1, rv);
  detail::add_product(p, -2, av, rv);
  detail::add_product(p, -2, bv, rv);
  detail::add_affine(p, 1, av);
  detail::add_affine(p, 1, bv);
  detail::add_product(p, 1, av, bv);
  return p;
}

/// CNF variable a QUBO index stands for.
struct OriginalVar {
  std::uint32_t cnf_variable;
  friend bool operator==(const OriginalVar &, const OriginalVar &) = default;
};
/// Fresh variable introduced while reducing clause `clause` (0-based), at
/// fold step `step` (0-based).
struct AuxiliaryVar {
  std::size_t clause;
  std::size_t step;
  friend bool operator==(const AuxiliaryVar &, const AuxiliaryVar &) = default;
};
using VariableOrigin = std::variant<OriginalVar, AuxiliaryVar>;

/// min over binary x of x^T Q x + c. Q is stored upper-triangular: Q[i][i] is
/// the linear coefficient of x_i and Q[i][j] (i < j) the full coefficient of
/// x_i x_j, so all entries stay integral.
class Qubo {
public:
  Qubo() = default;
  explicit Qubo(std::size_t n) : n_(n), q_(n * n, 0), origin_(n) {
    for (std::size_t i = 0; i < n; ++i)
      origin_[i] = OriginalVar{static_cast<std::uint32_t>(i + 1)};
  }

  static Qubo from_polynomial(const QuadraticPolynomial &p, std::size_t n) {
    Qubo q(n);
    q.offset_ = p.constant();
    for (const auto &[k, c] : p.terms()) {
      if (k.second >= n)
        throw Error("polynomial index beyond QUBO dimension");
      q.q_[k.first * n + k.second] = c;
    }
    return q;
  }

  std::size_t size() const { return n_; }
  std::int64_t offset() const { return offset_; }
  void set_offset(std::int64_t c) { offset_ = c; }

  /// Upper-triangular entry; entry(j, i) for i < j is 0.
  std::int64_t entry(std::size_t i, std::size_t j) const {
    return q_[i * n_ + j];
  }
  void set_entry(std::size_t i, std::size_t j, std::int64_t v) {
    if (i > j)
      throw Error("Qubo::set_entry expects i <= j");
    q_[i * n_ + j] = v;
  }
  /// Coefficient of x_i x_j (i != j) or of x_i (i == j), order-insensitive.
  std::int64_t coupling(std::size_t i, std::size_t j) const {
    return i <= j ? entry(i, j) : entry(j, i);
  }

  const std::vector<VariableOrigin> &variable_map() const { return origin_; }
  void set_origin(std::size_t i, VariableOrigin o) { origin_.at(i) = o; }

  std::size_t num_original() const {
    std::size_t k = 0;
    for (const auto &o : origin_)
      k += std::holds_alternative<OriginalVar>(o) ? 1 : 0;
    return k;
  }
  std::size_t num_auxiliary() const { return n_ - num_original(); }

  /// Penalty term counts recorded by cnf_to_qubo; bound the objective.
  std::size_t clause_terms() const { return clause_terms_; }
  std::size_t gadget_terms() const { return gadget_terms_; }
  void set_term_counts(std::size_t clauses, std::size_t gadgets) {
    clause_terms_ = clauses;
    gadget_terms_ = gadgets;
  }

  std::int64_t objective(std::span<const std::uint8_t> x) const {
    if (x.size() != n_)
      throw Error("assignment size does not match QUBO dimension");
    std::int64_t v = offset_;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!x[i])
        continue;
      for (std::size_t j = i; j < n_; ++j)
        if (x[j])
          v = detail::checked_add(v, q_[i * n_ + j]);
    }
    return v;
  }

  /// Bit i of `mask` is x_i. Requires n <= 64.
  std::int64_t objective_mask(std::uint64_t mask) const {
    std::int64_t v = offset_;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!((mask >> i) & 1U))
        continue;
      for (std::size_t j = i; j < n_; ++j)
        if ((mask >> j) & 1U)
          v += q_[i * n_ + j];
    }
    return v;
  }

  /// Projects a QUBO assignment onto CNF variables 1..num_cnf_vars.
  Assignment project(std::span<const std::uint8_t> x,
                     std::uint32_t num_cnf_vars) const {
    Assignment a(num_cnf_vars, 0);
    for (std::size_t i = 0; i < n_; ++i)
      if (const auto *o = std::get_if<OriginalVar>(&origin_[i]))
        a.at(o->cnf_variable - 1) = x[i];
    return a;
  }

private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> q_;
  std::int64_t offset_ = 0;
  std::vector<VariableOrigin> origin_;
  std::size_t clause_terms_ = 0;
  std::size_t gadget_terms_ = 0;
};

/// Calls fn(mask, value) for every assignment, walking a Gray code so each
/// step costs one O(n) update. Bit i of mask is x_i. Requires n <= 62.
template <typename Fn> void for_each_objective(const Qubo &q, Fn &&fn) {
  const std::size_t n = q.size();
  if (n > 62)
    throw BudgetError("objective sweep beyond 62 variables");
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::uint64_t x = 0;
  std::int64_t value = q.offset();
  fn(x, value);
  for (std::uint64_t g = 1; g < dim; ++g) {
    const auto i = static_cast<std::size_t>(std::countr_zero(g));
    std::int64_t field = q.entry(i, i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && ((x >> j) & 1U))
        field += q.coupling(i, j);
    value += ((x >> i) & 1U) ? -field : field;
    x ^= std::uint64_t{1} << i;
    fn(x, value);
  }
}

/// Objective value of every basis state, indexed by mask. Requires n <= 30.
inline std::vector<std::int64_t> objective_values(const Qubo &q) {
  if (q.size() > 30)
    throw BudgetError("objective table beyond 30 variables");
  std::vector<std::int64_t> out(std::size_t{1} << q.size());
  for_each_objective(q, [&](std::uint64_t x, std::int64_t v) { out[x] = v; });
  return out;
}

/// Sums clause penalties, folding wide clauses left to right through fresh
/// auxiliaries (r1 = L1 or L2, r2 = r1 or L3, ...) until two literals remain.
inline Qubo cnf_to_qubo(const CnfFormula &f) {
  QuadraticPolynomial total;
  std::size_t next = f.num_variables();
  std::vector<VariableOrigin> aux_origins;
  std::size_t gadgets = 0;

  for (std::size_t ci = 0; ci < f.clauses().size(); ++ci) {
    const auto &clause = f.clauses()[ci];
    std::vector<QLiteral> lits;
    lits.reserve(clause.width());
    for (const auto &l : clause.literals)
      lits.push_back({l.variable - 1U, l.negated});

    std::size_t step = 0;
    while (lits.size() > 2) {
      const std::size_t r = next++;
      aux_origins.push_back(AuxiliaryVar{ci, step++});
      total += reduction_gadget(lits[0], lits[1], r);
      ++gadgets;
      lits.erase(lits.begin());
      lits[0] = QLiteral{r, false};
    }
    total += clause_penalty(lits);
  }

  Qubo q = Qubo::from_polynomial(total, next);
  for (std::size_t k = 0; k < aux_origins.size(); ++k)
    q.set_origin(f.num_variables() + k, aux_origins[k]);
  q.set_term_counts(f.clauses().size(), gadgets);
  return q;
}

} // namespace qverify
