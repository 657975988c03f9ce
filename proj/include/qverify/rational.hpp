/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qverify/error.hpp"

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

namespace qverify {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r))
    throw Error("integer overflow in coefficient arithmetic");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error("integer overflow in coefficient arithmetic");
  return r;
}

} // namespace detail

/// Exact rational with 64-bit numerator and positive denominator, always in
/// lowest terms.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value) {} // NOLINT: implicit by intent
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0)
      throw Error("rational with zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  bool is_integer() const { return den_ == 1; }

  std::string to_string() const {
    if (den_ == 1)
      return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational &a, const Rational &b) {
    const std::int64_t g = std::gcd(a.den_, b.den_);
    const std::int64_t lhs = detail::checked_mul(a.num_, b.den_ / g);
    const std::int64_t rhs = detail::checked_mul(b.num_, a.den_ / g);
    return {detail::checked_add(lhs, rhs),
            detail::checked_mul(a.den_, b.den_ / g)};
  }
  friend Rational operator-(const Rational &a) { return {-a.num_, a.den_}; }
  friend Rational operator-(const Rational &a, const Rational &b) {
    return a + (-b);
  }
  friend Rational operator*(const Rational &a, const Rational &b) {
    const std::int64_t g1 = std::gcd(a.num_, b.den_);
    const std::int64_t g2 = std::gcd(b.num_, a.den_);
    const std::int64_t s1 = g1 == 0 ? 1 : g1;
    const std::int64_t s2 = g2 == 0 ? 1 : g2;
    return {detail::checked_mul(a.num_ / s1, b.num_ / s2),
            detail::checked_mul(a.den_ / s2, b.den_ / s1)};
  }
  friend Rational operator/(const Rational &a, const Rational &b) {
    if (b.num_ == 0)
      throw Error("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }
  Rational &operator+=(const Rational &o) { return *this = *this + o; }
  Rational &operator-=(const Rational &o) { return *this = *this - o; }
  Rational &operator*=(const Rational &o) { return *this = *this * o; }

  friend bool operator==(const Rational &, const Rational &) = default;
  friend std::strong_ordering operator<=>(const Rational &a,
                                          const Rational &b) {
    // Cross-multiplication in 128 bits cannot overflow for 64-bit operands.
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs)
      return std::strong_ordering::less;
    if (lhs > rhs)
      return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream &operator<<(std::ostream &os, const Rational &r) {
    return os << r.to_string();
  }

private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

} // namespace qverify
