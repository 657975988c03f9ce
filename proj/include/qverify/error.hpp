/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include <stdexcept>
#include <string>

namespace qverify {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed DIMACS text or an invalid formula.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Exhaustive work or a size cap was requested beyond its configured limit.
class BudgetError : public Error {
public:
  using Error::Error;
};

/// The external model checker could not be found or started.
class CheckerUnavailable : public Error {
public:
  using Error::Error;
};

/// The external model checker ran but produced nothing usable.
class CheckerError : public Error {
public:
  using Error::Error;
};

} // namespace qverify
