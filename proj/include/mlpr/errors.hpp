// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace mlpr {

/// Base class for all mlpr errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension mismatch between operands.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Data fails a structural invariant (negativity, column sums, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Bad scalar parameter (alpha out of range, gamma outside [0,1], ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// proj(z) with max(z,0) identically zero; signals solver divergence.
class DegenerateProjectionError : public Error {
 public:
  using Error::Error;
};

/// LU pivot at working precision; the linear system cannot be solved.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Extrapolation coefficient sum vanished; the window cannot be combined.
class ExtrapolationSingularError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, long line)
      : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  explicit ParseError(const std::string& msg) : ParseError(msg, 0) {}

  long line() const noexcept { return line_; }

 private:
  long line_ = 0;
};

}  // namespace mlpr
