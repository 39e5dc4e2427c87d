#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace presym {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unsupported input (bad expression, non-quadratic Lagrangian,
/// incompatible transformation data).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : InputError(message + " at line " + std::to_string(line) + ", column " +
                   std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A denominator vanished, either identically or at an evaluation point.
class ZeroDenominator : public InputError {
 public:
  using InputError::InputError;
};

/// A constraint reduced to a nonzero constant: the equations have no solution.
class InconsistentDynamics : public Error {
 public:
  using Error::Error;
};

/// The weak-vanishing decision procedure could neither prove nor refute.
class IndeterminateResult : public Error {
 public:
  using Error::Error;
};

}  // namespace presym
