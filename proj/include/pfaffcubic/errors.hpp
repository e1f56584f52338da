#pragma once

#include <stdexcept>
#include <string>

namespace pfc {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero, tower mismatch, invalid tower level.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// Dimension or variable-set mismatch between operands.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A precondition or genericity requirement of a named stage does not hold.
class PreconditionError : public Error {
 public:
  PreconditionError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace pfc
