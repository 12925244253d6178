#pragma once

#include <stdexcept>
#include <string>

namespace cssaut {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together (lengths, degrees, matrix sizes).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the mathematical content of an input was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An enumeration or search would exceed its configured budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A requested construction does not exist for the given data.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// The inputs fall outside what an operation handles, e.g. a hypothesis
/// that the construction relies on does not hold.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `line` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cssaut
