#pragma once

#include <stdexcept>
#include <string>

namespace finsler {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested derivative order exceeds what the engine supports.
class OrderTooHigh : public Error {
 public:
  using Error::Error;
};

/// A point lies off the slit tangent bundle, or a stencil would cross y = 0.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The fundamental tensor is not invertible (condition estimate above 1e12).
class SingularMetric : public Error {
 public:
  using Error::Error;
};

class UnknownMetric : public Error {
 public:
  using Error::Error;
};

class BadParams : public Error {
 public:
  using Error::Error;
};

/// Malformed energy expression. Carries the 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(message + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class UnknownIdentifier : public ParseError {
 public:
  using ParseError::ParseError;
};

class DimensionMismatch : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace finsler
