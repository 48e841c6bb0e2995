#pragma once

#include <stdexcept>
#include <string>

namespace auxetica {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Input outside the mathematical domain of an operation (e.g. square root of
/// an indefinite matrix).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class GeneratorStalled : public Error {
 public:
  using Error::Error;
};

class NoAuxeticDirection : public Error {
 public:
  using Error::Error;
};

class StepFailure : public Error {
 public:
  StepFailure(const std::string& what, double tau) : Error(what), tau_(tau) {}
  double tau() const { return tau_; }

 private:
  double tau_;
};

class ComplexNodes : public Error {
 public:
  using Error::Error;
};

class VersionMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace auxetica
