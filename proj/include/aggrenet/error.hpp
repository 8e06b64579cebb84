#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aggrenet {

/// Base class for every domain error raised by the toolkit. The CLI maps
/// these to exit status 1; anything else is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParseErrorKind {
  MalformedHeader,
  FieldCount,
  NonNumericField,
  CountMismatch,
  BadMagic,
  SelfLoop,
  DuplicateArc,
  NodeOutOfRange,
  NegativeCost,
  NonPositiveCapacity,
  NonPositiveDemand,
  SameOriginDestination,
};

std::string_view to_string(ParseErrorKind kind);

/// Instance or aggregation text that does not follow the expected layout.
/// `line` is 1-based; 0 means the error is not tied to a single line.
class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

class MpsError : public Error {
 public:
  MpsError(std::size_t line, const std::string& detail);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class Unreachable : public Error {
 public:
  Unreachable(int from, int to, int commodity = -1);
  int from() const { return from_; }
  int to() const { return to_; }
  /// Commodity index, or -1 when the query was a bare node pair.
  int commodity() const { return commodity_; }

 private:
  int from_, to_, commodity_;
};

class InfeasibleParameters : public Error {
 public:
  using Error::Error;
};

class InvalidAggregation : public Error {
 public:
  using Error::Error;
};

class AggregationMismatch : public Error {
 public:
  using Error::Error;
};

class DuplicateName : public Error {
 public:
  explicit DuplicateName(const std::string& name)
      : Error("duplicate name '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class MissingVariable : public Error {
 public:
  explicit MissingVariable(const std::string& name)
      : Error("assignment has no value for variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class NonPositiveBase : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown inside the simplex (singular basis after refactor,
/// runaway primal drift).
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace aggrenet
