#pragma once

#include <stdexcept>
#include <string>

namespace railrisk {

// Base class for everything thrown by this library. Callers that do not care
// about the specific failure can catch this one type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid arguments or values while building an object: wrong table length,
// negative or non-finite probabilities, out-of-range months, bad schedules.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Two factors disagree about a variable (same name, different state list), or
// an operation names a variable that is not in scope.
class ScopeError : public Error {
 public:
  using Error::Error;
};

// Evidence refers to an unknown variable or state, or collides with the query.
class EvidenceError : public Error {
 public:
  using Error::Error;
};

// A distribution was required but the total mass is zero, or a ratio has a
// zero denominator.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Conditioning on an evidence assignment that has zero probability under the
// model. The message names the offending evidence set.
class ImpossibleEvidenceError : public DegenerateError {
 public:
  using DegenerateError::DegenerateError;
};

// Graph or network structure problems: unknown endpoints, duplicate edges,
// missing or mismatched CPTs.
class StructureError : public Error {
 public:
  using Error::Error;
};

// The edge set contains a directed cycle.
class CycleError : public StructureError {
 public:
  using StructureError::StructureError;
};

// A conditional probability table is invalid, e.g. a row that does not sum
// to one. The message names the vertex and the offending parent assignment.
class CptError : public StructureError {
 public:
  using StructureError::StructureError;
};

// Estimation cannot proceed, e.g. a conditional is undefined because a cell
// has no exposures and no smoothing was requested.
class FitError : public Error {
 public:
  using Error::Error;
};

// Input data contradicts the configuration it is paired with: a break
// outside the schedule period, or more breaks in a cell than the schedule
// allows exposures.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

// Malformed input data. Carries the 1-based line number of the offending row.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// File could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// A model or config file does not match the expected JSON layout or version.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace railrisk
