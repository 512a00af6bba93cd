#pragma once

#include <stdexcept>
#include <string>

namespace idsec {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad arguments or malformed input data. CLI exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure inside a solver. CLI exit code 2.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Census is empty or carries no positive mass.
class DegenerateCensusError : public InputError {
 public:
  using InputError::InputError;
};

/// A parameter is outside its documented range.
class InvalidParameterError : public InputError {
 public:
  using InputError::InputError;
};

/// Two containers that must align per degree have different lengths.
class DimensionMismatchError : public InputError {
 public:
  using InputError::InputError;
};

/// An iteration failed to bracket or converge.
class SolverDivergedError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Internalized exposure is not strictly increasing, so the modified game
/// does not identify the social optimum.
class NonMonotoneInternalizationError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// An exhaustive search would exceed its evaluation budget.
class BudgetExceededError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace idsec
