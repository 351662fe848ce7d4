#pragma once

#include <stdexcept>
#include <string>

namespace xduct {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid physical parameters, drive specification or user input.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration file. The message names the offending key.
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A requested port label does not exist in the port layout.
class UnknownPortError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical failure inside a solver (singular system, bad step size, ...).
class SolverError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Steady-state amplitude denominator vanishes (undamped, resonantly driven cavity).
class SingularAmplitudeError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Half-step comparison of the classical ODE integration exceeded its tolerance.
class StepSizeError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// A root bracket or crossing search found no sign change.
class NoCrossingError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace xduct
