#pragma once

#include <stdexcept>
#include <string>

namespace clevy {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid model or scenario parameters (maps to CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an identity is violated, e.g. running
// Itô formula I with an infinite first absolute moment.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Caller broke an API contract (window too small, wrong kernel class, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Quadrature did not converge or produced a non-finite value.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Evaluation requested exactly at a kernel singularity.
class SingularPointError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Requested quantity is not available for this kernel or measure.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// A Monte Carlo functional returned a non-finite value on some path.
class PoisonedEstimateError : public Error {
 public:
  using Error::Error;
};

}  // namespace clevy
