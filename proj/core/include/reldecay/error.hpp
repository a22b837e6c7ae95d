#pragma once

/// Exception hierarchy shared by every reldecay module.

#include <complex>
#include <stdexcept>
#include <string>

namespace reldecay {

/// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (non-finite input,
/// negative mass, superluminal speed).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid model parameters (Gamma <= 0, M <= mu0, empty scan grids, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of a numerical routine was not met.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A quadrature failed to reach its tolerance. Carries the best estimate that
/// was obtained and its error bound.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> estimate,
                   double error_bound)
      : Error(what), estimate_(estimate), error_bound_(error_bound) {}

  std::complex<double> estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  std::complex<double> estimate_;
  double error_bound_;
};

}  // namespace reldecay
