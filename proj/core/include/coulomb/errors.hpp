#pragma once

#include <stdexcept>
#include <string>

namespace coulomb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested evaluation sits on a genuine singularity of the T-matrix
/// (zero momentum transfer or a bound-state pole).
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// A representation was requested for a Coulomb parameter it does not cover.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or series failed to reach the requested accuracy. Carries the
/// best estimate available when the budget ran out.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best_estimate, double error_estimate)
      : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace coulomb
