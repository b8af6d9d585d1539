#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace coe {

/// Base class for every numerical failure raised by the library.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A denominator Pochhammer symbol hits a non-positive integer.
class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A power series is evaluated outside its disc of convergence.
class DivergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A double series is evaluated outside (or on the boundary of) its region
/// of convergence. `condition()` names the test that failed.
class RegionError : public NumericalError {
 public:
  RegionError(std::string condition, const std::string& what)
      : NumericalError(what), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// Iteration, term or panel budget exhausted before the tolerance was met.
class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Cancellation in an extended-precision sum consumed too many bits.
class PrecisionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace coe
