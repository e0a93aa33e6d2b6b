#pragma once

#include <stdexcept>
#include <string>

namespace kinetic {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition, invalid configuration, or malformed input.
// CLI maps these to the input-error exit status.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Polynomial arithmetic produced a degree beyond the working cap; the
// scenario is mis-specified rather than the computation unstable.
class DegreeOverflowError : public ContractError {
 public:
  using ContractError::ContractError;
};

// Root isolation received the identically-zero polynomial. Callers that can
// legitimately see a constant function must branch before asking for roots.
class EverywhereZeroError : public ContractError {
 public:
  using ContractError::ContractError;
};

// A query was asked under a metric it does not support.
class UnsupportedMetricError : public ContractError {
 public:
  using ContractError::ContractError;
};

// The requested approximation cannot meet its error bound within the degree
// cap; shrink the horizon or relax the bound.
class ApproximationInfeasibleError : public ContractError {
 public:
  using ContractError::ContractError;
};

// A numerical procedure failed to converge. Carries the interval it was
// working on when it gave up. CLI maps these to the numerical-failure status.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double lo, double hi)
      : Error(what), lo_(lo), hi_(hi) {}

  double interval_lo() const noexcept { return lo_; }
  double interval_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace kinetic
