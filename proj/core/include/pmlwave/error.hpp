#pragma once

#include <stdexcept>
#include <string>

namespace pmlwave {

/// Base class for every exception raised by pmlwave.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Scaled arithmetic cancelled below the trusted relative precision.
class PrecisionLoss : public Error {
 public:
  using Error::Error;
};

/// A quadrature error estimate exceeded its budget.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration (bad key, bad value, violated precondition).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Time stepping produced non-finite values.
class NumericalAbort : public Error {
 public:
  NumericalAbort(const std::string& what, long step)
      : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  long step() const noexcept { return step_; }

 private:
  long step_;
};

}  // namespace pmlwave
