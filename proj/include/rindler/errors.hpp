#pragma once

#include <stdexcept>
#include <string>

namespace rindler {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (x <= 0, a <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of budget before meeting its tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double partial_value, double error_estimate)
      : Error(what), partial_value_(partial_value), error_estimate_(error_estimate) {}

  double partial_value() const noexcept { return partial_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double partial_value_;
  double error_estimate_;
};

/// A regulator extrapolation (epsilon -> 0) did not behave like a convergent limit,
/// or two routes that must agree inside an oracle did not.
class OracleError : public Error {
 public:
  using Error::Error;
};

/// Output could not be written (checked before any computation starts).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rindler
