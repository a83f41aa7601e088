#pragma once

#include <stdexcept>
#include <string>

namespace ohmic {

/// Physical parameters outside the supported (underdamped, T >= 0) regime.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The Green's function prefactor diverges where a2(t) = 0.
class CausticError : public std::domain_error {
 public:
  CausticError(const std::string& what, double nearest_valid_t)
      : std::domain_error(what), nearest_valid_t_(nearest_valid_t) {}
  double nearest_valid_t() const noexcept { return nearest_valid_t_; }

 private:
  double nearest_valid_t_;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double value, double error_estimate)
      : std::runtime_error(what), value_(value), error_estimate_(error_estimate) {}
  double value() const noexcept { return value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double value_;
  double error_estimate_;
};

/// Time-stepping resolution requirements violated (checked before any work).
class StepSizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ohmic
