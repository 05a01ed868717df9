#pragma once

#include <stdexcept>
#include <string>

// Exception hierarchy. ValidationError carries the name of the first violated
// parameter invariant; the remaining types mark numerical or analysis failures
// so callers can map them to stable process exit codes.

namespace optospring {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter invariant violation; invariant() returns a stable name such as
// "NonPositiveMass" or "OvercoupledExceedsTotal".
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, const std::string& msg)
      : Error(invariant + ": " + msg), invariant_(std::move(invariant)) {}
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

// Configuration document problems (unknown key, missing field, bad value).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Evaluation requested at omega = 0 where chi_m and the SQL diverge.
class ZeroFrequency : public Error {
 public:
  using Error::Error;
};

// |M(omega)| fell below the pole floor near the undamped optical-spring
// resonance on the real axis.
class PoleAtOpticalSpring : public Error {
 public:
  using Error::Error;
};

// Dip model called with parameters outside its domain.
class InvalidModelParams : public Error {
 public:
  using Error::Error;
};

// Optimizer hit its iteration or step limits without meeting tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// Fit band contains no strict interior minimum of the data.
class DegenerateBand : public Error {
 public:
  using Error::Error;
};

// Too few data points for the requested fit.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace optospring
