#pragma once

#include <stdexcept>
#include <string>

namespace vtmap {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failures caused by the numbers themselves (domain, overflow floor,
/// non-finite samples). The CLI maps these to exit status 2.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Failures caused by an inconsistent request (wrong regime for a map,
/// missing profile data, malformed sample arrays). The CLI maps these to
/// exit status 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Strip half-width below the double-precision floor.
class AlphaFloorViolation : public DomainError {
 public:
  explicit AlphaFloorViolation(double alpha)
      : DomainError("alpha = " + std::to_string(alpha) +
                    " is below the double-precision floor 0.005"),
        alpha_(alpha) {}

  double alpha() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// Ellipse-parameter request for a point lying on [-1, 1].
class DegeneratePoint : public DomainError {
 public:
  using DomainError::DomainError;
};

class NonFiniteSample : public NumericError {
 public:
  using NumericError::NumericError;
};

class BracketFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

class InvalidLength : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class IncompatibleRegime : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class MissingProfileField : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace vtmap
