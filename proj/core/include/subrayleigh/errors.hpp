#pragma once

#include <stdexcept>
#include <string>

namespace subrayleigh {

// Recoverable failures surfaced to the command line, one class per exit code.
// Contract violations (wrong aperture kind, count mismatch, ...) use the
// standard std::invalid_argument / std::domain_error instead.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed, unknown or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Quadrature non-convergence or a signal too short to analyse.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace subrayleigh
