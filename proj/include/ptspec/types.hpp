#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace ptspec {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Special-function failures.
class PoleError : public Error { using Error::Error; };
class ConvergenceError : public Error { using Error::Error; };
class BranchError : public Error { using Error::Error; };

// Model evaluation and parameter validation.
class EvalError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class NoRootError : public Error { using Error::Error; };

// Numerical scattering oracle.
class DecayError : public Error { using Error::Error; };
class OverflowError : public Error { using Error::Error; };

class LinkingError : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Throws EvalError naming `what` when `z` has a NaN or infinite component.
inline Complex require_finite(Complex z, const char* what) {
  if (!is_finite(z)) throw EvalError(std::string("non-finite value in ") + what);
  return z;
}

}  // namespace ptspec
