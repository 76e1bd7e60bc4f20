#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace fermat {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise out-of-domain numeric input.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A constructor or operation was given parameters that violate its side conditions.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A formula hit a vanishing denominator.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Context construction (root finding) failed.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// The supplied data does not satisfy the functional relation a certificate requires.
class NotASolutionError : public Error {
 public:
  using Error::Error;
};

/// A shift constant matched none of the three admissible cases.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

/// A contour passes through, or encloses too many, singularities.
class ContourError : public Error {
 public:
  using Error::Error;
};

/// An argument-principle count did not land on an integer.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

/// z^n by repeated squaring (n >= 0).
inline Complex ipow(Complex z, int n) {
  Complex result(1.0, 0.0);
  while (n > 0) {
    if (n & 1) {
      result *= z;
    }
    n >>= 1;
    if (n > 0) {
      z *= z;
    }
  }
  return result;
}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace fermat
