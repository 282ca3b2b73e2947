#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace gft {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document; `position` is a byte offset when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position = 0)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A parameter violates a documented constraint (m <= -1, a <= 0, ...).
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Pointwise evaluation outside the function's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Frequency outside the region of convergence.
class RegionError : public Error {
 public:
  using Error::Error;
};

/// Evaluation exactly at a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Term or atom the requested operation cannot represent.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or series did not meet its tolerance; carries the partial estimate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> partial = {},
                   double error_estimate = 0.0)
      : Error(what), partial_(partial), error_estimate_(error_estimate) {}
  std::complex<double> partial() const noexcept { return partial_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  std::complex<double> partial_;
  double error_estimate_;
};

/// The sigma -> 0 limit is distributional (or does not exist as a function).
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Input data failed a validation check (e.g. a pdf that does not integrate to one).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Degenerate equation (zero characteristic polynomial, b0 = 0, ...).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace gft
