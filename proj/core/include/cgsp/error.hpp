#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cgsp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad parameters or mismatched inputs supplied by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested correlation triple cannot be realized by any jointly
/// Gaussian stationary pair (indefinite spectrum or coherence above one).
class InfeasibleTarget : public Error {
 public:
  using Error::Error;
};

/// A numerical self-check failed (imaginary residue, quadrature divergence).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Power-law fit refused because an estimate inside the range is not positive.
class FitError : public Error {
 public:
  FitError(const std::string& what, std::size_t lag) : Error(what), lag_(lag) {}
  std::size_t lag() const noexcept { return lag_; }

 private:
  std::size_t lag_;
};

}  // namespace cgsp
