#pragma once

#include <stdexcept>
#include <string>

namespace nmsqueeze {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the operation's domain (n < 2, mismatched sizes, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Exponent would leave double-precision range.
class OverflowGuard : public Error {
 public:
  using Error::Error;
};

/// A numerical self-check failed (imaginary residue, eigensolver, quadrature order, truncation).
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace nmsqueeze
