#pragma once

#include <stdexcept>
#include <string>

namespace ellchar {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violated an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An enumeration or construction would exceed a configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A structural invariant failed verification (d^2 != 0, a non-homomorphism, ...).
class CheckFailed : public Error {
 public:
  using Error::Error;
};

/// Exact integer arithmetic left the 64-bit range.
class Overflow : public Error {
 public:
  using Error::Error;
};

}  // namespace ellchar
