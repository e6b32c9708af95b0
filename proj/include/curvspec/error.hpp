#pragma once

#include <stdexcept>
#include <string>

namespace curvspec {

/// Base class of everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (rationals, group files, CLI values).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A structural invariant of a group or label does not hold.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested a case that is deliberately not implemented.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A floating-point sum that must be an integer was not close to one.
class IntegralityError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvspec
