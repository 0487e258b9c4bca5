#pragma once

#include <stdexcept>
#include <string>

namespace eulercalc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A violated precondition or a mathematical hypothesis failure.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Fixed-width arithmetic would have wrapped.
class OverflowError : public DomainError {
public:
  OverflowError() : DomainError("integer overflow in exact arithmetic") {}
};

/// Malformed input files, unreadable paths, schema violations.
class FormatError : public Error {
public:
  using Error::Error;
};

}  // namespace eulercalc
