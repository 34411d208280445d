#pragma once

#include <stdexcept>
#include <string>

namespace landscape {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid grid, field shape, staircase or path handed to a constructor.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Off-grid coordinate or out-of-range line.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Operation called outside its mathematical domain (y < x, s >= t, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A scaled endpoint fell outside the simulated window.
class WindowError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace landscape
