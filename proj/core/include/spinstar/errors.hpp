#pragma once

#include <stdexcept>
#include <string>

namespace spinstar {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: wrong lengths, bad indices, non-finite values.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Exchange-symmetry precondition of the reduction is violated.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

// A formula was evaluated outside its domain (e.g. division by e = 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Request exceeds the size an operation is willing to allocate.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// The (a, d) quadratic has no real solution for the supplied e.
class NoRealDesignError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinstar
