#pragma once

#include <stdexcept>
#include <string>

namespace shiftforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was not met; the operation refuses to run.
/// The CLI maps these to exit status 2.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A configured size cap (pattern list, node budget, window size) was hit.
class CapExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Malformed or inconsistent input data (JSON files, tokens, indices).
class InputError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace shiftforge
