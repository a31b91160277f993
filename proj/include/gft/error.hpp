#pragma once

#include <stdexcept>
#include <string>

namespace gft {

/// Base class for all recoverable library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The input graph violates a structural requirement (self-loop,
/// disconnected, aggregate too large for a local basis).
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Malformed text or binary input.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A coefficient vector, payload or plan file does not match the plan it
/// is being used with.
class ChecksumError : public Error {
 public:
  using Error::Error;
};

}  // namespace gft
