#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace wreath {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input violates an operation's precondition (bad argument, wrong prime,
// non-p-group, trivial group, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A configured resource limit (bit budget, size cap) would be exceeded.
// Raised before any wrong answer can be produced.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A construction would exceed a size cap. Carries the size that was asked
// for so callers can fall back to formula-only evaluation.
class SizeCapError : public ResourceError {
 public:
  SizeCapError(const std::string& message, std::string would_be_size)
      : ResourceError(message), would_be_size_(std::move(would_be_size)) {}

  const std::string& would_be_size() const noexcept { return would_be_size_; }

 private:
  std::string would_be_size_;
};

// A group or table violates a structural invariant (corrupted Cayley table,
// failed internal consistency assertion).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Group-spec text could not be parsed. `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace wreath
