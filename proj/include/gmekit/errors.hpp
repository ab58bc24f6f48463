#pragma once

#include <stdexcept>
#include <string>

namespace gmekit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed something the operation's precondition rules out.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Subsystem count or dimensions unusable for the requested operation.
class InvalidShape : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Input exceeds one of the desk-scale guards (Bell-number or dimension).
class SizeLimitError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A coarsening precondition between two partitions does not hold.
class RelationError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Malformed text input (partition strings, JSON documents, flags).
class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& what, int line = 0)
      : InvalidArgument(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A state violates normalization, hermiticity, trace or positivity.
class StateInvariantError : public Error {
 public:
  StateInvariantError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace gmekit
