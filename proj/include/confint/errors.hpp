#pragma once

#include <stdexcept>
#include <string>

namespace confint {

/// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text, JSON or Gauss-code input. Carries an optional 1-based line.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// An operation was called with arguments violating its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Enumeration or computation refused because a size guard was exceeded.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

/// A sample or geometric object is degenerate (coincident points, failed
/// embedding check, non-regular projection).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace confint
