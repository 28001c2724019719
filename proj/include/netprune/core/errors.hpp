#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netprune {

/// Base of every error raised by the library. Argument-level misuse uses
/// std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (CSV record, query, config). Carries a 1-based line
/// and, where meaningful, a 1-based character position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t position = 0)
      : Error(format(what, line, position)), line_(line), position_(position) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t position() const noexcept { return position_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t position) {
    std::string out = "line " + std::to_string(line);
    if (position != 0) out += ", position " + std::to_string(position);
    return out + ": " + what;
  }

  std::size_t line_;
  std::size_t position_;
};

/// A field was well formed but did not parse as its declared kind.
class TypeError : public ParseError {
 public:
  using ParseError::ParseError;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A planner or algorithm configuration violates a precondition.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Construct is recognised but deliberately not supported by any pruning
/// algorithm (e.g. HAVING SUM(x) < c).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// A switch pipeline constraint was violated at runtime. This is a bug in a
/// stage program, never a data-dependent condition.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace netprune
