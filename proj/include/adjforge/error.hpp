#pragma once

#include <stdexcept>
#include <string>

namespace adjforge {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An operation outside the representable class (e.g. division by a sum).
class UnsupportedOperation : public Error {
public:
  using Error::Error;
};

/// Inconsistent configuration: mismatched truncation orders, circular solved forms, ...
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A precondition on an argument does not hold.
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// evaluate() met an atom or parameter without a value.
class UnboundAtom : public Error {
public:
  using Error::Error;
};

/// A mathematical consistency check failed (e.g. H not divisible by eps).
class InconsistencyError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string &msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line),
        column_(column) {}
  /// Keeps `text` verbatim, for messages already carrying a location prefix.
  ParseError(const std::string &text, int line, int column, bool) : Error(text), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

} // namespace adjforge
