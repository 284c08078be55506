#pragma once

#include <stdexcept>
#include <string>

namespace polytree {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (dimension mismatch, bad table, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// Unreadable file contents; the message names the offending field or line.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Invalid combination of options, e.g. a G-test oracle on an exact source.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The random model generator ran out of attempts.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// A library invariant was violated. Indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace polytree
