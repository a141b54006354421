#pragma once

#include <stdexcept>
#include <string>

namespace rlmoc {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed instance file or unparsable input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration: bad objective list, slack outside the feasible
// range, size caps exceeded, out-of-range ids.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The instance does not admit the structure a makeshift needs (no edge
// cover, no saturating matching, k larger than the number of atoms).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// An objective or estimate is undefined on this input (empty Blue set,
// fewer experts than blocks).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace rlmoc
