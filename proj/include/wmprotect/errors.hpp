#pragma once

#include <stdexcept>
#include <string>

namespace wmp {

// Base for every error raised by the library. Each subclass corresponds to one
// failure category that callers (and the CLI exit-code mapping) distinguish.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter lies outside its admissible interval (e.g. p outside [0, 1]).
class RangeError : public Error {
 public:
  using Error::Error;
};

// A wire or basis index does not exist.
class IndexError : public Error {
 public:
  using Error::Error;
};

// A matrix expected to be positive semidefinite has a clearly negative eigenvalue.
class NotPSD : public Error {
 public:
  using Error::Error;
};

// Normalization was requested for a branch whose trace vanishes.
class ZeroTrace : public Error {
 public:
  using Error::Error;
};

// A strength of exactly 0 or 1 reached a construction that divides by b or a.
class DegenerateStrength : public Error {
 public:
  using Error::Error;
};

// Operator norm exceeds one, so no unitary dilation exists.
class NotContraction : public Error {
 public:
  using Error::Error;
};

// A matrix or state violates a structural invariant (shape, hermiticity, trace).
class InvalidState : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Frontier search cannot reach the requested fidelity for w < 1.
class Unreachable : public Error {
 public:
  using Error::Error;
};

}  // namespace wmp
