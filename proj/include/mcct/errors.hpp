#pragma once

#include <stdexcept>
#include <string>

namespace mcct {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data violates a construction invariant (bad probabilities, bad rows,
// out-of-range parameters).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Rate matrix violates a generator invariant.
class InvalidGeneratorError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonErgodicError : public Error {
 public:
  using Error::Error;
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, long iterations)
      : Error(what), iterations_(iterations) {}
  long iterations() const { return iterations_; }

 private:
  long iterations_ = 0;
};

class ZeroStationaryMassError : public Error {
 public:
  using Error::Error;
};

// The supplied distribution is not stationary for the chain.
class NonStationaryError : public Error {
 public:
  using Error::Error;
};

class NotReversibleError : public Error {
 public:
  using Error::Error;
};

// Spectral expansion is 1 (or treated as 1); the dependent quantity is
// undefined or vacuous.
class DegenerateGapError : public Error {
 public:
  using Error::Error;
};

// A randomized inequality check found a violating witness.
class CheckFailedError : public Error {
 public:
  using Error::Error;
};

class InvalidRError : public Error {
 public:
  using Error::Error;
};

class TooLargeError : public Error {
 public:
  using Error::Error;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

class IterationCapError : public Error {
 public:
  using Error::Error;
};

class EpsilonTooLargeError : public Error {
 public:
  using Error::Error;
};

class AbsorbingStateError : public Error {
 public:
  using Error::Error;
};

// Line-oriented chain file could not be parsed.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}
  int line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  int line_;
  std::string reason_;
};

}  // namespace mcct
