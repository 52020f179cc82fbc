#pragma once

#include <stdexcept>

namespace gadgetlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments, violated preconditions, non-Hermitian inputs.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class HypothesisViolation : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Results that depend on an arbitrary choice at the current precision,
// e.g. an eigenvalue sitting on a spectral cutoff.
class NumericalAmbiguity : public Error {
 public:
  using Error::Error;
};

class RankMismatch : public NumericalAmbiguity {
 public:
  using NumericalAmbiguity::NumericalAmbiguity;
};

}  // namespace gadgetlab
