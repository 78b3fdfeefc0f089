#pragma once

#include <stdexcept>
#include <string>

namespace mlosc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// series exhausted max_terms before the tail bound was met
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// parameter pair outside the range an operation is defined for
class RegimeError : public Error {
 public:
  using Error::Error;
};

// argument outside the supported axes / radius
class UnsupportedRegion : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class UnsupportedDerivative : public Error {
 public:
  using Error::Error;
};

// singular-kernel quadrature failed to settle under refinement
class SingularityFailure : public Error {
 public:
  using Error::Error;
};

class UnknownTheorem : public Error {
 public:
  using Error::Error;
};

class MissingStat : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class NonPositiveValue : public Error {
 public:
  using Error::Error;
};

class HypothesisFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// a NaN/Inf tried to escape an operation
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace mlosc
