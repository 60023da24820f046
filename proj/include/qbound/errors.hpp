#pragma once

#include <stdexcept>
#include <string>

namespace qbound {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix fails a structural invariant (finite entries, Hermiticity, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

class NonPositiveWeight : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateSample : public Error {
 public:
  using Error::Error;
};

class ZeroNormError : public Error {
 public:
  using Error::Error;
};

class NotOrthonormal : public Error {
 public:
  using Error::Error;
};

/// A quantity that is real in exact arithmetic carried an imaginary part
/// (or a provably nonnegative quantity went negative) beyond tolerance.
class NumericalDefect : public Error {
 public:
  using Error::Error;
};

}  // namespace qbound
