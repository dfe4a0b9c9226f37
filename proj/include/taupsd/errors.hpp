#pragma once

#include <stdexcept>
#include <string>

namespace taupsd {

// Every failure raised by the library derives from Error so callers can
// catch the whole family; the subclasses mirror the contract categories.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite input or argument outside the mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Mismatched dimensions or non-square matrices.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A derivative order was requested beyond what the symbol provides.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// The endomorphism does not lie in the class a construction requires.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A theorem check was refused because its hypotheses do not hold.
class HypothesisError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Unknown corpus entry or preset name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Numerical routine failed (e.g. SVD did not converge).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Configuration / command-line problems; `what()` carries the field path.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace taupsd
