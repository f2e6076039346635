#pragma once

#include <stdexcept>
#include <string>

namespace lopat {

// Base of every error raised by the library. Precondition violations on
// plain arguments (negative resolution, zero direction, ...) are reported
// as std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// State outside the system's admissible set (e.g. rho <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Complex eigenvalues or missing eigenvectors of the symbol.
class HyperbolicityError : public Error {
 public:
  using Error::Error;
};

// A mode required to be simple is not.
class MultiplicityError : public Error {
 public:
  using Error::Error;
};

// Newton continuation of the Rankine-Hugoniot system failed.
class ContinuationError : public Error {
 public:
  using Error::Error;
};

// Shock is not a Lax shock of the requested family.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

// A characteristic speed is (numerically) zero at one of the shock states.
class MarginalShockError : public Error {
 public:
  using Error::Error;
};

// DF_1 is singular or nearly so.
class CharacteristicBoundaryError : public Error {
 public:
  using Error::Error;
};

// Subspace dimensions do not add up.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// U+ == U-.
class DegenerateShockError : public Error {
 public:
  using Error::Error;
};

// The linear wave block is not supersonic with respect to the base state.
class TuningError : public Error {
 public:
  using Error::Error;
};

// Golden-section bracket does not enclose a minimum.
class BracketError : public Error {
 public:
  using Error::Error;
};

}  // namespace lopat
