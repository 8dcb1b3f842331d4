#pragma once

#include <stdexcept>
#include <string>

namespace cpalab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or dimensions of the operands do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A family or algebra was requested outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Gaussian elimination met an entry that still depends on parameters.
class ParameterInEliminationError : public Error {
 public:
  using Error::Error;
};

/// Leading-term reduction needs a constant leading coefficient.
class ReductionUndefinedError : public Error {
 public:
  using Error::Error;
};

/// The basis of a filiform algebra is not adapted ([e1,ei] = e(i+1)).
class AdaptedBasisError : public Error {
 public:
  using Error::Error;
};

class NotAnIdealError : public Error {
 public:
  using Error::Error;
};

/// No (u, psi) decomposition exists for a nilpotent derivation.
class DecompositionFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed polynomial text or document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition on its inputs does not hold (e.g. matching
/// unresolved branches).
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

}  // namespace cpalab
