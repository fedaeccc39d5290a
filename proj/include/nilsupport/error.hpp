#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilsupport {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or fields of operands do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Bad field specification (p not prime, reducible modulus, m out of range).
class FieldError : public Error {
 public:
  using Error::Error;
};

/// A polynomial entry exceeded the degree cap of a non-truncating ring.
class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

/// An operator expected to satisfy X^p = 0 does not.
class NotNilpotent : public Error {
 public:
  using Error::Error;
};

/// Candidate tuple violates the commuting p-nilpotent equations.
class InvalidTuple : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Subspace is not stable under the operator it was paired with.
class NotInvariant : public Error {
 public:
  using Error::Error;
};

/// Evaluation of a module containing dual/adjoint constructors without an inverse.
class MissingInverse : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search would exceed the configured candidate budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A computed object failed an invariant that holds mathematically; signals a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Module-expression syntax error. `offset()` is the 1-based byte position of the
/// offending character (one past the end of input for premature end).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Def/Ad leaves of one expression disagree on n.
class MixedRank : public Error {
 public:
  using Error::Error;
};

/// Serialized input is well-formed JSON but does not match the expected schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace nilsupport
