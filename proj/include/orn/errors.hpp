#pragma once

#include <stdexcept>
#include <string>

namespace orn {

// Base class for every error the engine raises on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Set-level problems: duplicate enum tags, equality sets whose endpoints do
// not inhabit their carrier, and similar malformed codes.
struct IllFormedSet : Error { using Error::Error; };

// Raised when a full enumeration is demanded of a set that contains a mu
// (or is otherwise not known to be finite).
struct NonEnumerableDomain : Error { using Error::Error; };

// A value handed to an operation does not inhabit the set it was claimed to.
struct IllTypedValue : Error { using Error::Error; };

// An ornament code does not fit the description it claims to ornament.
struct IllFormedOrnament : Error { using Error::Error; };

// An algebra step produced a value outside its declared carrier.
struct IllFormedAlgebra : Error { using Error::Error; };

// The decoration carried by an algebraically ornamented value disagrees with
// the index it was filed under.
struct RecomputationFailure : Error { using Error::Error; };

// An adjoint transport was applied at an index the underlying fold does not
// actually reach.
struct IndexMismatch : Error { using Error::Error; };

// A lifting script's node structure does not mirror the recursion skeleton of
// the base function it claims to lift.
struct SkeletonMismatch : Error { using Error::Error; };

// A script with outstanding non-trivial holes was used where a complete patch
// function was required.
struct UnfilledHole : Error { using Error::Error; };

// A patch function returned a value that fails to check at its computed index.
struct PatchTypeError : Error { using Error::Error; };

// A function object does not match the declared function type (arity or
// component sets).
struct SignatureMismatch : Error { using Error::Error; };

// Surface declarations that parse but do not elaborate.
struct ElaborationError : Error { using Error::Error; };

// Lookup of an undeclared datatype, ornament, function or script.
struct UnknownName : Error { using Error::Error; };

// Lexical or grammatical failure while reading declaration text.
struct ParseError : Error {
  int line;
  int col;
  std::string expected;
  ParseError(int line_, int col_, std::string expected_, const std::string& found)
      : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) +
              ": expected " + expected_ + ", found " + found),
        line(line_), col(col_), expected(std::move(expected_)) {}
};

}  // namespace orn
