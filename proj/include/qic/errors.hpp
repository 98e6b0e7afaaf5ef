#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qic {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Register size above the configured qubit cap.
struct CapExceeded : Error {
  using Error::Error;
};

// Oracle arity does not match the register width.
struct ArityMismatch : Error {
  using Error::Error;
};

// Two states with different qubit counts were combined.
struct ShapeMismatch : Error {
  using Error::Error;
};

// Total destructive interference: the summed arms carry (almost) no norm.
// In ideal mode this is the signal that no unexcluded solutions remain.
struct NullInterference : Error {
  using Error::Error;
};

// An operation requiring a unit-norm state received something else.
struct NotNormalized : Error {
  using Error::Error;
};

// DIMACS parser diagnostics. `line` is 1-based.
struct DimacsSyntaxError : Error {
  std::size_t line;
  DimacsSyntaxError(std::size_t line_no, const std::string& what_arg)
      : Error("line " + std::to_string(line_no) + ": " + what_arg), line(line_no) {}
};

// Header clause count disagrees with the clauses actually present.
struct DimacsHeaderMismatch : Error {
  using Error::Error;
};

// A literal references a variable outside [1, num_vars].
struct DimacsLiteralOutOfRange : Error {
  std::size_t line;
  DimacsLiteralOutOfRange(std::size_t line_no, const std::string& what_arg)
      : Error("line " + std::to_string(line_no) + ": " + what_arg), line(line_no) {}
};

// A sweep addressed an element that is not an angle-bearing element.
struct ParamNotFound : Error {
  using Error::Error;
};

}  // namespace qic
