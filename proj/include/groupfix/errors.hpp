#ifndef GROUPFIX_ERRORS_HPP
#define GROUPFIX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace groupfix {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

// Rank-deficient input where an invertible matrix is required.
struct SingularMatrixError : Error {
  using Error::Error;
};

struct NotUnitaryError : Error {
  using Error::Error;
};

struct NotHermitianError : Error {
  using Error::Error;
};

// All eigenvalues of the system matrix fell below the null threshold.
struct DegenerateSolveError : Error {
  using Error::Error;
};

struct TableError : Error {
  using Error::Error;
};

// Permutation set is not closed under composition.
struct ClosureError : Error {
  using Error::Error;
};

struct GeometryError : Error {
  using Error::Error;
};

// Backtracking search exceeded its node budget.
struct SearchLimitError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, int line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
  int line;
};

}  // namespace groupfix

#endif
