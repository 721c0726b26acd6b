#pragma once

#include <stdexcept>
#include <string>

namespace forcelearn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A body literal had more than one maximal satisfying substitution.
struct DeterminacyViolation : Error {
  using Error::Error;
};

// The reserved predicate `equal` is already used in a non-reflexive way.
struct PredicateCollision : Error {
  using Error::Error;
};

// embed_subclause could not map every literal of the input clause.
struct EmbeddingFailure : Error {
  using Error::Error;
};

// A pool instance carried a label disagreeing with the target program.
struct PoolLabelMismatch : Error {
  using Error::Error;
};

// A basecase query was issued against a single-clause target.
struct NoBaseClause : Error {
  using Error::Error;
};

// The user-supplied basecase rule threw.
struct BasecaseOracleError : Error {
  using Error::Error;
};

// A term example used a function symbol other than the list constructor.
struct NonListFunctor : Error {
  using Error::Error;
};

// An internal invariant was broken; maps to exit code 3 in the CLI.
struct InternalError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  int column;
  ParseError(int line_, int col_, const std::string& msg)
      : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_),
        column(col_) {}
};

}  // namespace forcelearn
