#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "forcelearn/clause.hpp"
#include "forcelearn/database.hpp"
#include "forcelearn/decl.hpp"
#include "forcelearn/interpret.hpp"

namespace forcelearn {

enum class SimFailure {
  None,
  HeadMismatch,          // head and fact cannot be unified
  BudgetExhausted,       // depth bound ran out
  SubgoalLoop,           // a recursive subgoal repeated on the current path
  NongroundSubgoal,      // a recursive literal lost an input producer
  BaseGeneralization,    // the base clause could not be generalized
};

std::string to_string(SimFailure f);

// One level of a simulation: the subgoal it worked on, the body positions
// (indices into the original body) deleted at that level, and the
// substitution after the deletion loop.
struct LevelTrace {
  Fact subgoal;
  std::vector<std::size_t> deleted_positions;
  Substitution sigma;
};

struct SimOutcome {
  bool generalized = false;
  Clause clause;                   // on success: the generalized clause
  std::optional<Clause> base;      // force_sim2 only: the generalized base clause
  SimFailure failure = SimFailure::None;
  std::vector<LevelTrace> trace;

  static SimOutcome fail(SimFailure why, std::vector<LevelTrace> trace = {});
};

// Forced simulation of a nonrecursive clause on a fact (db already includes
// the instance description). On success the result is the unique
// syntactically largest subclause of h that satisfies dec and covers f.
SimOutcome force_sim_nr(const Clause& h, const Fact& f, const Declaration& dec,
                        const Database& db);

// Forced simulation of a clause whose recursive literals (same predicate and
// arity as the head) are closed. Linear clauses follow the plain depth-bounded
// recursion; with two or more recursive literals the traversal keeps a
// visited set and fails on ancestor repeats.
SimOutcome force_sim(const Clause& h, const Fact& f, const Declaration& dec, const Database& db,
                     std::uint64_t budget);

using BasecaseOracle = std::function<bool(const Fact&)>;

// Forced simulation of a two-clause program (recursive hr, nonrecursive hb).
// Basecase facts generalize hb through force_sim_nr; all others step hr one
// level and recurse on the recursive subgoal with budget - 1.
SimOutcome force_sim2(const Clause& hr, const Clause& hb, const Fact& f, const Declaration& dec,
                      const Database& db, std::uint64_t budget, const BasecaseOracle& basecase);

// Body positions whose literal has the head's predicate symbol and arity.
std::vector<std::size_t> recursive_positions(const Clause& clause);

}  // namespace forcelearn
