#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>

#include "forcelearn/clause.hpp"
#include "forcelearn/database.hpp"
#include "forcelearn/decl.hpp"

namespace forcelearn {

// Records the inverse map of split_modes: split predicate name -> (original
// predicate, mode io string).
struct RenameTable {
  std::map<std::string, std::pair<std::string, std::string>> split_to_orig;

  std::string to_string() const;
  static RenameTable from_string(const std::string& text);

  friend bool operator==(const RenameTable&, const RenameTable&) = default;
};

// Adds equal(c,c) for every constant c of db and the mode equal(+,+).
// Throws PredicateCollision if `equal` is already used inconsistently.
std::pair<Database, Declaration> augment_equality(const Database& db, const Declaration& dec);

// Gives every predicate with k modes k single-mode predicates, duplicating
// its facts under the new names. The head predicate and `equal` keep their
// names (their facts are never in db and resolution needs `equal` intact).
std::tuple<Database, Declaration, RenameTable> split_modes(const Database& db,
                                                           const Declaration& dec);

// Resolves away equal(V,W) body literals (unifying V and W throughout, head
// variables preferred as representatives), restores split predicate names and
// drops duplicate literals that arise.
Clause unsplit_clause(const Clause& clause, const RenameTable& renames);

// The per-counterexample description transform of the learning pipeline:
// split predicates renamed/duplicated in D, plus equal(c,c) for every
// constant of D and the instance fact.
ExtendedInstance transform_instance(const ExtendedInstance& inst, const RenameTable& renames,
                                    bool add_equalities);

}  // namespace forcelearn
