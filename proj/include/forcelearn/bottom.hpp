#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forcelearn/clause.hpp"
#include "forcelearn/decl.hpp"

namespace forcelearn {

// Bookkeeping for one bottom-clause body literal: which pass created it and
// under which (mode, input-variable tuple) key.
struct GenInfo {
  int deepen_round = 0;  // 0 means a CONSTRAIN literal
  ModeString mode;
  std::vector<std::string> input_tuple;
};

struct BottomClause {
  Clause clause;
  std::vector<GenInfo> ledger;  // parallel to clause.body
  int depth = 0;

  // Output variables of the DEEPEN literal with the given mode and input
  // tuple, if one exists.
  std::optional<std::vector<std::string>> deepen_outputs(
      const ModeString& mode, const std::vector<std::string>& inputs) const;
};

// Appends one literal per (output-bearing mode, tuple of existing variables
// at its input positions) not yet represented among DEEPEN-generated literals
// with the same key. Output variables are fresh and pairwise distinct.
// Literals with the declaration's head predicate and arity are never added;
// recursive literals are enumerated separately.
Clause deepen(const Clause& clause, const Declaration& dec);

// Appends every mode-satisfying literal without output variables over the
// clause's variables (reflexive pairs such as equal(V,V) included), skipping
// literals already present and recursive literals.
Clause constrain(const Clause& clause, const Declaration& dec);

// CONSTRAIN after d rounds of DEEPEN applied to p(X1,...,Xa') <-.
BottomClause bottom_star(int d, const Declaration& dec);

// All k-tuples of closed recursive literals p(V1,...,Va') over the bottom
// clause's variables, in deterministic order. The literal identical to the
// bottom's head is excluded (set include_head_literal to keep it).
std::vector<std::vector<Literal>> enumerate_recursive_literals(const BottomClause& bottom,
                                                               const Declaration& dec,
                                                               std::size_t k,
                                                               bool include_head_literal = false);

// The embedding of a depth-d determinate clause satisfying dec into the
// bottom clause: returns the subclause of `bottom` whose literals map onto c,
// plus the equal literals induced by variable identifications. Throws
// EmbeddingFailure when some literal of c has no image.
Clause embed_subclause(const Clause& c, const Declaration& dec, const BottomClause& bottom);

}  // namespace forcelearn
