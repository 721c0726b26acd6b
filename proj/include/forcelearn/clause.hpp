#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "forcelearn/term.hpp"

namespace forcelearn {

// Head literal plus an ordered body. Body order is significant and is
// preserved by every operation in this library.
struct Clause {
  Literal head;
  std::vector<Literal> body;

  std::string to_string() const;

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause&, const Clause&) = default;
};

// Predicate symbol plus one '+'/'-' marker per argument position.
struct ModeString {
  std::string pred;
  std::string io;  // e.g. "+--"

  std::size_t arity() const { return io.size(); }
  std::string to_string() const { return pred + io; }
  // Parenthesized form, e.g. "components(+,-,-)".
  std::string to_decl_string() const;

  friend bool operator==(const ModeString&, const ModeString&) = default;
  friend auto operator<=>(const ModeString&, const ModeString&) = default;
};

// Variables of the clause in canonical order: head left to right, then body
// literals left to right, each first occurrence only.
std::vector<std::string> clause_variables(const Clause& clause);
std::vector<std::string> head_variables(const Clause& clause);

// Mode of body literal `index`: an argument is an input iff it is a constant
// or a variable appearing in the head or an earlier body literal.
ModeString literal_mode(const Clause& clause, std::size_t index);

// Argument positions of body literal `index` that are inputs (resp. outputs).
std::vector<std::size_t> input_positions(const Clause& clause, std::size_t index);
std::vector<std::size_t> output_positions(const Clause& clause, std::size_t index);

// Variables first bound by body literal `index` (its output variables).
std::set<std::string> output_variables(const Clause& clause, std::size_t index);

struct DepthInfo {
  std::map<std::string, int> variable_depth;
  int clause_depth = 0;
};

// Head variables have depth zero; a new variable introduced by a body literal
// has depth one plus the maximal depth of that literal's input variables.
DepthInfo variable_depths(const Clause& clause);

// True iff c1 and c2 have identical heads and c1's body is an order-preserving
// subsequence of c2's body.
bool is_subclause(const Clause& c1, const Clause& c2);

// Transitive closure of "some output variable of body[index] is an input
// variable of a later literal". Returns body positions, excluding index.
std::set<std::size_t> support_closure(const Clause& clause, std::size_t index);

// Keep exactly the body literals whose mask entry is true.
Clause subclause_by_mask(const Clause& clause, const std::vector<bool>& keep);

// Merge body literals that share mode, predicate symbol and input-variable
// sequence: later duplicates are dropped and their output variables renamed
// to the first literal's outputs. Sound for determinate clauses.
Clause normalize_determinate_duplicates(const Clause& clause);

}  // namespace forcelearn
