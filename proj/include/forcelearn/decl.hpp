#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "forcelearn/clause.hpp"

namespace forcelearn {

inline constexpr const char* kEqualPred = "equal";

// A declaration (p, a', R): head predicate, head arity, and the set of body
// modes allowed in a hypothesis. Mode order is preserved as given; it fixes
// the canonical literal order used by DEEPEN and CONSTRAIN.
struct Declaration {
  std::string head_pred;
  std::size_t head_arity = 0;
  std::vector<ModeString> modes;

  bool contains(const ModeString& m) const;
  std::vector<ModeString> modes_of(const std::string& pred) const;

  // True iff no predicate has two distinct mode strings in R.
  bool unique_mode() const;
  // True iff R contains equal(+,+).
  bool has_equality_mode() const;

  // Largest arity mentioned by R or the head; the `a` of the paper's bounds.
  std::size_t max_arity() const;

  std::string to_string() const;

  friend bool operator==(const Declaration&, const Declaration&) = default;
};

bool satisfies_declaration(const Clause& clause, const Declaration& dec);

// True iff over the facts of `universe` with the mode's predicate and arity,
// the input positions functionally determine the output positions.
bool is_determinate_mode(const ModeString& mode, std::span<const Fact> universe);

}  // namespace forcelearn
