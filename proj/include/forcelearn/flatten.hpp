#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "forcelearn/database.hpp"

namespace forcelearn {

// A ground term over atoms and nested lists, e.g. append([1,2],[3],[1,2,3]).
struct ListTerm {
  bool is_list = false;
  std::string atom;             // when !is_list
  std::vector<ListTerm> items;  // when is_list

  std::string to_string() const;
};

struct TermExample {
  std::string pred;
  std::vector<ListTerm> args;
};

TermExample parse_term_example(const std::string& text);

// Rewrites a term example as an extended instance: every distinct non-empty
// sublist gets a constant (identical sublists share one) and a
// components(list, head, tail) description fact; the empty list is the
// constant nil, whose null(nil) fact lives in the background database.
//
// base_fact, when given, is instantiated against the instance fact (each
// variable takes the fact's argument at the variable's first occurrence) and
// appended to the description; this reproduces the convention of supplying a
// single-clause target's base case inside D.
ExtendedInstance flatten(const TermExample& example,
                         const std::optional<Literal>& base_fact = std::nullopt,
                         std::optional<bool> label = std::nullopt);

inline constexpr const char* kNilConstant = "nil";
inline constexpr const char* kComponentsPred = "components";
inline constexpr const char* kNullPred = "null";

}  // namespace forcelearn
