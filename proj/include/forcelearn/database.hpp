#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "forcelearn/term.hpp"

namespace forcelearn {

// A set of ground facts with a lookup index from (predicate, ground-position
// mask, ground argument tuple) to matching facts. Facts are kept sorted, so
// iteration and serialization are canonical.
class Database {
 public:
  Database() = default;
  explicit Database(std::vector<Fact> facts);

  const std::vector<Fact>& facts() const { return facts_; }
  std::size_t size() const { return facts_.size(); }
  bool contains(const Fact& f) const;

  // All maximal substitutions s' (bindings for the pattern's unbound
  // variables) such that pattern.sigma.s' is in the database. Deduplicated
  // and in canonical order. Uses the mask index; see scan_match for the
  // linear-scan oracle.
  std::vector<Substitution> match_all(const Literal& pattern, const Substitution& sigma) const;

  // Index-free reference implementation of match_all.
  std::vector<Substitution> scan_match(const Literal& pattern, const Substitution& sigma) const;

  std::set<std::string> constants() const;
  std::vector<std::string> predicates() const;

  Database merged_with(std::span<const Fact> extra) const;

  std::string to_string() const;

  friend bool operator==(const Database&, const Database&) = default;

 private:
  std::vector<Fact> facts_;
  // pred -> fact indices, and pred/mask/key -> fact indices for arity <= 8.
  std::unordered_map<std::string, std::vector<std::size_t>> by_pred_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_mask_;
  void build_index();
};

// Instance fact f plus its private description D, with an optional label for
// pooled teachers.
struct ExtendedInstance {
  Fact fact;
  std::vector<Fact> description;  // kept sorted
  std::optional<bool> label;

  std::size_t size() const { return description.size(); }
  std::string to_string() const;

  friend bool operator==(const ExtendedInstance&, const ExtendedInstance&) = default;
};

ExtendedInstance make_instance(Fact f, std::vector<Fact> description,
                               std::optional<bool> label = std::nullopt);

}  // namespace forcelearn
