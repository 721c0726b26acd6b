#include "forcelearn/database.hpp"

#include <algorithm>
#include <sstream>

#include "forcelearn/errors.hpp"

namespace forcelearn {

namespace {

constexpr std::size_t kMaxIndexedArity = 8;

std::string mask_key(const Literal& pattern, const std::vector<bool>& ground_at) {
  std::ostringstream key;
  key << pattern.pred << '/' << pattern.arity() << ':';
  for (bool g : ground_at) key << (g ? '1' : '0');
  for (std::size_t j = 0; j < pattern.args.size(); ++j)
    if (ground_at[j]) key << '|' << pattern.args[j].name;
  return key.str();
}

}  // namespace

Database::Database(std::vector<Fact> facts) : facts_(std::move(facts)) {
  for (const auto& f : facts_)
    if (!f.ground()) throw InternalError("database fact contains a variable: " + f.to_string());
  std::sort(facts_.begin(), facts_.end());
  facts_.erase(std::unique(facts_.begin(), facts_.end()), facts_.end());
  build_index();
}

void Database::build_index() {
  by_pred_.clear();
  by_mask_.clear();
  for (std::size_t i = 0; i < facts_.size(); ++i) {
    const Fact& f = facts_[i];
    by_pred_[f.pred + "/" + std::to_string(f.arity())].push_back(i);
    if (f.arity() > kMaxIndexedArity) continue;
    std::size_t masks = std::size_t{1} << f.arity();
    for (std::size_t m = 0; m < masks; ++m) {
      std::vector<bool> ground_at(f.arity());
      for (std::size_t j = 0; j < f.arity(); ++j) ground_at[j] = (m >> j) & 1;
      by_mask_[mask_key(f, ground_at)].push_back(i);
    }
  }
}

bool Database::contains(const Fact& f) const {
  return std::binary_search(facts_.begin(), facts_.end(), f);
}

namespace {

// Bindings for the pattern's unbound variables against one fact, or nullopt.
std::optional<Substitution> unify_against_fact(const Literal& pattern, const Substitution& sigma,
                                               const Fact& fact) {
  if (pattern.pred != fact.pred || pattern.arity() != fact.arity()) return std::nullopt;
  Substitution fresh;
  for (std::size_t j = 0; j < pattern.args.size(); ++j) {
    const Term& a = pattern.args[j];
    const std::string& c = fact.args[j].name;
    if (!a.var) {
      if (a.name != c) return std::nullopt;
      continue;
    }
    if (auto bound = sigma.lookup(a.name)) {
      if (*bound != c) return std::nullopt;
      continue;
    }
    if (auto prior = fresh.lookup(a.name)) {
      if (*prior != c) return std::nullopt;
      continue;
    }
    fresh.bind(a.name, c);
  }
  return fresh;
}

}  // namespace

std::vector<Substitution> Database::match_all(const Literal& pattern,
                                              const Substitution& sigma) const {
  std::vector<Substitution> out;
  const std::vector<std::size_t>* bucket = nullptr;
  std::vector<bool> ground_at(pattern.arity());
  bool indexable = pattern.arity() <= kMaxIndexedArity;
  if (indexable) {
    Literal grounded = sigma.apply(pattern);
    for (std::size_t j = 0; j < grounded.args.size(); ++j) ground_at[j] = !grounded.args[j].var;
    auto it = by_mask_.find(mask_key(grounded, ground_at));
    if (it == by_mask_.end()) return out;
    bucket = &it->second;
  } else {
    auto it = by_pred_.find(pattern.pred + "/" + std::to_string(pattern.arity()));
    if (it == by_pred_.end()) return out;
    bucket = &it->second;
  }
  for (std::size_t idx : *bucket)
    if (auto s = unify_against_fact(pattern, sigma, facts_[idx])) out.push_back(std::move(*s));
  std::sort(out.begin(), out.end(),
            [](const Substitution& a, const Substitution& b) { return a.bindings() < b.bindings(); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Substitution> Database::scan_match(const Literal& pattern,
                                               const Substitution& sigma) const {
  std::vector<Substitution> out;
  for (const auto& f : facts_)
    if (auto s = unify_against_fact(pattern, sigma, f)) out.push_back(std::move(*s));
  std::sort(out.begin(), out.end(),
            [](const Substitution& a, const Substitution& b) { return a.bindings() < b.bindings(); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::set<std::string> Database::constants() const {
  std::set<std::string> out;
  for (const auto& f : facts_)
    for (const auto& a : f.args) out.insert(a.name);
  return out;
}

std::vector<std::string> Database::predicates() const {
  std::set<std::string> seen;
  for (const auto& f : facts_) seen.insert(f.pred);
  return {seen.begin(), seen.end()};
}

Database Database::merged_with(std::span<const Fact> extra) const {
  std::vector<Fact> all = facts_;
  all.insert(all.end(), extra.begin(), extra.end());
  return Database(std::move(all));
}

std::string Database::to_string() const {
  std::ostringstream out;
  for (const auto& f : facts_) out << f.to_string() << ".\n";
  return out.str();
}

std::string ExtendedInstance::to_string() const {
  std::ostringstream out;
  out << "fact: " << fact.to_string() << ".\n";
  out << "desc:\n";
  for (const auto& f : description) out << f.to_string() << ".\n";
  if (label) out << "label: " << (*label ? '+' : '-') << '\n';
  return out.str();
}

ExtendedInstance make_instance(Fact f, std::vector<Fact> description, std::optional<bool> label) {
  if (!f.ground()) throw InternalError("instance fact contains a variable: " + f.to_string());
  for (const auto& d : description)
    if (!d.ground()) throw InternalError("description fact contains a variable: " + d.to_string());
  std::sort(description.begin(), description.end());
  description.erase(std::unique(description.begin(), description.end()), description.end());
  return ExtendedInstance{std::move(f), std::move(description), label};
}

}  // namespace forcelearn
