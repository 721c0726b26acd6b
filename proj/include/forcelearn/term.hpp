#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace forcelearn {

// A term is a variable or a constant. Variables start with an uppercase
// letter or '_', constants with anything else.
struct Term {
  bool var = false;
  std::string name;

  static Term variable(std::string n) { return Term{true, std::move(n)}; }
  static Term constant(std::string n) { return Term{false, std::move(n)}; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

struct Literal {
  std::string pred;
  std::vector<Term> args;

  std::size_t arity() const { return args.size(); }
  bool ground() const;
  std::string to_string() const;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// A fact is a Literal whose arguments are all constants.
using Fact = Literal;

// Finite functional map from variables to constants.
class Substitution {
 public:
  Substitution() = default;

  bool contains(const std::string& var) const { return map_.count(var) != 0; }
  std::optional<std::string> lookup(const std::string& var) const;
  void bind(const std::string& var, const std::string& constant);
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

  Term apply(const Term& t) const;
  Literal apply(const Literal& l) const;

  // Union of two substitutions with disjoint domains.
  Substitution compose(const Substitution& other) const;

  const std::map<std::string, std::string>& bindings() const { return map_; }
  std::string to_string() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, std::string> map_;
};

}  // namespace forcelearn
