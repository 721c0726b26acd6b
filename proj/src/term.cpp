#include "forcelearn/term.hpp"

#include <sstream>

#include "forcelearn/errors.hpp"

namespace forcelearn {

bool Literal::ground() const {
  for (const auto& a : args)
    if (a.var) return false;
  return true;
}

std::string Literal::to_string() const {
  std::ostringstream out;
  out << pred;
  if (!args.empty()) {
    out << '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out << ',';
      out << args[i].name;
    }
    out << ')';
  }
  return out.str();
}

std::optional<std::string> Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void Substitution::bind(const std::string& var, const std::string& constant) {
  auto [it, inserted] = map_.emplace(var, constant);
  if (!inserted && it->second != constant)
    throw InternalError("substitution rebinds " + var + " to " + constant + " (was " +
                        it->second + ")");
}

Term Substitution::apply(const Term& t) const {
  if (!t.var) return t;
  auto it = map_.find(t.name);
  if (it == map_.end()) return t;
  return Term::constant(it->second);
}

Literal Substitution::apply(const Literal& l) const {
  Literal out{l.pred, {}};
  out.args.reserve(l.args.size());
  for (const auto& a : l.args) out.args.push_back(apply(a));
  return out;
}

Substitution Substitution::compose(const Substitution& other) const {
  Substitution out = *this;
  for (const auto& [v, c] : other.map_) {
    if (out.map_.count(v))
      throw InternalError("composition of substitutions with overlapping domains at " + v);
    out.map_.emplace(v, c);
  }
  return out;
}

std::string Substitution::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [v, c] : map_) {
    if (!first) out << ", ";
    first = false;
    out << v << "=" << c;
  }
  out << '}';
  return out.str();
}

}  // namespace forcelearn
