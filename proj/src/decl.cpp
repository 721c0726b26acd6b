#include "forcelearn/decl.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace forcelearn {

bool Declaration::contains(const ModeString& m) const {
  return std::find(modes.begin(), modes.end(), m) != modes.end();
}

std::vector<ModeString> Declaration::modes_of(const std::string& pred) const {
  std::vector<ModeString> out;
  for (const auto& m : modes)
    if (m.pred == pred) out.push_back(m);
  return out;
}

bool Declaration::unique_mode() const {
  std::map<std::string, std::string> seen;
  for (const auto& m : modes) {
    auto [it, inserted] = seen.emplace(m.pred, m.io);
    if (!inserted && it->second != m.io) return false;
  }
  return true;
}

bool Declaration::has_equality_mode() const {
  return contains(ModeString{kEqualPred, "++"});
}

std::size_t Declaration::max_arity() const {
  std::size_t a = head_arity;
  for (const auto& m : modes) a = std::max(a, m.arity());
  return a;
}

std::string Declaration::to_string() const {
  std::ostringstream out;
  out << "head: " << head_pred << '/' << head_arity << '\n';
  for (const auto& m : modes) out << "mode: " << m.to_decl_string() << '\n';
  return out.str();
}

bool satisfies_declaration(const Clause& clause, const Declaration& dec) {
  if (clause.head.pred != dec.head_pred || clause.head.arity() != dec.head_arity) return false;
  for (std::size_t i = 0; i < clause.body.size(); ++i)
    if (!dec.contains(literal_mode(clause, i))) return false;
  return true;
}

bool is_determinate_mode(const ModeString& mode, std::span<const Fact> universe) {
  std::map<std::vector<std::string>, std::vector<std::string>> fn;
  for (const auto& f : universe) {
    if (f.pred != mode.pred || f.arity() != mode.arity()) continue;
    std::vector<std::string> in, out;
    for (std::size_t j = 0; j < f.args.size(); ++j)
      (mode.io[j] == '+' ? in : out).push_back(f.args[j].name);
    auto [it, inserted] = fn.emplace(std::move(in), out);
    if (!inserted && it->second != out) return false;
  }
  return true;
}

}  // namespace forcelearn
