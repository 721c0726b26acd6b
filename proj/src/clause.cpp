#include "forcelearn/clause.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "forcelearn/errors.hpp"

namespace forcelearn {

std::string Clause::to_string() const {
  std::ostringstream out;
  out << head.to_string();
  if (!body.empty()) {
    out << " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) out << ", ";
      out << body[i].to_string();
    }
  }
  out << '.';
  return out.str();
}

std::string ModeString::to_decl_string() const {
  std::ostringstream out;
  out << pred << '(';
  for (std::size_t i = 0; i < io.size(); ++i) {
    if (i) out << ',';
    out << io[i];
  }
  out << ')';
  return out.str();
}

std::vector<std::string> head_variables(const Clause& clause) {
  std::vector<std::string> vars;
  std::unordered_set<std::string> seen;
  for (const auto& a : clause.head.args)
    if (a.var && seen.insert(a.name).second) vars.push_back(a.name);
  return vars;
}

std::vector<std::string> clause_variables(const Clause& clause) {
  std::vector<std::string> vars = head_variables(clause);
  std::unordered_set<std::string> seen(vars.begin(), vars.end());
  for (const auto& lit : clause.body)
    for (const auto& a : lit.args)
      if (a.var && seen.insert(a.name).second) vars.push_back(a.name);
  return vars;
}

namespace {

// Variables bound before body literal `index` begins: head variables plus
// everything occurring in earlier body literals.
std::unordered_set<std::string> bound_before(const Clause& clause, std::size_t index) {
  std::unordered_set<std::string> bound;
  for (const auto& a : clause.head.args)
    if (a.var) bound.insert(a.name);
  for (std::size_t i = 0; i < index; ++i)
    for (const auto& a : clause.body[i].args)
      if (a.var) bound.insert(a.name);
  return bound;
}

}  // namespace

ModeString literal_mode(const Clause& clause, std::size_t index) {
  if (index >= clause.body.size()) throw InternalError("literal_mode: body index out of range");
  const Literal& lit = clause.body[index];
  auto bound = bound_before(clause, index);
  std::string io;
  io.reserve(lit.args.size());
  for (const auto& a : lit.args) {
    bool input = !a.var || bound.count(a.name) != 0;
    io.push_back(input ? '+' : '-');
  }
  return ModeString{lit.pred, io};
}

std::vector<std::size_t> input_positions(const Clause& clause, std::size_t index) {
  ModeString m = literal_mode(clause, index);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m.io.size(); ++j)
    if (m.io[j] == '+') out.push_back(j);
  return out;
}

std::vector<std::size_t> output_positions(const Clause& clause, std::size_t index) {
  ModeString m = literal_mode(clause, index);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m.io.size(); ++j)
    if (m.io[j] == '-') out.push_back(j);
  return out;
}

std::set<std::string> output_variables(const Clause& clause, std::size_t index) {
  std::set<std::string> out;
  for (std::size_t j : output_positions(clause, index))
    out.insert(clause.body[index].args[j].name);
  return out;
}

DepthInfo variable_depths(const Clause& clause) {
  DepthInfo info;
  for (const auto& a : clause.head.args)
    if (a.var) info.variable_depth.emplace(a.name, 0);
  for (std::size_t i = 0; i < clause.body.size(); ++i) {
    const Literal& lit = clause.body[i];
    int max_input = 0;
    for (const auto& a : lit.args) {
      if (!a.var) continue;
      auto it = info.variable_depth.find(a.name);
      if (it != info.variable_depth.end()) max_input = std::max(max_input, it->second);
    }
    for (const auto& a : lit.args)
      if (a.var) info.variable_depth.emplace(a.name, max_input + 1);
  }
  for (const auto& [v, d] : info.variable_depth) info.clause_depth = std::max(info.clause_depth, d);
  return info;
}

bool is_subclause(const Clause& c1, const Clause& c2) {
  if (c1.head != c2.head) return false;
  std::size_t j = 0;
  for (const auto& lit : c1.body) {
    while (j < c2.body.size() && c2.body[j] != lit) ++j;
    if (j == c2.body.size()) return false;
    ++j;
  }
  return true;
}

std::set<std::size_t> support_closure(const Clause& clause, std::size_t index) {
  if (index >= clause.body.size())
    throw InternalError("support_closure: body index out of range");
  std::set<std::size_t> closure;
  std::set<std::string> carried = output_variables(clause, index);
  for (std::size_t j = index + 1; j < clause.body.size(); ++j) {
    bool touched = false;
    for (const auto& a : clause.body[j].args)
      if (a.var && carried.count(a.name)) touched = true;
    if (!touched) continue;
    closure.insert(j);
    for (const auto& v : output_variables(clause, j)) carried.insert(v);
  }
  return closure;
}

Clause subclause_by_mask(const Clause& clause, const std::vector<bool>& keep) {
  if (keep.size() != clause.body.size())
    throw InternalError("subclause_by_mask: mask size mismatch");
  Clause out{clause.head, {}};
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (keep[i]) out.body.push_back(clause.body[i]);
  return out;
}

Clause normalize_determinate_duplicates(const Clause& clause) {
  Clause out{clause.head, {}};
  // key: mode + predicate + input terms -> output variables of the kept copy
  std::unordered_map<std::string, std::vector<std::string>> kept;
  std::unordered_map<std::string, std::string> rename;
  auto rewrite = [&](Literal lit) {
    for (auto& a : lit.args)
      if (a.var) {
        auto it = rename.find(a.name);
        if (it != rename.end()) a.name = it->second;
      }
    return lit;
  };
  for (std::size_t i = 0; i < clause.body.size(); ++i) {
    Literal lit = rewrite(clause.body[i]);
    Clause probe = out;
    probe.body.push_back(lit);
    std::size_t pos = probe.body.size() - 1;
    ModeString mode = literal_mode(probe, pos);
    std::ostringstream key;
    key << mode.to_string();
    std::vector<std::string> outs;
    for (std::size_t j = 0; j < lit.args.size(); ++j) {
      if (mode.io[j] == '+')
        key << '|' << (lit.args[j].var ? "V" : "c") << lit.args[j].name;
      else
        outs.push_back(lit.args[j].name);
    }
    auto it = kept.find(key.str());
    if (it == kept.end()) {
      kept.emplace(key.str(), outs);
      out.body.push_back(lit);
    } else {
      // duplicate: forward its outputs to the first copy's outputs
      for (std::size_t j = 0; j < outs.size(); ++j) rename[outs[j]] = it->second[j];
    }
  }
  return out;
}

}  // namespace forcelearn
