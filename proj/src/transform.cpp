#include "forcelearn/transform.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "forcelearn/errors.hpp"

namespace forcelearn {

std::string RenameTable::to_string() const {
  std::ostringstream out;
  for (const auto& [split, orig] : split_to_orig)
    out << split << " <- " << orig.first << '(' << orig.second << ")\n";
  return out.str();
}

RenameTable RenameTable::from_string(const std::string& text) {
  RenameTable rt;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '%') continue;
    std::size_t arrow = line.find("<-");
    std::size_t paren = line.find('(', arrow);
    std::size_t close = line.find(')', paren);
    if (arrow == std::string::npos || paren == std::string::npos || close == std::string::npos)
      throw ParseError(lineno, 1, "expected `split <- orig(io)`");
    auto trim = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t");
      std::size_t e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string split = trim(line.substr(start, arrow - start));
    std::string orig = trim(line.substr(arrow + 2, paren - arrow - 2));
    std::string io = trim(line.substr(paren + 1, close - paren - 1));
    if (split.empty() || orig.empty() || io.empty())
      throw ParseError(lineno, 1, "expected `split <- orig(io)`");
    rt.split_to_orig[split] = {orig, io};
  }
  return rt;
}

std::pair<Database, Declaration> augment_equality(const Database& db, const Declaration& dec) {
  for (const auto& f : db.facts())
    if (f.pred == kEqualPred && (f.arity() != 2 || f.args[0] != f.args[1]))
      throw PredicateCollision("database already uses `equal` non-reflexively: " + f.to_string());
  for (const auto& m : dec.modes)
    if (m.pred == kEqualPred && m.io != "++")
      throw PredicateCollision("declaration already uses `equal` with mode " + m.to_string());

  std::vector<Fact> facts = db.facts();
  for (const auto& c : db.constants())
    facts.push_back(Fact{kEqualPred, {Term::constant(c), Term::constant(c)}});
  Declaration out = dec;
  if (!out.has_equality_mode()) out.modes.push_back(ModeString{kEqualPred, "++"});
  return {Database(std::move(facts)), std::move(out)};
}

namespace {

std::string split_name(const ModeString& m, const std::set<std::string>& taken) {
  std::string io;
  for (char c : m.io) io.push_back(c == '+' ? 'i' : 'o');
  std::string name = m.pred + "__" + io;
  while (taken.count(name)) name += "x";
  return name;
}

}  // namespace

std::tuple<Database, Declaration, RenameTable> split_modes(const Database& db,
                                                           const Declaration& dec) {
  RenameTable rt;
  Declaration nd{dec.head_pred, dec.head_arity, {}};
  std::set<std::string> taken;
  taken.insert(dec.head_pred);
  for (const auto& p : db.predicates()) taken.insert(p);
  for (const auto& m : dec.modes) taken.insert(m.pred);

  for (const auto& m : dec.modes) {
    bool exempt = (m.pred == dec.head_pred && m.arity() == dec.head_arity) ||
                  m.pred == kEqualPred;
    if (exempt) {
      nd.modes.push_back(m);
      continue;
    }
    std::string name = split_name(m, taken);
    taken.insert(name);
    nd.modes.push_back(ModeString{name, m.io});
    rt.split_to_orig[name] = {m.pred, m.io};
  }

  // orig pred -> split names, in declaration order
  std::map<std::string, std::vector<std::pair<std::string, std::size_t>>> splits;
  for (const auto& m : nd.modes) {
    auto it = rt.split_to_orig.find(m.pred);
    if (it != rt.split_to_orig.end()) splits[it->second.first].push_back({m.pred, m.arity()});
  }

  std::vector<Fact> facts;
  for (const auto& f : db.facts()) {
    auto it = splits.find(f.pred);
    bool replaced = false;
    if (it != splits.end()) {
      for (const auto& [name, arity] : it->second) {
        if (arity != f.arity()) continue;
        Fact copy = f;
        copy.pred = name;
        facts.push_back(std::move(copy));
        replaced = true;
      }
    }
    if (!replaced) facts.push_back(f);
  }
  return {Database(std::move(facts)), std::move(nd), std::move(rt)};
}

namespace {

void substitute_var(Clause& c, const std::string& from, const std::string& to) {
  auto fix = [&](Literal& l) {
    for (auto& a : l.args)
      if (a.var && a.name == from) a.name = to;
  };
  fix(c.head);
  for (auto& l : c.body) fix(l);
}

void substitute_var_to_const(Clause& c, const std::string& from, const std::string& constant) {
  auto fix = [&](Literal& l) {
    for (auto& a : l.args)
      if (a.var && a.name == from) a = Term::constant(constant);
  };
  fix(c.head);
  for (auto& l : c.body) fix(l);
}

}  // namespace

Clause unsplit_clause(const Clause& clause, const RenameTable& renames) {
  Clause c = clause;
  for (auto& l : c.body) {
    auto it = renames.split_to_orig.find(l.pred);
    if (it != renames.split_to_orig.end()) l.pred = it->second.first;
  }

  // Resolve equal(s,t) literals against equal(X,X) <-.
  std::vector<std::string> head_vars = head_variables(c);
  for (std::size_t i = 0; i < c.body.size();) {
    const Literal& l = c.body[i];
    if (l.pred != kEqualPred || l.arity() != 2) {
      ++i;
      continue;
    }
    Term s = l.args[0];
    Term t = l.args[1];
    if (s == t) {
      c.body.erase(c.body.begin() + i);
      continue;
    }
    if (s.var && t.var) {
      // Prefer a head variable, then the earlier variable, as representative.
      auto canon = clause_variables(c);
      auto rank = [&](const std::string& v) {
        bool in_head = std::find(head_vars.begin(), head_vars.end(), v) != head_vars.end();
        auto pos = std::find(canon.begin(), canon.end(), v) - canon.begin();
        return std::pair<int, long>(in_head ? 0 : 1, pos);
      };
      std::string keep = s.name, drop = t.name;
      if (rank(t.name) < rank(s.name)) std::swap(keep, drop);
      c.body.erase(c.body.begin() + i);
      substitute_var(c, drop, keep);
      i = 0;  // substitution may have created new resolvable literals
      continue;
    }
    if (s.var != t.var) {
      const Term& var = s.var ? s : t;
      const Term& constant = s.var ? t : s;
      c.body.erase(c.body.begin() + i);
      substitute_var_to_const(c, var.name, constant.name);
      i = 0;
      continue;
    }
    // Two distinct constants: the literal can never succeed; keep it.
    ++i;
  }

  // Drop duplicates introduced by the unifications, keeping first occurrences.
  std::set<Literal> seen;
  std::vector<Literal> body;
  for (auto& l : c.body)
    if (seen.insert(l).second) body.push_back(std::move(l));
  c.body = std::move(body);
  return c;
}

ExtendedInstance transform_instance(const ExtendedInstance& inst, const RenameTable& renames,
                                    bool add_equalities) {
  std::map<std::string, std::vector<std::pair<std::string, std::size_t>>> splits;
  for (const auto& [split, orig] : renames.split_to_orig)
    splits[orig.first].push_back({split, orig.second.size()});

  std::vector<Fact> desc;
  for (const auto& f : inst.description) {
    auto it = splits.find(f.pred);
    bool replaced = false;
    if (it != splits.end()) {
      for (const auto& [name, arity] : it->second) {
        if (arity != f.arity()) continue;
        Fact copy = f;
        copy.pred = name;
        desc.push_back(std::move(copy));
        replaced = true;
      }
    }
    if (!replaced) desc.push_back(f);
  }
  if (add_equalities) {
    std::set<std::string> constants;
    for (const auto& f : desc)
      for (const auto& a : f.args) constants.insert(a.name);
    for (const auto& a : inst.fact.args) constants.insert(a.name);
    for (const auto& c : constants)
      desc.push_back(Fact{kEqualPred, {Term::constant(c), Term::constant(c)}});
  }
  return make_instance(inst.fact, std::move(desc), inst.label);
}

}  // namespace forcelearn
