#include "forcelearn/bottom.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "forcelearn/errors.hpp"
#include "forcelearn/interpret.hpp"

namespace forcelearn {

namespace {

bool is_recursive_mode(const ModeString& m, const Declaration& dec) {
  return m.pred == dec.head_pred && m.arity() == dec.head_arity;
}

std::string key_of(const ModeString& mode, const std::vector<std::string>& inputs) {
  std::ostringstream key;
  key << mode.to_string();
  for (const auto& t : inputs) key << '|' << t;
  return key.str();
}

// Existing DEEPEN-style keys of a clause: one per body literal with at least
// one output variable.
std::set<std::string> existing_deepen_keys(const Clause& clause) {
  std::set<std::string> keys;
  for (std::size_t i = 0; i < clause.body.size(); ++i) {
    ModeString m = literal_mode(clause, i);
    if (m.io.find('-') == std::string::npos) continue;
    std::vector<std::string> inputs;
    for (std::size_t j = 0; j < m.io.size(); ++j)
      if (m.io[j] == '+') inputs.push_back(clause.body[i].args[j].name);
    keys.insert(key_of(m, inputs));
  }
  return keys;
}

int next_fresh_round(const Clause& clause) {
  int round = 0;
  for (const auto& v : clause_variables(clause)) {
    if (v.size() < 2 || v[0] != 'V') continue;
    std::size_t underscore = v.find('_');
    if (underscore == std::string::npos) continue;
    std::string digits = v.substr(1, underscore - 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) continue;
    round = std::max(round, std::stoi(digits));
  }
  return round + 1;
}

struct FreshNamer {
  int round;
  int counter = 0;
  std::unordered_set<std::string> taken;

  explicit FreshNamer(int r, const Clause& clause) : round(r) {
    for (const auto& v : clause_variables(clause)) taken.insert(v);
  }
  std::string next() {
    for (;;) {
      std::string name = "V" + std::to_string(round) + "_" + std::to_string(++counter);
      if (taken.insert(name).second) return name;
    }
  }
};

// All tuples of length `len` over variable indices 0..n-1, lexicographic.
void for_each_tuple(std::size_t n, std::size_t len,
                    const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> tuple(len, 0);
  if (len == 0) {
    fn(tuple);
    return;
  }
  if (n == 0) return;
  for (;;) {
    fn(tuple);
    std::size_t pos = len;
    while (pos > 0) {
      --pos;
      if (++tuple[pos] < n) break;
      tuple[pos] = 0;
      if (pos == 0) return;
    }
  }
}

void audit_size_bound(std::size_t before, std::size_t after, const Declaration& dec,
                      std::size_t exponent, const char* what) {
  // |C| counted with the head literal so the variable bound a*|C| holds for
  // empty bodies too.
  std::uint64_t n = before + 1;
  std::uint64_t a = dec.max_arity();
  std::uint64_t nr = dec.modes.size();
  std::uint64_t cap = ~0ull;
  std::uint64_t vars_bound = (a != 0 && n > cap / a) ? cap : a * n;
  std::uint64_t tuples = saturating_pow(vars_bound, exponent, cap);
  std::uint64_t bound = (tuples != 0 && nr > cap / tuples) ? cap : n + tuples * nr;
  if (after + 1 > bound)
    throw InternalError(std::string(what) + " size bound violated: " + std::to_string(after + 1) +
                        " > " + std::to_string(bound));
}

struct PassResult {
  Clause clause;
  std::vector<GenInfo> added;
};

PassResult deepen_pass(const Clause& clause, const Declaration& dec, int round) {
  PassResult out{clause, {}};
  std::vector<std::string> vars = clause_variables(clause);
  std::set<std::string> used = existing_deepen_keys(clause);
  FreshNamer namer(round, clause);

  struct Candidate {
    std::vector<std::size_t> tuple;
    std::size_t mode_index;
  };
  std::vector<Candidate> candidates;
  for (std::size_t mi = 0; mi < dec.modes.size(); ++mi) {
    const ModeString& m = dec.modes[mi];
    if (m.io.find('-') == std::string::npos) continue;
    if (is_recursive_mode(m, dec)) continue;
    std::size_t inputs = static_cast<std::size_t>(std::count(m.io.begin(), m.io.end(), '+'));
    for_each_tuple(vars.size(), inputs,
                   [&](const std::vector<std::size_t>& t) { candidates.push_back({t, mi}); });
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.tuple, a.mode_index) < std::tie(b.tuple, b.mode_index);
  });

  for (const auto& cand : candidates) {
    const ModeString& m = dec.modes[cand.mode_index];
    std::vector<std::string> input_names;
    for (std::size_t idx : cand.tuple) input_names.push_back(vars[idx]);
    std::string key = key_of(m, input_names);
    if (used.count(key)) continue;
    used.insert(key);
    Literal lit{m.pred, {}};
    std::size_t next_input = 0;
    for (char io : m.io) {
      if (io == '+')
        lit.args.push_back(Term::variable(input_names[next_input++]));
      else
        lit.args.push_back(Term::variable(namer.next()));
    }
    out.clause.body.push_back(std::move(lit));
    out.added.push_back(GenInfo{round, m, input_names});
  }
  std::size_t a = dec.max_arity();
  audit_size_bound(clause.body.size(), out.clause.body.size(), dec, a == 0 ? 0 : a - 1, "DEEPEN");
  return out;
}

PassResult constrain_pass(const Clause& clause, const Declaration& dec) {
  PassResult out{clause, {}};
  std::vector<std::string> vars = clause_variables(clause);
  std::set<Literal> present(clause.body.begin(), clause.body.end());

  for (std::size_t mi = 0; mi < dec.modes.size(); ++mi) {
    const ModeString& m = dec.modes[mi];
    if (m.io.find('-') != std::string::npos) continue;
    if (is_recursive_mode(m, dec)) continue;
    for_each_tuple(vars.size(), m.arity(), [&](const std::vector<std::size_t>& t) {
      Literal lit{m.pred, {}};
      std::vector<std::string> input_names;
      for (std::size_t idx : t) {
        lit.args.push_back(Term::variable(vars[idx]));
        input_names.push_back(vars[idx]);
      }
      if (!present.insert(lit).second) return;
      out.clause.body.push_back(lit);
      out.added.push_back(GenInfo{0, m, input_names});
    });
  }
  audit_size_bound(clause.body.size(), out.clause.body.size(), dec, dec.max_arity(), "CONSTRAIN");
  return out;
}

}  // namespace

Clause deepen(const Clause& clause, const Declaration& dec) {
  return deepen_pass(clause, dec, next_fresh_round(clause)).clause;
}

Clause constrain(const Clause& clause, const Declaration& dec) {
  return constrain_pass(clause, dec).clause;
}

BottomClause bottom_star(int d, const Declaration& dec) {
  if (d < 0) throw InternalError("bottom_star: negative depth");
  Clause c;
  c.head.pred = dec.head_pred;
  for (std::size_t j = 1; j <= dec.head_arity; ++j)
    c.head.args.push_back(Term::variable("X" + std::to_string(j)));
  BottomClause bc;
  bc.depth = d;
  for (int round = 1; round <= d; ++round) {
    PassResult r = deepen_pass(c, dec, round);
    c = r.clause;
    bc.ledger.insert(bc.ledger.end(), r.added.begin(), r.added.end());
  }
  PassResult r = constrain_pass(c, dec);
  c = r.clause;
  bc.ledger.insert(bc.ledger.end(), r.added.begin(), r.added.end());
  bc.clause = std::move(c);
  if (bc.ledger.size() != bc.clause.body.size())
    throw InternalError("bottom_star: ledger out of sync");
  return bc;
}

std::optional<std::vector<std::string>> BottomClause::deepen_outputs(
    const ModeString& mode, const std::vector<std::string>& inputs) const {
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    if (ledger[i].deepen_round == 0) continue;
    if (ledger[i].mode != mode || ledger[i].input_tuple != inputs) continue;
    std::vector<std::string> outs;
    for (std::size_t j = 0; j < mode.io.size(); ++j)
      if (mode.io[j] == '-') outs.push_back(clause.body[i].args[j].name);
    return outs;
  }
  return std::nullopt;
}

std::vector<std::vector<Literal>> enumerate_recursive_literals(const BottomClause& bottom,
                                                               const Declaration& dec,
                                                               std::size_t k,
                                                               bool include_head_literal) {
  if (k == 0) throw InternalError("enumerate_recursive_literals: k must be positive");
  std::vector<std::string> vars = clause_variables(bottom.clause);
  std::vector<Literal> singles;
  for_each_tuple(vars.size(), dec.head_arity, [&](const std::vector<std::size_t>& t) {
    Literal lit{dec.head_pred, {}};
    for (std::size_t idx : t) lit.args.push_back(Term::variable(vars[idx]));
    if (!include_head_literal && lit == bottom.clause.head) return;
    singles.push_back(std::move(lit));
  });
  std::vector<std::vector<Literal>> tuples;
  for_each_tuple(singles.size(), k, [&](const std::vector<std::size_t>& t) {
    std::vector<Literal> tuple;
    for (std::size_t idx : t) tuple.push_back(singles[idx]);
    tuples.push_back(std::move(tuple));
  });
  return tuples;
}

Clause embed_subclause(const Clause& c_in, const Declaration& dec, const BottomClause& bottom) {
  Clause c = normalize_determinate_duplicates(c_in);
  const Clause& B = bottom.clause;
  if (c.head.pred != B.head.pred || c.head.arity() != B.head.arity())
    throw EmbeddingFailure("head mismatch: " + c.head.to_string());

  // theta maps bottom variables onto the terms of c.
  std::map<std::string, Term> theta;
  for (std::size_t j = 0; j < B.head.args.size(); ++j)
    theta[B.head.args[j].name] = c.head.args[j];

  for (std::size_t idx = 0; idx < c.body.size(); ++idx) {
    ModeString mode = literal_mode(c, idx);
    for (std::size_t bi = 0; bi < B.body.size(); ++bi) {
      if (literal_mode(B, bi) != mode) continue;
      bool inputs_match = true;
      for (std::size_t j = 0; j < mode.io.size() && inputs_match; ++j) {
        if (mode.io[j] != '+') continue;
        auto it = theta.find(B.body[bi].args[j].name);
        if (it == theta.end() || it->second != c.body[idx].args[j]) inputs_match = false;
      }
      if (!inputs_match) continue;
      for (std::size_t j = 0; j < mode.io.size(); ++j) {
        if (mode.io[j] != '-') continue;
        const std::string& bottom_var = B.body[bi].args[j].name;
        auto [it, inserted] = theta.emplace(bottom_var, c.body[idx].args[j]);
        if (!inserted && it->second != c.body[idx].args[j])
          throw InternalError("embed_subclause: conflicting image for " + bottom_var);
      }
    }
  }

  auto image_of = [&](const Literal& lit) -> std::optional<Literal> {
    Literal img{lit.pred, {}};
    for (const auto& a : lit.args) {
      auto it = theta.find(a.name);
      if (it == theta.end()) return std::nullopt;
      img.args.push_back(it->second);
    }
    return img;
  };

  std::set<Literal> c_body(c.body.begin(), c.body.end());
  Clause out{B.head, {}};
  std::set<Literal> covered;
  for (const auto& blit : B.body) {
    auto img = image_of(blit);
    bool retain = false;
    if (img && c_body.count(*img)) {
      retain = true;
      covered.insert(*img);
    } else if (blit.pred == kEqualPred && blit.arity() == 2 && img &&
               img->args[0] == img->args[1]) {
      retain = true;
    }
    if (retain) out.body.push_back(blit);
  }
  for (const auto& lit : c.body)
    if (!covered.count(lit))
      throw EmbeddingFailure("no image in the bottom clause for literal " + lit.to_string() +
                             " (depth exceeds the bottom clause or mode not declared)");
  (void)dec;
  return out;
}

}  // namespace forcelearn
