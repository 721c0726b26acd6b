#include "forcelearn/interpret.hpp"

#include <unordered_map>
#include <unordered_set>

#include "forcelearn/errors.hpp"

namespace forcelearn {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t ceiling) {
  if (exp == 0) return 1;
  if (base == 0) return 0;
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (result > ceiling / base) return ceiling;
    result *= base;
    if (result >= ceiling) return ceiling;
  }
  return result;
}

std::uint64_t auto_budget(const Declaration& dec, std::size_t db_size, std::size_t desc_size,
                          std::uint64_t ceiling) {
  std::uint64_t a = dec.max_arity();
  std::uint64_t sum = static_cast<std::uint64_t>(db_size) + static_cast<std::uint64_t>(desc_size);
  std::uint64_t base = (sum > ceiling / (a ? a : 1)) ? ceiling : a * sum;
  return saturating_pow(base, dec.head_arity, ceiling);
}

std::optional<Substitution> lookup_mgs(const Literal& literal, const Substitution& sigma,
                                       const Database& db) {
  std::vector<Substitution> matches = db.match_all(literal, sigma);
  if (matches.empty()) return std::nullopt;
  if (matches.size() > 1)
    throw DeterminacyViolation("literal " + sigma.apply(literal).to_string() + " has " +
                               std::to_string(matches.size()) + " maximal substitutions");
  return matches.front();
}

namespace {

bool match_head(const Literal& head, const Fact& goal, Substitution& sigma) {
  if (head.pred != goal.pred || head.arity() != goal.arity()) return false;
  for (std::size_t j = 0; j < head.args.size(); ++j) {
    const Term& a = head.args[j];
    const std::string& c = goal.args[j].name;
    if (!a.var) {
      if (a.name != c) return false;
      continue;
    }
    if (auto bound = sigma.lookup(a.name)) {
      if (*bound != c) return false;
    } else {
      sigma.bind(a.name, c);
    }
  }
  return true;
}

struct Prover {
  const Database& facts;
  std::span<const Clause> program;
  MemoPolicy policy;
  std::uint64_t node_limit;
  CoverDiag* diag;

  std::unordered_set<std::string> idb;
  std::unordered_map<std::string, bool> table;  // settled subgoals (VisitedMemo)
  std::unordered_set<std::string> ancestors;
  std::size_t level = 0;
  std::uint64_t nodes = 0;
  std::uint64_t budget_events = 0;
  bool node_limit_hit = false;

  Prover(const Database& f, std::span<const Clause> p, MemoPolicy pol, std::uint64_t limit,
         CoverDiag* d)
      : facts(f), program(p), policy(pol), node_limit(limit), diag(d) {
    for (const auto& c : p) idb.insert(c.head.pred + "/" + std::to_string(c.head.arity()));
  }

  bool is_idb(const Literal& l) const {
    return idb.count(l.pred + "/" + std::to_string(l.arity())) != 0;
  }

  void note_failure(const Literal& grounded, std::size_t clause_idx, std::size_t body_idx) {
    if (!diag) return;
    if (!diag->has_failure || level > diag->failed_depth) {
      diag->has_failure = true;
      diag->failed_literal = grounded;
      diag->failed_clause = clause_idx;
      diag->failed_body_index = body_idx;
      diag->failed_depth = level;
    }
  }

  // touched is set when a failure below depended on the ancestor check, in
  // which case the failure must not be tabled.
  bool prove(const Fact& goal, std::uint64_t h, bool& touched) {
    ++nodes;
    if (node_limit && nodes > node_limit) {
      node_limit_hit = true;
      return false;
    }
    if (facts.contains(goal)) return true;  // depth-0 proof
    if (!is_idb(goal)) return false;
    std::string key = goal.to_string();
    if (policy == MemoPolicy::VisitedMemo) {
      auto it = table.find(key);
      if (it != table.end()) return it->second;
      if (ancestors.count(key)) {
        touched = true;
        return false;
      }
    }
    if (h == 0) {
      if (diag) diag->budget_exceeded = true;
      ++budget_events;
      return false;
    }
    bool touched_local = false;
    std::uint64_t budget_before = budget_events;
    bool limit_before = node_limit_hit;
    if (policy == MemoPolicy::VisitedMemo) ancestors.insert(key);
    ++level;
    bool proved = false;
    for (std::size_t ci = 0; ci < program.size() && !proved; ++ci) {
      Substitution sigma;
      if (!match_head(program[ci].head, goal, sigma)) continue;
      if (solve_body(program[ci], ci, 0, sigma, h, touched_local)) proved = true;
    }
    --level;
    if (policy == MemoPolicy::VisitedMemo) {
      ancestors.erase(key);
      if (proved)
        table[key] = true;
      else if (!touched_local && budget_events == budget_before && node_limit_hit == limit_before)
        table[key] = false;
    }
    touched = touched || touched_local;
    return proved;
  }

  bool solve_body(const Clause& c, std::size_t ci, std::size_t i, const Substitution& sigma,
                  std::uint64_t h, bool& touched) {
    if (i == c.body.size()) return true;
    const Literal& lit = c.body[i];
    Literal grounded = sigma.apply(lit);
    if (grounded.ground()) {
      bool ok = facts.contains(grounded);
      if (!ok && is_idb(grounded)) ok = prove(grounded, h - 1, touched);
      if (!ok) {
        note_failure(grounded, ci, i);
        return false;
      }
      return solve_body(c, ci, i + 1, sigma, h, touched);
    }
    // Unbound output variables: enumerate matching facts. Non-ground IDB
    // subgoals are only satisfiable through facts (descriptions may carry
    // instance-level facts of the head predicate).
    std::vector<Substitution> matches = facts.match_all(lit, sigma);
    for (const auto& extra : matches) {
      Substitution next = sigma.compose(extra);
      if (solve_body(c, ci, i + 1, next, h, touched)) return true;
    }
    if (matches.empty()) note_failure(grounded, ci, i);
    return false;
  }
};

}  // namespace

bool covers(std::span<const Clause> program, const Database& db, const ExtendedInstance& instance,
            const ProofBudget& budget, CoverDiag* diag) {
  Database merged = db.merged_with(instance.description);
  Prover prover(merged, program, budget.policy, budget.node_limit, diag);
  bool touched = false;
  bool result = prover.prove(instance.fact, budget.depth, touched);
  if (diag) {
    diag->nodes = prover.nodes;
    diag->node_limit_hit = prover.node_limit_hit;
  }
  return result;
}

bool covers(const Clause& clause, const Database& db, const ExtendedInstance& instance,
            const ProofBudget& budget, CoverDiag* diag) {
  return covers(std::span<const Clause>(&clause, 1), db, instance, budget, diag);
}

}  // namespace forcelearn
