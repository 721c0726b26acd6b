#include "forcelearn/forcesim.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "forcelearn/errors.hpp"

namespace forcelearn {

std::string to_string(SimFailure f) {
  switch (f) {
    case SimFailure::None: return "none";
    case SimFailure::HeadMismatch: return "head mismatch";
    case SimFailure::BudgetExhausted: return "budget exhausted";
    case SimFailure::SubgoalLoop: return "recursive subgoal loop";
    case SimFailure::NongroundSubgoal: return "non-ground recursive subgoal";
    case SimFailure::BaseGeneralization: return "base clause generalization failed";
  }
  return "unknown";
}

SimOutcome SimOutcome::fail(SimFailure why, std::vector<LevelTrace> trace) {
  SimOutcome out;
  out.generalized = false;
  out.failure = why;
  out.trace = std::move(trace);
  return out;
}

std::vector<std::size_t> recursive_positions(const Clause& clause) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < clause.body.size(); ++i)
    if (clause.body[i].pred == clause.head.pred &&
        clause.body[i].arity() == clause.head.arity())
      out.push_back(i);
  return out;
}

namespace {

std::optional<Substitution> unify_head(const Literal& head, const Fact& f) {
  if (head.pred != f.pred || head.arity() != f.arity()) return std::nullopt;
  Substitution sigma;
  for (std::size_t j = 0; j < head.args.size(); ++j) {
    const Term& a = head.args[j];
    const std::string& c = f.args[j].name;
    if (!a.var) {
      if (a.name != c) return std::nullopt;
      continue;
    }
    if (auto bound = sigma.lookup(a.name)) {
      if (*bound != c) return std::nullopt;
    } else {
      sigma.bind(a.name, c);
    }
  }
  return sigma;
}

// Deletion state of one simulated clause. Deletions accumulate across levels;
// positions index the original body throughout.
struct SimState {
  const Clause& original;
  std::vector<bool> alive;
  std::vector<bool> recursive;

  SimState(const Clause& clause, const std::vector<std::size_t>& rec_positions)
      : original(clause),
        alive(clause.body.size(), true),
        recursive(clause.body.size(), false) {
    for (std::size_t p : rec_positions) recursive[p] = true;
  }

  // Variables bound by the head or produced by alive nonrecursive literals
  // before `pos`.
  std::set<std::string> bound_before(std::size_t pos) const {
    std::set<std::string> bound;
    for (const auto& a : original.head.args)
      if (a.var) bound.insert(a.name);
    for (std::size_t i = 0; i < pos; ++i) {
      if (!alive[i] || recursive[i]) continue;
      for (const auto& a : original.body[i].args)
        if (a.var) bound.insert(a.name);
    }
    return bound;
  }

  std::set<std::string> produced_vars(std::size_t pos) const {
    std::set<std::string> bound = bound_before(pos);
    std::set<std::string> out;
    for (const auto& a : original.body[pos].args)
      if (a.var && !bound.count(a.name)) out.insert(a.name);
    return out;
  }

  // Delete `pos` together with every later alive nonrecursive literal that
  // (transitively) consumes a variable it produced.
  void delete_with_closure(std::size_t pos, std::vector<std::size_t>& deleted) {
    std::set<std::string> orphaned = produced_vars(pos);
    alive[pos] = false;
    deleted.push_back(pos);
    for (std::size_t j = pos + 1; j < original.body.size(); ++j) {
      if (!alive[j] || recursive[j]) continue;
      bool touches = false;
      for (const auto& a : original.body[j].args)
        if (a.var && orphaned.count(a.name)) touches = true;
      if (!touches) continue;
      std::set<std::string> more = produced_vars(j);
      orphaned.insert(more.begin(), more.end());
      alive[j] = false;
      deleted.push_back(j);
    }
  }

  Clause survivors() const { return subclause_by_mask(original, alive); }

  bool subgoal_available(std::size_t rec_pos) const {
    std::set<std::string> bound = bound_before(original.body.size());
    for (const auto& a : original.body[rec_pos].args)
      if (a.var && !bound.count(a.name)) return false;
    return true;
  }
};

struct LevelOutcome {
  Substitution sigma;
  std::vector<std::size_t> deleted;
};

// The deletion loop of Fig. 2: look up each alive nonrecursive literal; on
// failure delete it with its support closure, otherwise extend sigma.
LevelOutcome run_level(SimState& st, const Substitution& head_sigma, const Database& facts) {
  LevelOutcome out;
  out.sigma = head_sigma;
  for (std::size_t i = 0; i < st.original.body.size(); ++i) {
    if (!st.alive[i] || st.recursive[i]) continue;
    std::optional<Substitution> extra = lookup_mgs(st.original.body[i], out.sigma, facts);
    if (!extra)
      st.delete_with_closure(i, out.deleted);
    else
      out.sigma = out.sigma.compose(*extra);
  }
  return out;
}

}  // namespace

SimOutcome force_sim_nr(const Clause& h, const Fact& f, const Declaration& dec,
                        const Database& db) {
  (void)dec;  // Lemma 3: the returned subclause satisfies dec by construction
  SimOutcome out;
  if (db.contains(f)) {
    out.generalized = true;
    out.clause = h;
    return out;
  }
  std::optional<Substitution> head_sigma = unify_head(h.head, f);
  if (!head_sigma) return SimOutcome::fail(SimFailure::HeadMismatch);
  SimState st(h, {});
  LevelOutcome lvl = run_level(st, *head_sigma, db);
  out.generalized = true;
  out.clause = st.survivors();
  out.trace.push_back(LevelTrace{f, lvl.deleted, lvl.sigma});
  return out;
}

SimOutcome force_sim(const Clause& h, const Fact& f, const Declaration& dec, const Database& db,
                     std::uint64_t budget) {
  std::vector<std::size_t> recs = recursive_positions(h);
  if (recs.empty()) return force_sim_nr(h, f, dec, db);
  SimState st(h, recs);
  std::vector<LevelTrace> trace;

  if (recs.size() == 1) {
    // Fig. 4, iteratively: the recursion is a tail call on the subgoal.
    Fact goal = f;
    std::uint64_t h_left = budget;
    bool exhausted = false;
    std::unordered_set<std::string> seen;
    for (;;) {
      if (exhausted) return SimOutcome::fail(SimFailure::BudgetExhausted, std::move(trace));
      if (db.contains(goal)) break;
      // A repeated subgoal can only recur forever; equivalent to running
      // out of budget.
      if (!seen.insert(goal.to_string()).second)
        return SimOutcome::fail(SimFailure::SubgoalLoop, std::move(trace));
      std::optional<Substitution> head_sigma = unify_head(h.head, goal);
      if (!head_sigma) return SimOutcome::fail(SimFailure::HeadMismatch, std::move(trace));
      LevelOutcome lvl = run_level(st, *head_sigma, db);
      trace.push_back(LevelTrace{goal, lvl.deleted, lvl.sigma});
      if (!st.subgoal_available(recs[0]))
        return SimOutcome::fail(SimFailure::NongroundSubgoal, std::move(trace));
      goal = lvl.sigma.apply(h.body[recs[0]]);
      if (!goal.ground())
        return SimOutcome::fail(SimFailure::NongroundSubgoal, std::move(trace));
      if (h_left == 0)
        exhausted = true;
      else
        --h_left;
    }
    SimOutcome out;
    out.generalized = true;
    out.clause = st.survivors();
    out.trace = std::move(trace);
    return out;
  }

  // k >= 2: depth-first left-to-right with a visited set; an ancestor repeat
  // is a loop and fails the whole simulation.
  std::unordered_set<std::string> proved;
  std::unordered_set<std::string> ancestors;
  SimFailure failure = SimFailure::None;

  auto go = [&](auto&& self, const Fact& goal, std::uint64_t h_left, bool exhausted) -> bool {
    if (exhausted) {
      failure = SimFailure::BudgetExhausted;
      return false;
    }
    if (db.contains(goal)) return true;
    std::string key = goal.to_string();
    if (proved.count(key)) return true;
    if (ancestors.count(key)) {
      failure = SimFailure::SubgoalLoop;
      return false;
    }
    std::optional<Substitution> head_sigma = unify_head(h.head, goal);
    if (!head_sigma) {
      failure = SimFailure::HeadMismatch;
      return false;
    }
    LevelOutcome lvl = run_level(st, *head_sigma, db);
    trace.push_back(LevelTrace{goal, lvl.deleted, lvl.sigma});
    ancestors.insert(key);
    for (std::size_t pos : recs) {
      // A sibling subtree may have deleted the producer of an input.
      if (!st.subgoal_available(pos)) {
        failure = SimFailure::NongroundSubgoal;
        ancestors.erase(key);
        return false;
      }
      Fact sub = lvl.sigma.apply(h.body[pos]);
      if (!sub.ground()) {
        failure = SimFailure::NongroundSubgoal;
        ancestors.erase(key);
        return false;
      }
      if (!self(self, sub, h_left == 0 ? 0 : h_left - 1, h_left == 0)) {
        ancestors.erase(key);
        return false;
      }
    }
    ancestors.erase(key);
    proved.insert(key);
    return true;
  };

  if (!go(go, f, budget, false)) return SimOutcome::fail(failure, std::move(trace));
  SimOutcome out;
  out.generalized = true;
  out.clause = st.survivors();
  out.trace = std::move(trace);
  return out;
}

SimOutcome force_sim2(const Clause& hr, const Clause& hb, const Fact& f, const Declaration& dec,
                      const Database& db, std::uint64_t budget, const BasecaseOracle& basecase) {
  std::vector<std::size_t> recs = recursive_positions(hr);
  if (recs.size() != 1)
    throw InternalError("force_sim2: recursive clause must be linear recursive");
  SimState st(hr, recs);
  std::vector<LevelTrace> trace;
  Fact goal = f;
  std::uint64_t h_left = budget;
  std::unordered_set<std::string> seen;

  for (;;) {
    if (h_left < 1) return SimOutcome::fail(SimFailure::BudgetExhausted, std::move(trace));
    bool is_base;
    try {
      is_base = basecase(goal);
    } catch (const std::exception& e) {
      throw BasecaseOracleError(std::string("basecase oracle failed: ") + e.what());
    }
    if (is_base) {
      SimOutcome nr = force_sim_nr(hb, goal, dec, db);
      for (auto& t : nr.trace) trace.push_back(std::move(t));
      if (!nr.generalized)
        return SimOutcome::fail(SimFailure::BaseGeneralization, std::move(trace));
      SimOutcome out;
      out.generalized = true;
      out.clause = st.survivors();
      out.base = nr.clause;
      out.trace = std::move(trace);
      return out;
    }
    if (!seen.insert(goal.to_string()).second)
      return SimOutcome::fail(SimFailure::SubgoalLoop, std::move(trace));
    std::optional<Substitution> head_sigma = unify_head(hr.head, goal);
    if (!head_sigma) return SimOutcome::fail(SimFailure::HeadMismatch, std::move(trace));
    LevelOutcome lvl = run_level(st, *head_sigma, db);
    trace.push_back(LevelTrace{goal, lvl.deleted, lvl.sigma});
    if (!st.subgoal_available(recs[0]))
      return SimOutcome::fail(SimFailure::NongroundSubgoal, std::move(trace));
    goal = lvl.sigma.apply(hr.body[recs[0]]);
    if (!goal.ground())
      return SimOutcome::fail(SimFailure::NongroundSubgoal, std::move(trace));
    --h_left;
  }
}

}  // namespace forcelearn
