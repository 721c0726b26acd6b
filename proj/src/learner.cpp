#include "forcelearn/learner.hpp"

#include <algorithm>
#include <chrono>

#include "forcelearn/errors.hpp"
#include "forcelearn/flatten.hpp"

namespace forcelearn {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Database merged_facts(const Database& db, const ExtendedInstance& e) {
  return db.merged_with(e.description);
}

void check_cap(const LearnStats& stats, std::uint64_t cap) {
  if (stats.queries > cap)
    throw InternalError("equivalence query cap exceeded: " + std::to_string(stats.queries) +
                        " > " + std::to_string(cap));
}

}  // namespace

std::uint64_t query_cap(std::size_t candidate_count, std::size_t bottom_body_size) {
  return (static_cast<std::uint64_t>(candidate_count) + 1) *
         (static_cast<std::uint64_t>(bottom_body_size) + 2);
}

LearnResult force1_nr(int d, const Declaration& dec, const Database& db, PoolTeacher& teacher,
                      const LearnOptions& opts) {
  auto start = Clock::now();
  BottomClause bottom = bottom_star(d, dec);
  Clause hypothesis = bottom.clause;
  LearnResult res;
  res.hypothesis_history.push_back({hypothesis});
  std::uint64_t cap = query_cap(0, bottom.clause.body.size());

  for (;;) {
    ++res.stats.queries;
    check_cap(res.stats, cap);
    EqAnswer ans = teacher.equivalence(std::span<const Clause>(&hypothesis, 1));
    if (ans.yes) {
      res.identified = true;
      res.hypothesis = {hypothesis};
      break;
    }
    res.counterexamples.push_back({ans.counterexample, ans.positive});
    if (!ans.positive) break;  // a negative example: no consistent hypothesis
    Database merged = merged_facts(db, ans.counterexample);
    SimOutcome out = force_sim_nr(hypothesis, ans.counterexample.fact, dec, merged);
    if (!out.generalized) break;
    hypothesis = out.clause;
    res.hypothesis_history.push_back({hypothesis});
  }
  res.stats.candidates_tried = 1;
  res.stats.seconds = seconds_since(start);
  return res;
}

LearnResult force1(int d, const Declaration& dec, const Database& db, PoolTeacher& teacher,
                   std::size_t k, const LearnOptions& opts) {
  auto start = Clock::now();
  BottomClause bottom = bottom_star(d, dec);
  std::vector<std::vector<Literal>> candidates = enumerate_recursive_literals(bottom, dec, k);
  LearnResult res;
  std::uint64_t cap = query_cap(candidates.size(), bottom.clause.body.size());

  for (std::size_t step = 0; step < candidates.size(); ++step) {
    std::size_t ci = (opts.first_candidate + step) % std::max<std::size_t>(candidates.size(), 1);
    ++res.stats.candidates_tried;
    Clause hypothesis = bottom.clause;
    for (const auto& lit : candidates[ci]) hypothesis.body.push_back(lit);
    res.hypothesis_history.clear();
    res.hypothesis_history.push_back({hypothesis});
    bool dead = false;

    if (opts.replay_log) {
      for (const auto& logged : res.counterexamples) {
        if (!logged.positive) continue;
        std::uint64_t h =
            auto_budget(dec, db.size(), logged.instance.size(), opts.budget_ceiling);
        SimOutcome out =
            force_sim(hypothesis, logged.instance.fact, dec, merged_facts(db, logged.instance), h);
        if (!out.generalized) {
          dead = true;
          break;
        }
        if (out.clause != hypothesis) {
          hypothesis = out.clause;
          res.hypothesis_history.push_back({hypothesis});
        }
      }
      for (const auto& logged : res.counterexamples) {
        if (dead) break;
        if (logged.positive) continue;
        std::uint64_t h =
            auto_budget(dec, db.size(), logged.instance.size(), opts.budget_ceiling);
        if (covers(hypothesis, db, logged.instance, ProofBudget::memo(h))) dead = true;
      }
    }

    while (!dead) {
      ++res.stats.queries;
      check_cap(res.stats, cap);
      EqAnswer ans = teacher.equivalence(std::span<const Clause>(&hypothesis, 1));
      if (ans.yes) {
        res.identified = true;
        res.hypothesis = {hypothesis};
        res.stats.seconds = seconds_since(start);
        return res;
      }
      res.counterexamples.push_back({ans.counterexample, ans.positive});
      if (!ans.positive) {
        dead = true;  // mark this candidate, move to the next
        break;
      }
      std::uint64_t h =
          auto_budget(dec, db.size(), ans.counterexample.size(), opts.budget_ceiling);
      SimOutcome out = force_sim(hypothesis, ans.counterexample.fact, dec,
                                 merged_facts(db, ans.counterexample), h);
      if (!out.generalized) {
        dead = true;
        break;
      }
      hypothesis = out.clause;
      res.hypothesis_history.push_back({hypothesis});
    }
  }
  res.stats.seconds = seconds_since(start);
  return res;  // all recursive literals marked
}

namespace {

// The teacher's basecase oracle (or a decision rule) grounded at the
// description of the counterexample being forced.
BasecaseOracle oracle_for(const ExtendedInstance& cex, PoolTeacher& teacher,
                          const InstanceBasecaseRule& rule) {
  std::vector<Fact> desc = cex.description;
  if (rule)
    return [desc, &rule](const Fact& g) { return rule(make_instance(g, desc)); };
  return [desc, &teacher](const Fact& g) { return teacher.basecase(make_instance(g, desc)); };
}

}  // namespace

LearnResult force2(int d, const Declaration& dec, const Database& db, PoolTeacher& teacher,
                   const InstanceBasecaseRule& rule, const LearnOptions& opts) {
  auto start = Clock::now();
  BottomClause bottom = bottom_star(d, dec);
  std::vector<std::vector<Literal>> candidates = enumerate_recursive_literals(bottom, dec, 1);
  LearnResult res;
  std::uint64_t cap = query_cap(candidates.size(), bottom.clause.body.size());

  for (std::size_t step = 0; step < candidates.size(); ++step) {
    std::size_t ci = (opts.first_candidate + step) % std::max<std::size_t>(candidates.size(), 1);
    ++res.stats.candidates_tried;
    Clause hr = bottom.clause;
    hr.body.push_back(candidates[ci][0]);
    Clause hb = bottom.clause;
    res.hypothesis_history.clear();
    res.hypothesis_history.push_back({hr, hb});
    bool dead = false;

    auto force_positive = [&](const ExtendedInstance& e) {
      std::uint64_t h = auto_budget(dec, db.size(), e.size(), opts.budget_ceiling);
      SimOutcome out = force_sim2(hr, hb, e.fact, dec, merged_facts(db, e), h,
                                  oracle_for(e, teacher, rule));
      if (!out.generalized) return false;
      if (out.clause != hr || *out.base != hb) {
        hr = out.clause;
        hb = *out.base;
        res.hypothesis_history.push_back({hr, hb});
      }
      return true;
    };
    auto pair_covers = [&](const ExtendedInstance& e) {
      std::vector<Clause> program{hr, hb};
      std::uint64_t h = auto_budget(dec, db.size(), e.size(), opts.budget_ceiling);
      return covers(program, db, e, ProofBudget::memo(h));
    };

    if (opts.replay_log) {
      for (const auto& logged : res.counterexamples) {
        if (!logged.positive) continue;
        if (!force_positive(logged.instance)) {
          dead = true;
          break;
        }
      }
      for (const auto& logged : res.counterexamples) {
        if (dead) break;
        if (!logged.positive && pair_covers(logged.instance)) dead = true;
      }
    }

    while (!dead) {
      ++res.stats.queries;
      check_cap(res.stats, cap);
      std::vector<Clause> program{hr, hb};
      EqAnswer ans = teacher.equivalence(program);
      if (ans.yes) {
        res.identified = true;
        res.hypothesis = {hr, hb};
        res.stats.seconds = seconds_since(start);
        return res;
      }
      res.counterexamples.push_back({ans.counterexample, ans.positive});
      if (!ans.positive) {
        dead = true;
        break;
      }
      if (!force_positive(ans.counterexample)) {
        dead = true;
        break;
      }
    }
  }
  res.stats.seconds = seconds_since(start);
  return res;
}

LearnResult force2_with_rules(int d, const Declaration& dec, const Database& db,
                              PoolTeacher& teacher, const std::vector<NamedRule>& rules,
                              const LearnOptions& opts) {
  auto start = Clock::now();
  LearnResult total;
  for (const auto& named : rules) {
    LearnResult run = force2(d, dec, db, teacher, named.rule, opts);
    total.stats.queries += run.stats.queries;
    total.stats.candidates_tried += run.stats.candidates_tried;
    for (auto& c : run.counterexamples) total.counterexamples.push_back(std::move(c));
    if (run.identified) {
      total.identified = true;
      total.hypothesis = std::move(run.hypothesis);
      total.hypothesis_history = std::move(run.hypothesis_history);
      break;
    }
  }
  total.stats.seconds = seconds_since(start);
  return total;
}

NamedRule nulllist_rule(const Database& db) {
  auto rule = [db](const ExtendedInstance& e) {
    Database merged = db.merged_with(e.description);
    for (const auto& arg : e.fact.args) {
      Literal probe{kComponentsPred, {}};
      probe.args.push_back(Term::constant(arg.name));
      probe.args.push_back(Term::variable("__H"));
      probe.args.push_back(Term::variable("__T"));
      if (!merged.match_all(probe, Substitution{}).empty()) return false;  // a non-null list
    }
    return true;
  };
  return NamedRule{"nulllist", rule};
}

std::vector<Clause> s_set(int d, const Declaration& dec, const Database& db,
                          std::span<const ExtendedInstance> positives,
                          std::span<const ExtendedInstance> negatives, std::size_t k,
                          const LearnOptions& opts) {
  BottomClause bottom = bottom_star(d, dec);
  std::vector<std::vector<Literal>> candidates = enumerate_recursive_literals(bottom, dec, k);
  std::vector<Clause> out;
  for (const auto& tuple : candidates) {
    Clause h = bottom.clause;
    for (const auto& lit : tuple) h.body.push_back(lit);
    bool ok = true;
    for (const auto& e : positives) {
      std::uint64_t budget = auto_budget(dec, db.size(), e.size(), opts.budget_ceiling);
      SimOutcome sim = force_sim(h, e.fact, dec, merged_facts(db, e), budget);
      if (!sim.generalized) {
        ok = false;
        break;
      }
      h = sim.clause;
    }
    if (!ok) continue;
    for (const auto& e : negatives) {
      std::uint64_t budget = auto_budget(dec, db.size(), e.size(), opts.budget_ceiling);
      if (covers(h, db, e, ProofBudget::memo(budget))) {
        ok = false;
        break;
      }
    }
    if (ok && std::find(out.begin(), out.end(), h) == out.end()) out.push_back(h);
  }
  return out;
}

}  // namespace forcelearn
