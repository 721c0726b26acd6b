#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "forcelearn/bottom.hpp"
#include "forcelearn/forcesim.hpp"
#include "forcelearn/teacher.hpp"

namespace forcelearn {

struct LearnStats {
  std::uint64_t queries = 0;
  std::uint64_t candidates_tried = 0;
  double seconds = 0.0;
};

struct LoggedCounterexample {
  ExtendedInstance instance;
  bool positive = false;
};

struct LearnResult {
  bool identified = false;
  std::vector<Clause> hypothesis;  // one clause, or (recursive, base)
  LearnStats stats;
  std::vector<LoggedCounterexample> counterexamples;

  // Snapshot of each hypothesis update under the final candidate, for the
  // monotone-specialization checks.
  std::vector<Clause> hypothesis_history;
};

struct LearnOptions {
  std::uint64_t budget_ceiling = kDefaultBudgetCeiling;
  // Candidate tried first (rotation point); enumeration order is unchanged.
  std::size_t first_candidate = 0;
  // Replay logged counterexamples against each fresh candidate before
  // querying the teacher again.
  bool replay_log = true;
};

// Fig. 1: repeatedly generalize BOTTOM*_d by forced simulation; any negative
// counterexample or simulation failure ends the run.
LearnResult force1_nr(int d, const Declaration& dec, const Database& db, PoolTeacher& teacher,
                      const LearnOptions& opts = {});

// Fig. 5 (k = 1) and its k-ary extension: candidate recursive-literal tuples
// are marked off on negative counterexamples or simulation failure.
LearnResult force1(int d, const Declaration& dec, const Database& db, PoolTeacher& teacher,
                   std::size_t k = 1, const LearnOptions& opts = {});

// An instance-level basecase oracle; the learner grounds it per subgoal.
using InstanceBasecaseRule = std::function<bool(const ExtendedInstance&)>;

// Fig. 6: learn a (recursive, base) pair with a basecase oracle. When `rule`
// is empty the teacher's basecase oracle is used.
LearnResult force2(int d, const Declaration& dec, const Database& db, PoolTeacher& teacher,
                   const InstanceBasecaseRule& rule = nullptr, const LearnOptions& opts = {});

struct NamedRule {
  std::string name;
  InstanceBasecaseRule rule;
};

// Case 3: run force2 under each decision rule until one identifies.
LearnResult force2_with_rules(int d, const Declaration& dec, const Database& db,
                              PoolTeacher& teacher, const std::vector<NamedRule>& rules,
                              const LearnOptions& opts = {});

// Case 2 rule: the base clause applies when no argument of the instance fact
// is a non-null list, i.e. no argument heads a components fact in DB u D.
NamedRule nulllist_rule(const Database& db);

// The S-set of the version space: for every candidate recursive literal,
// fold force_sim over the positives and drop survivors covering a negative.
std::vector<Clause> s_set(int d, const Declaration& dec, const Database& db,
                          std::span<const ExtendedInstance> positives,
                          std::span<const ExtendedInstance> negatives, std::size_t k = 1,
                          const LearnOptions& opts = {});

// Hard ceiling on equivalence queries: (p + 1) * (|BOTTOM*| + 2).
std::uint64_t query_cap(std::size_t candidate_count, std::size_t bottom_body_size);

}  // namespace forcelearn
