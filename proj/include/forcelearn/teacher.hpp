#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "forcelearn/clause.hpp"
#include "forcelearn/database.hpp"
#include "forcelearn/decl.hpp"
#include "forcelearn/interpret.hpp"

namespace forcelearn {

// A known target program plus the pool of labeled instances that serves as
// the universe of discourse for equivalence queries.
struct TargetSpec {
  std::vector<Clause> program;  // one or two clauses
  Database db;
  std::vector<ExtendedInstance> pool;  // sorted by (|D|, serialization) at load

  // Index of the nonrecursive base clause; nullopt for single-clause targets.
  std::optional<std::size_t> base_clause_index() const;
};

// Verifies pool labels against the program with the auto budget, fills in
// missing labels, and sorts the pool canonically. Throws PoolLabelMismatch.
TargetSpec load_target(std::vector<Clause> program, Database db,
                       std::vector<ExtendedInstance> pool, const Declaration& dec,
                       std::uint64_t ceiling = kDefaultBudgetCeiling);

struct TeacherPolicy {
  enum class Kind { ExhaustiveSmallestFirst, RandomSeeded, PacSampling };
  Kind kind = Kind::ExhaustiveSmallestFirst;
  std::uint64_t seed = 0;
  std::size_t sample_size = 0;  // PacSampling only

  // "exhaustive" | "random:SEED" | "pac:M:SEED"
  static TeacherPolicy parse(const std::string& text);
  std::string to_string() const;
};

struct EqAnswer {
  bool yes = false;
  ExtendedInstance counterexample;
  bool positive = false;  // target covers it, hypothesis does not
};

class PoolTeacher {
 public:
  PoolTeacher(TargetSpec target, const Declaration& dec, TeacherPolicy policy,
              std::uint64_t budget_ceiling = kDefaultBudgetCeiling);

  EqAnswer equivalence(std::span<const Clause> hypothesis);
  bool membership(const Fact& f, std::span<const Fact> description) const;
  bool basecase(const ExtendedInstance& instance) const;

  const TargetSpec& target() const { return target_; }
  std::uint64_t queries_answered() const { return queries_; }

 private:
  bool hypothesis_covers(std::span<const Clause> hypothesis, const ExtendedInstance& inst) const;
  EqAnswer answer_for(std::size_t pool_index, bool hyp_covers) const;

  TargetSpec target_;
  Declaration dec_;
  TeacherPolicy policy_;
  std::uint64_t ceiling_;
  std::mt19937_64 rng_;
  std::uint64_t queries_ = 0;
};

}  // namespace forcelearn
