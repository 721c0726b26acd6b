#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "forcelearn/clause.hpp"
#include "forcelearn/database.hpp"
#include "forcelearn/decl.hpp"

namespace forcelearn {

inline constexpr std::uint64_t kDefaultBudgetCeiling = 2147483647ull;  // 2^31-1

enum class MemoPolicy {
  DepthOnly,     // plain depth-bounded SLD proof
  VisitedMemo,   // ancestor loop check plus a table of settled subgoals
};

struct ProofBudget {
  std::uint64_t depth = kDefaultBudgetCeiling;
  MemoPolicy policy = MemoPolicy::VisitedMemo;
  std::uint64_t node_limit = 0;  // 0 = unlimited

  static ProofBudget depth_only(std::uint64_t h) { return {h, MemoPolicy::DepthOnly, 0}; }
  static ProofBudget memo(std::uint64_t h = kDefaultBudgetCeiling) {
    return {h, MemoPolicy::VisitedMemo, 0};
  }
};

// base^exp with saturation at `ceiling`.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t ceiling);

// The per-counterexample depth bound (a|D| + a|DB|)^a' used by the learners,
// saturated at `ceiling`.
std::uint64_t auto_budget(const Declaration& dec, std::size_t db_size, std::size_t desc_size,
                          std::uint64_t ceiling = kDefaultBudgetCeiling);

struct CoverDiag {
  bool budget_exceeded = false;
  bool node_limit_hit = false;
  std::uint64_t nodes = 0;
  // Deepest literal failure seen, for failure-trace assertions.
  bool has_failure = false;
  Literal failed_literal;       // grounded form
  std::size_t failed_clause = 0;
  std::size_t failed_body_index = 0;
  std::size_t failed_depth = 0;
};

// Most general s' binding exactly the unbound variables of `literal` under
// `sigma` such that literal.sigma.s' is in db. Throws DeterminacyViolation if
// two distinct maximal bindings exist.
std::optional<Substitution> lookup_mgs(const Literal& literal, const Substitution& sigma,
                                       const Database& db);

// DB ^ D ^ P |- f within the budget. Database lookup is a depth-0 proof.
// BudgetExceeded is reported only through `diag`; the boolean treats it as
// not covered.
bool covers(std::span<const Clause> program, const Database& db, const ExtendedInstance& instance,
            const ProofBudget& budget, CoverDiag* diag = nullptr);

bool covers(const Clause& clause, const Database& db, const ExtendedInstance& instance,
            const ProofBudget& budget, CoverDiag* diag = nullptr);

}  // namespace forcelearn
