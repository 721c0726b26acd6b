#include "forcelearn/teacher.hpp"

#include <algorithm>

#include "forcelearn/errors.hpp"
#include "forcelearn/forcesim.hpp"

namespace forcelearn {

std::optional<std::size_t> TargetSpec::base_clause_index() const {
  if (program.size() < 2) return std::nullopt;
  for (std::size_t i = 0; i < program.size(); ++i)
    if (recursive_positions(program[i]).empty()) return i;
  return std::nullopt;
}

TargetSpec load_target(std::vector<Clause> program, Database db,
                       std::vector<ExtendedInstance> pool, const Declaration& dec,
                       std::uint64_t ceiling) {
  TargetSpec target{std::move(program), std::move(db), std::move(pool)};
  std::sort(target.pool.begin(), target.pool.end(),
            [](const ExtendedInstance& a, const ExtendedInstance& b) {
              return std::make_pair(a.size(), a.to_string()) <
                     std::make_pair(b.size(), b.to_string());
            });
  for (auto& inst : target.pool) {
    std::uint64_t h = auto_budget(dec, target.db.size(), inst.size(), ceiling);
    bool covered = covers(target.program, target.db, inst, ProofBudget::memo(h));
    if (inst.label && *inst.label != covered)
      throw PoolLabelMismatch("pool instance " + inst.fact.to_string() + " labeled " +
                              (*inst.label ? "+" : "-") + " but target says " +
                              (covered ? "+" : "-"));
    inst.label = covered;
  }
  return target;
}

TeacherPolicy TeacherPolicy::parse(const std::string& text) {
  TeacherPolicy p;
  if (text == "exhaustive") {
    p.kind = Kind::ExhaustiveSmallestFirst;
    return p;
  }
  if (text.rfind("random:", 0) == 0) {
    p.kind = Kind::RandomSeeded;
    p.seed = std::stoull(text.substr(7));
    return p;
  }
  if (text.rfind("pac:", 0) == 0) {
    std::size_t colon = text.find(':', 4);
    if (colon != std::string::npos) {
      p.kind = Kind::PacSampling;
      p.sample_size = std::stoull(text.substr(4, colon - 4));
      p.seed = std::stoull(text.substr(colon + 1));
      return p;
    }
  }
  throw Error("unknown teacher policy: " + text + " (want exhaustive|random:SEED|pac:M:SEED)");
}

std::string TeacherPolicy::to_string() const {
  switch (kind) {
    case Kind::ExhaustiveSmallestFirst: return "exhaustive";
    case Kind::RandomSeeded: return "random:" + std::to_string(seed);
    case Kind::PacSampling:
      return "pac:" + std::to_string(sample_size) + ":" + std::to_string(seed);
  }
  return "?";
}

PoolTeacher::PoolTeacher(TargetSpec target, const Declaration& dec, TeacherPolicy policy,
                         std::uint64_t budget_ceiling)
    : target_(std::move(target)), dec_(dec), policy_(policy), ceiling_(budget_ceiling),
      rng_(policy.seed) {}

bool PoolTeacher::hypothesis_covers(std::span<const Clause> hypothesis,
                                    const ExtendedInstance& inst) const {
  std::uint64_t h = auto_budget(dec_, target_.db.size(), inst.size(), ceiling_);
  return covers(hypothesis, target_.db, inst, ProofBudget::memo(h));
}

EqAnswer PoolTeacher::answer_for(std::size_t pool_index, bool hyp_covers) const {
  const ExtendedInstance& inst = target_.pool[pool_index];
  EqAnswer ans;
  ans.yes = false;
  ans.counterexample = inst;
  ans.positive = *inst.label && !hyp_covers;
  // Teacher honesty: the instance must sit in the symmetric difference.
  if (*inst.label == hyp_covers)
    throw InternalError("teacher picked a non-counterexample");
  return ans;
}

EqAnswer PoolTeacher::equivalence(std::span<const Clause> hypothesis) {
  ++queries_;
  switch (policy_.kind) {
    case TeacherPolicy::Kind::ExhaustiveSmallestFirst: {
      for (std::size_t i = 0; i < target_.pool.size(); ++i) {
        bool hc = hypothesis_covers(hypothesis, target_.pool[i]);
        if (hc != *target_.pool[i].label) return answer_for(i, hc);
      }
      return EqAnswer{true, {}, false};
    }
    case TeacherPolicy::Kind::RandomSeeded: {
      std::vector<std::size_t> order(target_.pool.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng_() % i]);
      for (std::size_t i : order) {
        bool hc = hypothesis_covers(hypothesis, target_.pool[i]);
        if (hc != *target_.pool[i].label) return answer_for(i, hc);
      }
      return EqAnswer{true, {}, false};
    }
    case TeacherPolicy::Kind::PacSampling: {
      if (target_.pool.empty()) return EqAnswer{true, {}, false};
      for (std::size_t draw = 0; draw < policy_.sample_size; ++draw) {
        std::size_t i = rng_() % target_.pool.size();
        bool hc = hypothesis_covers(hypothesis, target_.pool[i]);
        if (hc != *target_.pool[i].label) return answer_for(i, hc);
      }
      return EqAnswer{true, {}, false};
    }
  }
  throw InternalError("unreachable teacher policy");
}

bool PoolTeacher::membership(const Fact& f, std::span<const Fact> description) const {
  ExtendedInstance inst =
      make_instance(f, std::vector<Fact>(description.begin(), description.end()));
  std::uint64_t h = auto_budget(dec_, target_.db.size(), inst.size(), ceiling_);
  return covers(target_.program, target_.db, inst, ProofBudget::memo(h));
}

bool PoolTeacher::basecase(const ExtendedInstance& instance) const {
  std::optional<std::size_t> base = target_.base_clause_index();
  if (!base)
    throw NoBaseClause("basecase query against a target without a nonrecursive base clause");
  std::uint64_t h = auto_budget(dec_, target_.db.size(), instance.size(), ceiling_);
  return covers(target_.program[*base], target_.db, instance, ProofBudget::memo(h));
}

}  // namespace forcelearn
