#include <doctest.h>

#include "forcelearn/errors.hpp"
#include "forcelearn/parse.hpp"
#include "forcelearn/teacher.hpp"
#include "oracles.hpp"

using namespace forcelearn;
namespace ts = forcelearn::testsupport;

namespace {

PoolTeacher family_teacher(TeacherPolicy policy = {}) {
  TargetSpec target = load_target({ts::family_target()}, ts::family_db(), ts::family_pool(),
                                  ts::family_dec());
  return PoolTeacher(std::move(target), ts::family_dec(), policy);
}

}  // namespace

TEST_CASE("load_target fills labels and rejects mismatches") {
  auto pool = ts::family_pool();
  TargetSpec target =
      load_target({ts::family_target()}, ts::family_db(), pool, ts::family_dec());
  std::size_t positives = 0;
  for (const auto& e : target.pool) {
    REQUIRE(e.label.has_value());
    if (*e.label) ++positives;
  }
  // (bob,bob) (bob,sue) (carl,carl) (carl,dan) (dan,carl) (dan,dan)
  CHECK(positives == 6);

  auto bad = ts::family_pool();
  bad[0].label = !covers(ts::family_target(), ts::family_db(), bad[0], ProofBudget::memo());
  CHECK_THROWS_AS(load_target({ts::family_target()}, ts::family_db(), bad, ts::family_dec()),
                  PoolLabelMismatch);
}

TEST_CASE("equivalence answers yes exactly on pool agreement") {
  PoolTeacher teacher = family_teacher();
  std::vector<Clause> same{ts::family_target()};
  CHECK(teacher.equivalence(same).yes);

  // a hypothesis missing the male test covers extra pairs: negative example
  std::vector<Clause> broader{
      ts::clause("p(A,B) :- mother(A,C), father(A,D), mother(B,C), father(B,D).")};
  EqAnswer ans = teacher.equivalence(broader);
  CHECK_FALSE(ans.yes);
  CHECK_FALSE(ans.positive);

  // an unsatisfiable hypothesis misses every positive: positive example
  std::vector<Clause> narrower{ts::clause("p(A,B) :- mother(A,C), mother(C,A).")};
  EqAnswer pos = teacher.equivalence(narrower);
  CHECK_FALSE(pos.yes);
  CHECK(pos.positive);
}

TEST_CASE("exhaustive policy is deterministic and smallest-first") {
  PoolTeacher t1 = family_teacher();
  PoolTeacher t2 = family_teacher();
  std::vector<Clause> hyp{ts::clause("p(A,B) :- male(A).")};
  EqAnswer a1 = t1.equivalence(hyp);
  EqAnswer a2 = t2.equivalence(hyp);
  REQUIRE_FALSE(a1.yes);
  CHECK(a1.counterexample == a2.counterexample);
  CHECK(a1.positive == a2.positive);
}

TEST_CASE("random policy is reproducible per seed") {
  TeacherPolicy p = TeacherPolicy::parse("random:42");
  PoolTeacher t1 = family_teacher(p);
  PoolTeacher t2 = family_teacher(p);
  std::vector<Clause> hyp{ts::clause("p(A,B) :- male(A).")};
  CHECK(t1.equivalence(hyp).counterexample == t2.equivalence(hyp).counterexample);
}

TEST_CASE("membership queries run the target interpreter") {
  TargetSpec target = load_target({ts::append_recursive_target()},
                                  ts::append_db().merged_with(ts::append_equalities()),
                                  {ts::append_instance_eq()}, ts::append_dec());
  PoolTeacher teacher(std::move(target), ts::append_dec(), {});
  std::vector<Fact> d = ts::append_instance_eq().description;
  CHECK(teacher.membership(ts::fact("append(l2,l3,l23)"), d));
  CHECK_FALSE(teacher.membership(ts::fact("append(l2,l3,l3)"), d));
  CHECK(teacher.membership(ts::fact("components(l2,2,nil)"), d));  // f in D, depth 0
}

TEST_CASE("basecase queries use the nonrecursive clause alone") {
  Database db = ts::append_db().merged_with(ts::append_equalities());
  TargetSpec target = load_target(ts::append_two_clause_target(), db,
                                  ts::append_pool_two_clause(), ts::append_dec());
  PoolTeacher teacher(std::move(target), ts::append_dec(), {});
  std::vector<Fact> desc;
  for (const auto& f : ts::append_description())
    if (f.pred != "append") desc.push_back(f);
  CHECK(teacher.basecase(make_instance(ts::fact("append(nil,l3,l3)"), desc)));
  CHECK_FALSE(teacher.basecase(make_instance(ts::append_fact(), desc)));
  // f in D is a depth-0 proof regardless of the base clause
  CHECK(teacher.basecase(make_instance(ts::fact("components(l2,2,nil)"), desc)));

  TargetSpec single = load_target({ts::append_recursive_target()}, db,
                                  {ts::append_instance_eq()}, ts::append_dec());
  PoolTeacher one(std::move(single), ts::append_dec(), {});
  CHECK_THROWS_AS(one.basecase(make_instance(ts::fact("append(nil,l3,l3)"), desc)),
                  NoBaseClause);
}

TEST_CASE("pac sampling accepts at roughly the miss rate of the sample") {
  // hypothesis disagrees on 3 of 64 pool instances (rate ~0.047)
  TargetSpec target =
      load_target({ts::less_than_target()}, ts::less_than_db(), ts::less_than_pool(),
                  ts::less_than_dec());
  std::vector<Clause> hyp{ts::clause("less_than(A,B) :- successor(A,B).")};
  std::size_t disagreements = 0;
  for (const auto& e : target.pool) {
    bool hc = covers(hyp[0], target.db, e, ProofBudget::memo());
    if (hc != *e.label) ++disagreements;
  }
  double rate = double(disagreements) / double(target.pool.size());
  REQUIRE(rate > 0.0);

  const std::size_t m = 40;
  const int trials = 400;
  int yes = 0;
  for (int t = 0; t < trials; ++t) {
    TeacherPolicy p;
    p.kind = TeacherPolicy::Kind::PacSampling;
    p.sample_size = m;
    p.seed = 1000 + t;
    PoolTeacher teacher(target, ts::less_than_dec(), p);
    if (teacher.equivalence(hyp).yes) ++yes;
  }
  double expected = std::pow(1.0 - rate, double(m));
  double got = double(yes) / trials;
  // within four standard deviations of the binomial mean, seed-pinned
  double sd = std::sqrt(expected * (1 - expected) / trials);
  CHECK(std::abs(got - expected) < 4 * sd + 0.02);
}
