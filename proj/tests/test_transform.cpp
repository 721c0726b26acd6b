#include <doctest.h>

#include "forcelearn/errors.hpp"
#include "forcelearn/interpret.hpp"
#include "forcelearn/parse.hpp"
#include "forcelearn/transform.hpp"
#include "oracles.hpp"

using namespace forcelearn;
namespace ts = forcelearn::testsupport;

TEST_CASE("augment_equality adds one reflexive fact per constant") {
  Database db = parse_database("r(a,b).");
  Declaration dec;
  dec.head_pred = "p";
  dec.head_arity = 1;
  dec.modes = {ModeString{"r", "+-"}};
  auto [db2, dec2] = augment_equality(db, dec);
  CHECK(db2.contains(ts::fact("equal(a,a)")));
  CHECK(db2.contains(ts::fact("equal(b,b)")));
  CHECK(db2.size() == 3);
  CHECK(dec2.has_equality_mode());

  Database empty;
  auto [db3, dec3] = augment_equality(empty, dec);
  CHECK(db3.size() == 0);
  CHECK(dec3.has_equality_mode());

  // the worked flattened-append setting has nine constants
  Database appended = ts::append_db().merged_with(ts::append_description());
  auto [db4, dec4] = augment_equality(appended, ts::append_dec());
  CHECK(db4.size() == appended.size() + 9);

  Database clash = parse_database("equal(a,b).");
  CHECK_THROWS_AS(augment_equality(clash, dec), PredicateCollision);
}

TEST_CASE("split_modes gives every mode its own predicate") {
  Database db = parse_database("q(a,b). r(a).");
  Declaration dec;
  dec.head_pred = "p";
  dec.head_arity = 1;
  dec.modes = {ModeString{"q", "+-"}, ModeString{"q", "++"}, ModeString{"r", "+"},
               ModeString{"p", "+"}};
  auto [db2, dec2, renames] = split_modes(db, dec);
  CHECK(dec2.unique_mode());
  CHECK(db2.contains(ts::fact("q__io(a,b)")));
  CHECK(db2.contains(ts::fact("q__ii(a,b)")));
  CHECK_FALSE(db2.contains(ts::fact("q(a,b)")));
  CHECK(db2.contains(ts::fact("r__i(a)")));
  CHECK(db2.size() == 3);
  CHECK(renames.split_to_orig.at("q__io") == std::make_pair(std::string("q"), std::string("+-")));
  // the head predicate keeps its name
  CHECK(dec2.modes.back() == ModeString{"p", "+"});

  // single-mode predicates are renamed without fact duplication
  Declaration single;
  single.head_pred = "p";
  single.head_arity = 1;
  single.modes = {ModeString{"r", "+"}};
  auto [db3, dec3, renames3] = split_modes(parse_database("r(a). r(b)."), single);
  CHECK(db3.size() == 2);
  CHECK(renames3.split_to_orig.size() == 1);
}

TEST_CASE("rename tables round-trip through text") {
  auto [db2, dec2, renames] = split_modes(ts::even_dist_db(), ts::even_dist_dec());
  (void)db2;
  (void)dec2;
  RenameTable back = RenameTable::from_string(renames.to_string());
  CHECK(back == renames);
}

TEST_CASE("unsplit_clause restores the paper's equivalent pairs") {
  Declaration d0 = ts::family_dec();
  RenameTable no_renames;

  // D1 -> C1
  Clause d1 = ts::clause(
      "p(X,Y) :- mother(X,XM), father(X,XF), mother(Y,YM), father(Y,YF), male(X), "
      "equal(XM,YM), equal(XF,YF).");
  Clause c1 = unsplit_clause(d1, no_renames);
  CHECK(ts::alpha_equal(c1, ts::family_target()));

  // D2 -> C2
  Clause d2 = ts::clause("p(X,Y) :- father(X,XF), female(X), equal(XF,Y).");
  Clause c2 = unsplit_clause(d2, no_renames);
  CHECK(ts::alpha_equal(c2, ts::clause("p(X,Y) :- father(X,Y), female(X).")));

  // identity on clauses without equal literals or split names
  Clause plain = ts::clause("p(X,Y) :- mother(X,M).");
  CHECK(unsplit_clause(plain, no_renames) == plain);

  // unsplitting resolves reflexive equalities away entirely
  Clause refl = ts::clause("p(X,Y) :- equal(X,X), mother(X,M), equal(M,M).");
  CHECK(unsplit_clause(refl, no_renames) == ts::clause("p(X,Y) :- mother(X,M)."));

  // extensional equivalence of the resolved clause over the family pool
  Database db = ts::family_db();
  for (const auto& inst : ts::family_pool()) {
    CHECK(covers(d1, db, inst, ProofBudget::memo()) == covers(c1, db, inst, ProofBudget::memo()));
    CHECK(covers(d2, db, inst, ProofBudget::memo()) == covers(c2, db, inst, ProofBudget::memo()));
  }
}

TEST_CASE("transform_instance splits descriptions and injects equalities") {
  Declaration dec;
  dec.head_pred = "p";
  dec.head_arity = 1;
  dec.modes = {ModeString{"q", "+-"}, ModeString{"q", "++"}};
  auto [db2, dec2, renames] = split_modes(Database{}, dec);
  (void)db2;
  (void)dec2;
  ExtendedInstance inst = ts::instance_of("p(a)", {"q(a,b)"});
  ExtendedInstance out = transform_instance(inst, renames, true);
  CHECK(std::find(out.description.begin(), out.description.end(), ts::fact("q__io(a,b)")) !=
        out.description.end());
  CHECK(std::find(out.description.begin(), out.description.end(), ts::fact("q__ii(a,b)")) !=
        out.description.end());
  CHECK(std::find(out.description.begin(), out.description.end(), ts::fact("equal(a,a)")) !=
        out.description.end());
  CHECK(std::find(out.description.begin(), out.description.end(), ts::fact("equal(b,b)")) !=
        out.description.end());
  CHECK(std::find(out.description.begin(), out.description.end(), ts::fact("q(a,b)")) ==
        out.description.end());
}
