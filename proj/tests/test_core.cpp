#include <doctest.h>

#include <random>

#include "forcelearn/clause.hpp"
#include "forcelearn/database.hpp"
#include "forcelearn/decl.hpp"
#include "forcelearn/errors.hpp"
#include "forcelearn/parse.hpp"
#include "oracles.hpp"

using namespace forcelearn;
namespace ts = forcelearn::testsupport;

TEST_CASE("literal modes of the append program") {
  Clause rec = ts::clause(
      "append(Xs,Ys,Zs) :- components(Xs,X,Xs1), components(Zs,X,Zs1), append(Xs1,Ys,Zs1).");
  CHECK(literal_mode(rec, 0).to_string() == "components+--");
  CHECK(literal_mode(rec, 1).to_string() == "components++-");
  CHECK(literal_mode(rec, 2).to_string() == "append+++");

  Clause simple = ts::clause("p(X) :- q(X).");
  CHECK(literal_mode(simple, 0).to_string() == "q+");
}

TEST_CASE("constants in body arguments count as inputs") {
  Clause c = ts::clause("p(X) :- q(a,Y).");
  CHECK(literal_mode(c, 0).to_string() == "q+-");
}

TEST_CASE("variable depths") {
  Clause lt = ts::clause("less_than(A,B) :- successor(A,C), less_than(C,B).");
  DepthInfo d = variable_depths(lt);
  CHECK(d.variable_depth.at("C") == 1);
  CHECK(d.clause_depth == 1);

  Clause choose = ts::clause(
      "choose(A,B,C) :- decrement(B,D), decrement(A,E), multiply(B,C,G), divide(G,A,F), "
      "choose(E,D,F).");
  CHECK(variable_depths(choose).clause_depth == 2);

  Clause unit = ts::clause("p(X,Y).");
  CHECK(variable_depths(unit).clause_depth == 0);

  // head variables are exactly the depth-0 variables
  for (const Clause& c : {lt, choose, ts::family_target()}) {
    DepthInfo info = variable_depths(c);
    std::vector<std::string> heads = head_variables(c);
    for (const auto& [v, depth] : info.variable_depth) {
      bool in_head = std::find(heads.begin(), heads.end(), v) != heads.end();
      CHECK((depth == 0) == in_head);
    }
  }

  // a literal with no input variables gives its outputs depth 1
  Clause orphan = ts::clause("p(X) :- gen(Y), q(Y).");
  CHECK(variable_depths(orphan).variable_depth.at("Y") == 1);
}

TEST_CASE("satisfies_declaration") {
  Declaration dec = parse_declaration(
      "head: append/3\n"
      "mode: components(+,-,-)\n"
      "mode: components(+,+,-)\n"
      "mode: components(+,-,+)\n"
      "mode: components(-,+,+)\n"
      "mode: components(+,+,+)\n"
      "mode: null(+)\n"
      "mode: append(+,+,-)\n"
      "mode: append(+,-,+)\n"
      "mode: append(-,+,+)\n"
      "mode: append(+,+,+)\n");
  Clause base = ts::clause("append(Xs,Ys,Ys) :- null(Xs).");
  Clause rec = ts::clause(
      "append(Xs,Ys,Zs) :- components(Xs,X,Xs1), components(Zs,X,Zs1), append(Xs1,Ys,Zs1).");
  CHECK(satisfies_declaration(base, dec));
  CHECK(satisfies_declaration(rec, dec));

  Declaration weaker = dec;
  std::erase(weaker.modes, ModeString{"components", "+--"});
  CHECK_FALSE(satisfies_declaration(rec, weaker));

  Clause empty = ts::clause("append(A,B,C).");
  CHECK(satisfies_declaration(empty, dec));

  Clause wrong_head = ts::clause("prepend(A,B,C).");
  CHECK_FALSE(satisfies_declaration(wrong_head, dec));
}

TEST_CASE("declaration flags") {
  Declaration dec = ts::append_dec();
  CHECK(dec.unique_mode());
  CHECK(dec.has_equality_mode());
  dec.modes.push_back(ModeString{"components", "++-"});
  CHECK_FALSE(dec.unique_mode());
  CHECK(ts::less_than_dec().unique_mode());
  CHECK_FALSE(ts::less_than_dec().has_equality_mode());
  CHECK_FALSE(ts::even_dist_dec().unique_mode());
}

TEST_CASE("is_determinate_mode") {
  std::vector<Fact> d = ts::append_description();
  CHECK(is_determinate_mode(ModeString{"components", "+--"}, d));
  CHECK(is_determinate_mode(ModeString{kEqualPred, "++"}, d));

  std::vector<Fact> shared_head =
      parse_facts("components(l1,a,t). components(l2,a,u).");
  CHECK(is_determinate_mode(ModeString{"components", "+--"}, shared_head));
  CHECK_FALSE(is_determinate_mode(ModeString{"components", "-+-"}, shared_head));
}

TEST_CASE("is_subclause") {
  Clause whole = ts::clause("p(X,Y) :- a(X), b(Y), c(X,Y).");
  Clause sub = ts::clause("p(X,Y) :- a(X), c(X,Y).");
  Clause reversed = ts::clause("p(X,Y) :- c(X,Y), a(X).");
  CHECK(is_subclause(whole, whole));
  CHECK(is_subclause(sub, whole));
  CHECK_FALSE(is_subclause(reversed, whole));
  CHECK_FALSE(is_subclause(whole, sub));
  Clause other_head = ts::clause("p(A,B) :- a(A).");
  CHECK_FALSE(is_subclause(other_head, whole));
}

TEST_CASE("support closure") {
  Clause chain = ts::clause("p(X) :- q(X,Y), r(Y,Z), s(Z), t(X).");
  std::set<std::size_t> closure = support_closure(chain, 0);
  CHECK(closure == std::set<std::size_t>{1, 2});
  CHECK(support_closure(chain, 3).empty());

  // no output variables, nothing supported
  Clause flat = ts::clause("p(X) :- q(X), r(X).");
  CHECK(support_closure(flat, 0).empty());
}

TEST_CASE("substitution composition requires disjoint domains") {
  Substitution a, b, c;
  a.bind("X", "c1");
  b.bind("Y", "c2");
  c.bind("X", "c3");
  Substitution ab = a.compose(b);
  CHECK(ab.size() == 2);
  CHECK(*ab.lookup("X") == "c1");
  CHECK(*ab.lookup("Y") == "c2");
  CHECK_THROWS_AS(a.compose(c), InternalError);
}

TEST_CASE("normalize_determinate_duplicates merges same-key literals") {
  Clause c = ts::clause("p(X) :- r(X,A), r(X,B), m(B).");
  Clause n = normalize_determinate_duplicates(c);
  CHECK(n == ts::clause("p(X) :- r(X,A), m(A)."));
  // idempotent on clean clauses
  CHECK(normalize_determinate_duplicates(n) == n);
}

TEST_CASE("database index agrees with the linear scan") {
  std::mt19937_64 rng(7);
  std::vector<std::string> consts{"a", "b", "c"};
  std::vector<Fact> facts;
  for (int i = 0; i < 40; ++i) {
    Fact f{rng() % 2 ? "q" : "r", {}};
    std::size_t arity = 1 + rng() % 2;
    for (std::size_t j = 0; j < arity; ++j)
      f.args.push_back(Term::constant(consts[rng() % consts.size()]));
    facts.push_back(std::move(f));
  }
  Database db(facts);
  std::vector<Literal> patterns = {
      Literal{"q", {Term::variable("X"), Term::variable("Y")}},
      Literal{"q", {Term::constant("a"), Term::variable("Y")}},
      Literal{"q", {Term::variable("X"), Term::variable("X")}},
      Literal{"r", {Term::variable("X")}},
      Literal{"r", {Term::constant("b"), Term::constant("c")}},
  };
  for (const auto& p : patterns) {
    Substitution empty;
    CHECK(db.match_all(p, empty) == db.scan_match(p, empty));
    Substitution bound;
    bound.bind("X", "a");
    CHECK(db.match_all(p, bound) == db.scan_match(p, bound));
  }
}

TEST_CASE("database size is cardinality and serialization is canonical") {
  Database db1 = parse_database("b(x). a(y). a(y). b(x).");
  CHECK(db1.size() == 2);
  Database db2 = parse_database("a(y). b(x).");
  CHECK(db1.to_string() == db2.to_string());
  CHECK(db1 == db2);
}
