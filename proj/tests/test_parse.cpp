#include <doctest.h>

#include "forcelearn/errors.hpp"
#include "forcelearn/flatten.hpp"
#include "forcelearn/interpret.hpp"
#include "forcelearn/parse.hpp"
#include "forcelearn/transform.hpp"
#include "oracles.hpp"

using namespace forcelearn;
namespace ts = forcelearn::testsupport;

TEST_CASE("declaration files round-trip") {
  std::string text =
      "head: append/3\n"
      "mode: components(+,-,-)\n"
      "mode: components(+,+,-)\n"
      "mode: null(+)\n"
      "mode: append(+,+,+)\n";
  Declaration dec = parse_declaration(text);
  CHECK(dec.to_string() == text);
  CHECK(parse_declaration(dec.to_string()) == dec);
}

TEST_CASE("clause and program round-trips preserve body order") {
  std::string text =
      "append(Xs,Ys,Ys) :- null(Xs).\n"
      "append(Xs,Ys,Zs) :- components(Xs,X,Xs1), components(Zs,X,Zs1), append(Xs1,Ys,Zs1).\n";
  std::vector<Clause> program = parse_program(text);
  REQUIRE(program.size() == 2);
  CHECK(program[1].body[0].pred == "components");
  CHECK(serialize_program(program) == text);
  CHECK(parse_program(serialize_program(program)) == program);
}

TEST_CASE("facts files ignore comments and canonicalize") {
  Database db = parse_database("% family\nmother(ann, tom).\nfather(bob,tom). % trailing\n");
  CHECK(db.size() == 2);
  CHECK(parse_database(db.to_string()) == db);
  CHECK(parse_database("").size() == 0);
}

TEST_CASE("instance files round-trip") {
  std::string text =
      "fact: append(l12,l3,l123).\n"
      "desc:\n"
      "components(l12,1,l2).\n"
      "components(l2,2,nil).\n"
      "label: +\n"
      "fact: append(nil,nil,nil).\n"
      "label: -\n";
  std::vector<ExtendedInstance> instances = parse_instances(text);
  REQUIRE(instances.size() == 2);
  CHECK(instances[0].description.size() == 2);
  CHECK(instances[0].label == std::optional<bool>(true));
  CHECK(instances[1].description.empty());
  CHECK(instances[1].label == std::optional<bool>(false));
  CHECK(parse_instances(serialize_instances(instances)) == instances);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_program("p(X) :- q(X)\nr(Y).");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 1);  // the clause misses its dot; `r` starts line 2
  }
  try {
    parse_database("mother(X,tom).");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
  }
  CHECK_THROWS_AS(parse_declaration("mode: q(+)\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("desc:\nq(a).\n"), ParseError);
}

TEST_CASE("flatten rewrites the worked append example") {
  TermExample ex = parse_term_example("append([1,2],[3],[1,2,3]).");
  ExtendedInstance inst = flatten(ex);
  CHECK(inst.fact == ts::fact("append(l12,l3,l123)"));
  std::vector<Fact> expected = parse_facts(
      "components(l12,1,l2). components(l2,2,nil). components(l123,1,l23). "
      "components(l23,2,l3). components(l3,3,nil).");
  std::sort(expected.begin(), expected.end());
  CHECK(inst.description == expected);

  ExtendedInstance base = flatten(parse_term_example("append([],[3],[3])."));
  CHECK(base.fact == ts::fact("append(nil,l3,l3)"));
  CHECK(base.description == parse_facts("components(l3,3,nil)."));

  ExtendedInstance empty = flatten(parse_term_example("append([],[],[])."));
  CHECK(empty.fact == ts::fact("append(nil,nil,nil)"));
  CHECK(empty.description.empty());
}

TEST_CASE("flatten shares constants between identical sublists") {
  ExtendedInstance inst = flatten(parse_term_example("p([3],[2,3])."));
  CHECK(inst.fact == ts::fact("p(l3,l23)"));
  // [3] appears once standalone and once as the tail of [2,3]
  CHECK(inst.description == parse_facts("components(l3,3,nil). components(l23,2,l3)."));
}

TEST_CASE("flatten disambiguates colliding names deterministically") {
  ExtendedInstance inst = flatten(parse_term_example("p([1,23],[12,3])."));
  CHECK(inst.fact.args[0].name != inst.fact.args[1].name);
}

TEST_CASE("flatten handles nested lists and rejects other functors") {
  ExtendedInstance inst = flatten(parse_term_example("p([[1],2])."));
  // the nested list [1] becomes a constant that heads the outer list
  bool found = false;
  for (const auto& f : inst.description)
    if (f.pred == kComponentsPred && f.args[1].name == "l1") found = true;
  CHECK(found);
  CHECK_THROWS_AS(parse_term_example("p(f(1))."), NonListFunctor);
  CHECK_THROWS_AS(parse_term_example("p([X])."), ParseError);
}

TEST_CASE("base-fact patterns instantiate against the instance fact") {
  Clause pattern = parse_clause("append(nil,Ys,Ys).");
  ExtendedInstance inst =
      flatten(parse_term_example("append([1,2],[3],[1,2,3])."), pattern.head, true);
  bool found = false;
  for (const auto& f : inst.description)
    if (f == ts::fact("append(nil,l3,l3)")) found = true;
  CHECK(found);
  CHECK(inst.label == std::optional<bool>(true));
}

TEST_CASE("flattening is faithful to term-level append") {
  // exhaustive over xs, ys of length <= 2 and zs of length <= 4 over {1,2}
  auto lists_le2 = std::vector<std::vector<std::string>>();
  auto lists_le4 = std::vector<std::vector<std::string>>();
  std::vector<std::vector<std::string>> frontier{{}};
  for (int len = 0; len <= 4; ++len) {
    for (const auto& l : frontier) {
      if (l.size() <= 2) lists_le2.push_back(l);
      lists_le4.push_back(l);
    }
    std::vector<std::vector<std::string>> next;
    for (const auto& l : frontier)
      if (l.size() == std::size_t(len))
        for (const std::string& a : {"1", "2"}) {
          auto n = l;
          n.push_back(a);
          next.push_back(std::move(n));
        }
    frontier = std::move(next);
  }

  std::vector<Clause> program = ts::append_two_clause_target();
  Database db = ts::append_db();
  std::size_t checked = 0;
  for (const auto& xs : lists_le2)
    for (const auto& ys : lists_le2)
      for (const auto& zs : lists_le4) {
        TermExample ex;
        ex.pred = "append";
        auto mk = [](const std::vector<std::string>& items) {
          ListTerm t;
          t.is_list = true;
          for (const auto& a : items) {
            ListTerm i;
            i.atom = a;
            t.items.push_back(i);
          }
          return t;
        };
        ex.args = {mk(xs), mk(ys), mk(zs)};
        ExtendedInstance inst =
            transform_instance(flatten(ex), RenameTable{}, /*add_equalities=*/true);
        auto correct = xs;
        correct.insert(correct.end(), ys.begin(), ys.end());
        bool expected = (correct == zs);
        std::uint64_t h = auto_budget(ts::append_dec(), db.size(), inst.size());
        CHECK(covers(program, db, inst, ProofBudget::memo(h)) == expected);
        ++checked;
      }
  CHECK(checked == lists_le2.size() * lists_le2.size() * lists_le4.size());
}
