#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "forcelearn/bottom.hpp"
#include "forcelearn/errors.hpp"
#include "forcelearn/flatten.hpp"
#include "forcelearn/forcesim.hpp"
#include "forcelearn/learner.hpp"
#include "forcelearn/parse.hpp"
#include "forcelearn/teacher.hpp"
#include "forcelearn/transform.hpp"

namespace py = pybind11;
using namespace forcelearn;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Function-free logic-program engine and forced-simulation learner";

  py::register_exception<DeterminacyViolation>(m, "DeterminacyViolation");
  py::register_exception<PredicateCollision>(m, "PredicateCollision");
  py::register_exception<EmbeddingFailure>(m, "EmbeddingFailure");
  py::register_exception<PoolLabelMismatch>(m, "PoolLabelMismatch");
  py::register_exception<NoBaseClause>(m, "NoBaseClause");
  py::register_exception<NonListFunctor>(m, "NonListFunctor");
  py::register_exception<ParseError>(m, "ParseError");

  py::class_<Term>(m, "Term")
      .def_static("variable", &Term::variable)
      .def_static("constant", &Term::constant)
      .def_readonly("is_var", &Term::var)
      .def_readonly("name", &Term::name)
      .def("__repr__", [](const Term& t) { return t.name; })
      .def(py::self == py::self);

  py::class_<Literal>(m, "Literal")
      .def(py::init<std::string, std::vector<Term>>())
      .def_readonly("pred", &Literal::pred)
      .def_readonly("args", &Literal::args)
      .def("arity", &Literal::arity)
      .def("ground", &Literal::ground)
      .def("__repr__", &Literal::to_string)
      .def(py::self == py::self);

  py::class_<Clause>(m, "Clause")
      .def_readonly("head", &Clause::head)
      .def_readonly("body", &Clause::body)
      .def("__repr__", &Clause::to_string)
      .def(py::self == py::self);

  py::class_<ModeString>(m, "ModeString")
      .def(py::init<std::string, std::string>())
      .def_readonly("pred", &ModeString::pred)
      .def_readonly("io", &ModeString::io)
      .def("__repr__", &ModeString::to_string)
      .def(py::self == py::self);

  py::class_<Declaration>(m, "Declaration")
      .def_readonly("head_pred", &Declaration::head_pred)
      .def_readonly("head_arity", &Declaration::head_arity)
      .def_readonly("modes", &Declaration::modes)
      .def("unique_mode", &Declaration::unique_mode)
      .def("has_equality_mode", &Declaration::has_equality_mode)
      .def("__repr__", &Declaration::to_string);

  py::class_<Database>(m, "Database")
      .def(py::init<std::vector<Fact>>())
      .def("facts", &Database::facts)
      .def("size", &Database::size)
      .def("contains", &Database::contains)
      .def("constants", &Database::constants)
      .def("__repr__", &Database::to_string);

  py::class_<ExtendedInstance>(m, "ExtendedInstance")
      .def_readonly("fact", &ExtendedInstance::fact)
      .def_readonly("description", &ExtendedInstance::description)
      .def_readonly("label", &ExtendedInstance::label)
      .def("size", &ExtendedInstance::size)
      .def("__repr__", &ExtendedInstance::to_string);
  m.def("make_instance", &make_instance, py::arg("fact"), py::arg("description"),
        py::arg("label") = std::nullopt);

  py::class_<Substitution>(m, "Substitution")
      .def(py::init<>())
      .def("bindings", &Substitution::bindings)
      .def("__repr__", &Substitution::to_string);

  // parsing / serialization
  m.def("parse_fact", &parse_fact);
  m.def("parse_database", &parse_database);
  m.def("parse_clause", &parse_clause);
  m.def("parse_program", &parse_program);
  m.def("parse_declaration", &parse_declaration);
  m.def("parse_instance", &parse_instance);
  m.def("parse_instances", &parse_instances);
  m.def("serialize_program",
        [](const std::vector<Clause>& p) { return serialize_program(p); });

  // clause analysis
  m.def("literal_mode", &literal_mode);
  m.def("variable_depths", [](const Clause& c) {
    DepthInfo d = variable_depths(c);
    return std::make_pair(d.variable_depth, d.clause_depth);
  });
  m.def("satisfies_declaration", &satisfies_declaration);
  m.def("is_determinate_mode", [](const ModeString& m, const Database& db) {
    return is_determinate_mode(m, db.facts());
  });
  m.def("is_subclause", &is_subclause);
  m.def("support_closure", &support_closure);

  // interpreter
  py::class_<ProofBudget>(m, "ProofBudget")
      .def_static("depth_only", &ProofBudget::depth_only)
      .def_static("memo", &ProofBudget::memo, py::arg("h") = kDefaultBudgetCeiling);
  m.def("auto_budget", &auto_budget, py::arg("dec"), py::arg("db_size"), py::arg("desc_size"),
        py::arg("ceiling") = kDefaultBudgetCeiling);
  m.def(
      "covers",
      [](const std::vector<Clause>& program, const Database& db, const ExtendedInstance& inst,
         const ProofBudget& budget) { return covers(program, db, inst, budget); },
      py::arg("program"), py::arg("db"), py::arg("instance"),
      py::arg("budget") = ProofBudget::memo());
  m.def("lookup_mgs", &lookup_mgs);

  // bottom clauses
  py::class_<BottomClause>(m, "BottomClause")
      .def_readonly("clause", &BottomClause::clause)
      .def_readonly("depth", &BottomClause::depth)
      .def("deepen_outputs", &BottomClause::deepen_outputs)
      .def("__repr__", [](const BottomClause& b) { return b.clause.to_string(); });
  m.def("deepen", &deepen);
  m.def("constrain", &constrain);
  m.def("bottom_star", &bottom_star);
  m.def("enumerate_recursive_literals", &enumerate_recursive_literals, py::arg("bottom"),
        py::arg("dec"), py::arg("k") = 1, py::arg("include_head_literal") = false);
  m.def("embed_subclause", &embed_subclause);

  // forced simulation
  py::class_<LevelTrace>(m, "LevelTrace")
      .def_readonly("subgoal", &LevelTrace::subgoal)
      .def_readonly("deleted_positions", &LevelTrace::deleted_positions)
      .def_readonly("sigma", &LevelTrace::sigma);
  py::class_<SimOutcome>(m, "SimOutcome")
      .def_readonly("generalized", &SimOutcome::generalized)
      .def_readonly("clause", &SimOutcome::clause)
      .def_readonly("base", &SimOutcome::base)
      .def_readonly("trace", &SimOutcome::trace)
      .def_property_readonly("failure",
                             [](const SimOutcome& s) { return to_string(s.failure); });
  m.def("force_sim_nr", &force_sim_nr);
  m.def("force_sim", &force_sim);
  m.def("force_sim2", &force_sim2);

  // transforms
  py::class_<RenameTable>(m, "RenameTable")
      .def_readonly("split_to_orig", &RenameTable::split_to_orig)
      .def("__repr__", &RenameTable::to_string)
      .def_static("from_string", &RenameTable::from_string);
  m.def("augment_equality", &augment_equality);
  m.def("split_modes", &split_modes);
  m.def("unsplit_clause", &unsplit_clause);
  m.def("transform_instance", &transform_instance);

  // teacher
  py::class_<TeacherPolicy>(m, "TeacherPolicy")
      .def_static("parse", &TeacherPolicy::parse)
      .def("__repr__", &TeacherPolicy::to_string);
  py::class_<TargetSpec>(m, "TargetSpec")
      .def_readonly("program", &TargetSpec::program)
      .def_readonly("pool", &TargetSpec::pool);
  m.def("load_target", &load_target, py::arg("program"), py::arg("db"), py::arg("pool"),
        py::arg("dec"), py::arg("ceiling") = kDefaultBudgetCeiling);
  py::class_<EqAnswer>(m, "EqAnswer")
      .def_readonly("yes", &EqAnswer::yes)
      .def_readonly("counterexample", &EqAnswer::counterexample)
      .def_readonly("positive", &EqAnswer::positive);
  py::class_<PoolTeacher>(m, "PoolTeacher")
      .def(py::init<TargetSpec, const Declaration&, TeacherPolicy, std::uint64_t>(),
           py::arg("target"), py::arg("dec"), py::arg("policy"),
           py::arg("budget_ceiling") = kDefaultBudgetCeiling)
      .def("equivalence",
           [](PoolTeacher& t, const std::vector<Clause>& hyp) { return t.equivalence(hyp); })
      .def("membership",
           [](const PoolTeacher& t, const Fact& f, const std::vector<Fact>& d) {
             return t.membership(f, d);
           })
      .def("basecase", &PoolTeacher::basecase)
      .def("queries_answered", &PoolTeacher::queries_answered);

  // learners
  py::class_<LearnStats>(m, "LearnStats")
      .def_readonly("queries", &LearnStats::queries)
      .def_readonly("candidates_tried", &LearnStats::candidates_tried)
      .def_readonly("seconds", &LearnStats::seconds);
  py::class_<LearnResult>(m, "LearnResult")
      .def_readonly("identified", &LearnResult::identified)
      .def_readonly("hypothesis", &LearnResult::hypothesis)
      .def_readonly("stats", &LearnResult::stats);
  py::class_<LearnOptions>(m, "LearnOptions")
      .def(py::init<>())
      .def_readwrite("budget_ceiling", &LearnOptions::budget_ceiling)
      .def_readwrite("first_candidate", &LearnOptions::first_candidate)
      .def_readwrite("replay_log", &LearnOptions::replay_log);
  m.def("force1_nr", &force1_nr, py::arg("d"), py::arg("dec"), py::arg("db"), py::arg("teacher"),
        py::arg("opts") = LearnOptions{});
  m.def("force1", &force1, py::arg("d"), py::arg("dec"), py::arg("db"), py::arg("teacher"),
        py::arg("k") = 1, py::arg("opts") = LearnOptions{});
  m.def(
      "force2",
      [](int d, const Declaration& dec, const Database& db, PoolTeacher& teacher,
         const LearnOptions& opts) { return force2(d, dec, db, teacher, nullptr, opts); },
      py::arg("d"), py::arg("dec"), py::arg("db"), py::arg("teacher"),
      py::arg("opts") = LearnOptions{});
  m.def(
      "force2_nulllist",
      [](int d, const Declaration& dec, const Database& db, PoolTeacher& teacher,
         const LearnOptions& opts) {
        return force2_with_rules(d, dec, db, teacher, {nulllist_rule(db)}, opts);
      },
      py::arg("d"), py::arg("dec"), py::arg("db"), py::arg("teacher"),
      py::arg("opts") = LearnOptions{});
  m.def(
      "s_set",
      [](int d, const Declaration& dec, const Database& db,
         const std::vector<ExtendedInstance>& pos, const std::vector<ExtendedInstance>& neg,
         std::size_t k, const LearnOptions& opts) {
        return s_set(d, dec, db, pos, neg, k, opts);
      },
      py::arg("d"), py::arg("dec"), py::arg("db"), py::arg("positives"), py::arg("negatives"),
      py::arg("k") = 1, py::arg("opts") = LearnOptions{});
  m.def("query_cap", &query_cap);

  // flattening
  py::class_<TermExample>(m, "TermExample")
      .def_readonly("pred", &TermExample::pred);
  m.def("parse_term_example", &parse_term_example);
  m.def("flatten", &flatten, py::arg("example"), py::arg("base_fact") = std::nullopt,
        py::arg("label") = std::nullopt);
}
