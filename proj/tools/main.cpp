// forcelearn command line: bottom-clause construction, forced simulation,
// identification from a pooled teacher, the teach line protocol, coverage
// checks, list flattening and the equality/unique-mode transforms.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "forcelearn/bottom.hpp"
#include "forcelearn/errors.hpp"
#include "forcelearn/flatten.hpp"
#include "forcelearn/forcesim.hpp"
#include "forcelearn/learner.hpp"
#include "forcelearn/parse.hpp"
#include "forcelearn/teacher.hpp"
#include "forcelearn/transform.hpp"

using namespace forcelearn;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    spit(path, text);
}

int exit_code_for(const LearnResult& res) { return res.identified ? 0 : 1; }

void print_result(const LearnResult& res) {
  if (res.identified) {
    std::cout << "identified\n" << serialize_program(res.hypothesis);
  } else {
    std::cout << "no consistent hypothesis\n";
  }
  std::cout << "queries: " << res.stats.queries
            << "\ncandidates tried: " << res.stats.candidates_tried << "\nwall seconds: "
            << res.stats.seconds << "\n";
}

void print_trace(const SimOutcome& out) {
  for (const auto& level : out.trace) {
    std::cout << "subgoal " << level.subgoal.to_string() << " sigma " << level.sigma.to_string()
              << "\n";
    if (!level.deleted_positions.empty()) {
      std::cout << "  deleted body positions:";
      for (std::size_t p : level.deleted_positions) std::cout << ' ' << p;
      std::cout << "\n";
    }
  }
}

// Line protocol of the `teach` subcommand. Requests are EQ / BASECASE blocks
// terminated by a line holding a single '.', or one-line MEMBER queries.
int run_teach_protocol(PoolTeacher& teacher, std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream head(line);
    std::string verb;
    head >> verb;
    try {
      if (verb == "QUIT") return 0;
      if (verb == "EQ" || verb == "BASECASE") {
        std::ostringstream block;
        std::string body_line;
        while (std::getline(in, body_line) && body_line != ".") block << body_line << '\n';
        if (verb == "EQ") {
          std::vector<Clause> hyp = parse_program(block.str());
          EqAnswer ans = teacher.equivalence(hyp);
          if (ans.yes) {
            out << "YES\n";
          } else {
            out << "CEX " << (ans.positive ? '+' : '-') << "\n"
                << ans.counterexample.to_string() << ".\n";
          }
        } else {
          ExtendedInstance inst = parse_instance(block.str());
          out << (teacher.basecase(inst) ? "YES" : "NO") << "\n";
        }
      } else if (verb == "MEMBER") {
        std::string rest;
        std::getline(head, rest);
        Fact f = parse_fact(rest);
        out << (teacher.membership(f, {}) ? "YES" : "NO") << "\n";
      } else {
        out << "ERR unknown request " << verb << "\n";
      }
      out.flush();
    } catch (const Error& e) {
      out << "ERR " << e.what() << "\n";
      out.flush();
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"function-free logic program learner based on forced simulation"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  std::uint64_t ceiling = kDefaultBudgetCeiling;
  app.add_option("--seed", seed, "seed for seeded teacher policies");
  app.add_option("--budget-ceiling", ceiling, "saturation ceiling for depth bounds");

  // bottom
  auto* cmd_bottom = app.add_subcommand("bottom", "print BOTTOM*_d for a declaration");
  std::string dec_path, out_path;
  int depth = 1;
  cmd_bottom->add_option("--dec", dec_path, "declaration file")->required();
  cmd_bottom->add_option("--depth", depth, "number of DEEPEN rounds")->required();
  cmd_bottom->add_option("--out", out_path, "output file (default stdout)");

  // forcesim
  auto* cmd_sim = app.add_subcommand("forcesim", "forcibly simulate a clause on an instance");
  std::string sim_clause, sim_instance, sim_dec, sim_db;
  std::int64_t sim_budget = -1;
  bool sim_auto_budget = false;
  cmd_sim->add_option("--clause", sim_clause, "clause file")->required();
  cmd_sim->add_option("--instance", sim_instance, "instance file")->required();
  cmd_sim->add_option("--dec", sim_dec, "declaration file")->required();
  cmd_sim->add_option("--db", sim_db, "facts file")->required();
  cmd_sim->add_option("--budget", sim_budget, "depth bound");
  cmd_sim->add_flag("--auto-budget", sim_auto_budget, "use (a|D| + a|DB|)^a'");

  // learn
  auto* cmd_learn = app.add_subcommand("learn", "identify a program from a pooled teacher");
  std::string algo, learn_dec, learn_db, learn_pool, learn_target, basecase_rule, policy_text =
      "exhaustive";
  int learn_depth = 1;
  std::size_t learn_k = 1;
  cmd_learn->add_option("--algo", algo, "force1nr|force1|force2|forcek")->required();
  cmd_learn->add_option("--depth", learn_depth, "DEEPEN rounds")->required();
  cmd_learn->add_option("--k", learn_k, "recursion arity for forcek");
  cmd_learn->add_option("--dec", learn_dec, "declaration file")->required();
  cmd_learn->add_option("--db", learn_db, "facts file")->required();
  cmd_learn->add_option("--pool", learn_pool, "labeled instance pool")->required();
  cmd_learn->add_option("--target", learn_target,
                        "target program file (label check; basecase oracle for force2)");
  cmd_learn->add_option("--basecase-rule", basecase_rule,
                        "nulllist, or a clause file evaluated as the base clause");
  cmd_learn->add_option("--policy", policy_text, "exhaustive|random:SEED|pac:M:SEED");

  // sset
  auto* cmd_sset = app.add_subcommand("sset", "version-space S-set over a labeled pool");
  std::string sset_dec, sset_db, sset_pool;
  int sset_depth = 1;
  std::size_t sset_k = 1;
  cmd_sset->add_option("--depth", sset_depth, "DEEPEN rounds")->required();
  cmd_sset->add_option("--k", sset_k, "recursion arity");
  cmd_sset->add_option("--dec", sset_dec, "declaration file")->required();
  cmd_sset->add_option("--db", sset_db, "facts file")->required();
  cmd_sset->add_option("--pool", sset_pool, "labeled instance pool")->required();

  // teach
  auto* cmd_teach = app.add_subcommand("teach", "serve the teacher line protocol on stdio");
  std::string teach_target, teach_db, teach_pool, teach_dec, teach_policy = "exhaustive";
  cmd_teach->add_option("--target", teach_target, "target program file")->required();
  cmd_teach->add_option("--db", teach_db, "facts file")->required();
  cmd_teach->add_option("--pool", teach_pool, "instance pool")->required();
  cmd_teach->add_option("--dec", teach_dec, "declaration file")->required();
  cmd_teach->add_option("--policy", teach_policy, "exhaustive|random:SEED|pac:M:SEED");

  // eval
  auto* cmd_eval = app.add_subcommand("eval", "check whether a program covers an instance");
  std::string eval_program, eval_db, eval_instance, eval_dec;
  std::int64_t eval_budget = -1;
  bool eval_depth_only = false;
  cmd_eval->add_option("--program", eval_program, "program file")->required();
  cmd_eval->add_option("--db", eval_db, "facts file")->required();
  cmd_eval->add_option("--instance", eval_instance, "instance file")->required();
  cmd_eval->add_option("--dec", eval_dec, "declaration file (for the auto budget)");
  cmd_eval->add_option("--budget", eval_budget, "depth bound (default: ceiling)");
  cmd_eval->add_flag("--depth-only", eval_depth_only, "disable the visited memo");

  // flatten
  auto* cmd_flatten = app.add_subcommand("flatten", "term examples to extended instances");
  std::string flatten_in, flatten_base, flatten_label, flatten_out;
  cmd_flatten->add_option("--in", flatten_in, "file of term examples, one per line")->required();
  cmd_flatten->add_option("--base-fact", flatten_base,
                          "base-case fact pattern instantiated into each description");
  cmd_flatten->add_option("--label", flatten_label, "label every instance (+ or -)");
  cmd_flatten->add_option("--out", flatten_out, "output file (default stdout)");

  // transform
  auto* cmd_transform = app.add_subcommand("transform", "equality/unique-mode transforms");
  std::string tr_action, tr_db, tr_dec, tr_clause, tr_rename;
  std::string tr_out_db, tr_out_dec, tr_out_rename, tr_out_clause;
  cmd_transform->add_option("action", tr_action, "augment|split|unsplit")->required();
  cmd_transform->add_option("--db", tr_db, "facts file");
  cmd_transform->add_option("--dec", tr_dec, "declaration file");
  cmd_transform->add_option("--clause", tr_clause, "clause file (unsplit)");
  cmd_transform->add_option("--rename", tr_rename, "rename table file (unsplit)");
  cmd_transform->add_option("--out-db", tr_out_db, "output facts file");
  cmd_transform->add_option("--out-dec", tr_out_dec, "output declaration file");
  cmd_transform->add_option("--out-rename", tr_out_rename, "output rename table");
  cmd_transform->add_option("--out", tr_out_clause, "output clause file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_bottom) {
      Declaration dec = parse_declaration(slurp(dec_path));
      BottomClause bc = bottom_star(depth, dec);
      emit(out_path, bc.clause.to_string() + "\n");
      return 0;
    }

    if (*cmd_sim) {
      Declaration dec = parse_declaration(slurp(sim_dec));
      Database db = parse_database(slurp(sim_db));
      ExtendedInstance inst = parse_instance(slurp(sim_instance));
      std::vector<Clause> clauses = parse_program(slurp(sim_clause));
      Database merged = db.merged_with(inst.description);
      std::uint64_t budget = sim_auto_budget
                                 ? auto_budget(dec, db.size(), inst.size(), ceiling)
                                 : (sim_budget < 0 ? ceiling : std::uint64_t(sim_budget));
      if (clauses.size() != 1) throw Error("forcesim expects a single clause");
      SimOutcome out = recursive_positions(clauses[0]).empty()
                           ? force_sim_nr(clauses[0], inst.fact, dec, merged)
                           : force_sim(clauses[0], inst.fact, dec, merged, budget);
      if (!out.generalized) {
        print_trace(out);
        std::cout << "failure: " << to_string(out.failure) << "\n";
        return 1;
      }
      print_trace(out);
      std::cout << out.clause.to_string() << "\n";
      return 0;
    }

    if (*cmd_learn || *cmd_sset || *cmd_teach) {
      std::string dec_file = *cmd_learn ? learn_dec : (*cmd_sset ? sset_dec : teach_dec);
      std::string db_file = *cmd_learn ? learn_db : (*cmd_sset ? sset_db : teach_db);
      std::string pool_file = *cmd_learn ? learn_pool : (*cmd_sset ? sset_pool : teach_pool);
      Declaration dec = parse_declaration(slurp(dec_file));
      Database db = parse_database(slurp(db_file));
      std::vector<ExtendedInstance> pool = parse_instances(slurp(pool_file));

      if (*cmd_sset) {
        std::vector<ExtendedInstance> pos, neg;
        for (auto& e : pool) {
          if (!e.label) throw Error("sset pool instances need labels");
          (*e.label ? pos : neg).push_back(e);
        }
        LearnOptions opts;
        opts.budget_ceiling = ceiling;
        std::vector<Clause> survivors = s_set(sset_depth, dec, db, pos, neg, sset_k, opts);
        std::cout << serialize_program(survivors);
        return 0;
      }

      std::string target_file = *cmd_learn ? learn_target : teach_target;
      std::vector<Clause> target_program;
      if (!target_file.empty()) target_program = parse_program(slurp(target_file));
      if (target_program.empty()) {
        // Labels are ground truth; represent the target by its labeled pool.
        for (const auto& e : pool)
          if (!e.label) throw Error("pool instances need labels when no --target is given");
      }
      TargetSpec target;
      if (!target_program.empty()) {
        target = load_target(target_program, db, pool, dec, ceiling);
      } else {
        target.program = {};
        target.db = db;
        target.pool = pool;
        std::sort(target.pool.begin(), target.pool.end(),
                  [](const ExtendedInstance& a, const ExtendedInstance& b) {
                    return std::make_pair(a.size(), a.to_string()) <
                           std::make_pair(b.size(), b.to_string());
                  });
      }
      TeacherPolicy policy = TeacherPolicy::parse(*cmd_learn ? policy_text : teach_policy);
      if (policy.kind != TeacherPolicy::Kind::ExhaustiveSmallestFirst && policy.seed == 0)
        policy.seed = seed;
      PoolTeacher teacher(std::move(target), dec, policy, ceiling);

      if (*cmd_teach) return run_teach_protocol(teacher, std::cin, std::cout);

      LearnOptions opts;
      opts.budget_ceiling = ceiling;
      LearnResult res;
      if (algo == "force1nr") {
        res = force1_nr(learn_depth, dec, db, teacher, opts);
      } else if (algo == "force1") {
        res = force1(learn_depth, dec, db, teacher, 1, opts);
      } else if (algo == "forcek") {
        res = force1(learn_depth, dec, db, teacher, learn_k, opts);
      } else if (algo == "force2") {
        if (basecase_rule.empty()) {
          res = force2(learn_depth, dec, db, teacher, nullptr, opts);
        } else if (basecase_rule == "nulllist") {
          res = force2_with_rules(learn_depth, dec, db, teacher, {nulllist_rule(db)}, opts);
        } else {
          std::vector<Clause> rule_program = parse_program(slurp(basecase_rule));
          InstanceBasecaseRule rule = [rule_program, db, dec,
                                       ceiling](const ExtendedInstance& e) {
            std::uint64_t h = auto_budget(dec, db.size(), e.size(), ceiling);
            return covers(rule_program, db, e, ProofBudget::memo(h));
          };
          res = force2(learn_depth, dec, db, teacher, rule, opts);
        }
      } else {
        throw Error("unknown algorithm: " + algo);
      }
      print_result(res);
      return exit_code_for(res);
    }

    if (*cmd_eval) {
      std::vector<Clause> program = parse_program(slurp(eval_program));
      Database db = parse_database(slurp(eval_db));
      ExtendedInstance inst = parse_instance(slurp(eval_instance));
      std::uint64_t budget = ceiling;
      if (eval_budget >= 0) {
        budget = std::uint64_t(eval_budget);
      } else if (!eval_dec.empty()) {
        Declaration dec = parse_declaration(slurp(eval_dec));
        budget = auto_budget(dec, db.size(), inst.size(), ceiling);
      }
      ProofBudget pb{budget, eval_depth_only ? MemoPolicy::DepthOnly : MemoPolicy::VisitedMemo, 0};
      CoverDiag diag;
      bool covered = covers(program, db, inst, pb, &diag);
      std::cout << (covered ? "covered" : "not covered") << "\n";
      if (!covered && diag.has_failure)
        std::cout << "deepest failing literal: " << diag.failed_literal.to_string() << " (clause "
                  << diag.failed_clause << ", body position " << diag.failed_body_index << ")\n";
      if (diag.budget_exceeded) std::cout << "note: depth budget was exhausted on some path\n";
      return 0;
    }

    if (*cmd_flatten) {
      std::istringstream in(slurp(flatten_in));
      std::optional<Literal> base;
      if (!flatten_base.empty()) {
        Clause c = parse_clause(flatten_base + (flatten_base.back() == '.' ? "" : "."));
        base = c.head;
      }
      std::optional<bool> label;
      if (flatten_label == "+") label = true;
      if (flatten_label == "-") label = false;
      std::ostringstream out;
      std::string line;
      while (std::getline(in, line)) {
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '%') continue;
        TermExample ex = parse_term_example(line);
        out << flatten(ex, base, label).to_string();
      }
      emit(flatten_out, out.str());
      return 0;
    }

    if (*cmd_transform) {
      if (tr_action == "augment") {
        Database db = parse_database(slurp(tr_db));
        Declaration dec = parse_declaration(slurp(tr_dec));
        auto [db2, dec2] = augment_equality(db, dec);
        emit(tr_out_db, db2.to_string());
        emit(tr_out_dec, dec2.to_string());
      } else if (tr_action == "split") {
        Database db = parse_database(slurp(tr_db));
        Declaration dec = parse_declaration(slurp(tr_dec));
        auto [db2, dec2, renames] = split_modes(db, dec);
        emit(tr_out_db, db2.to_string());
        emit(tr_out_dec, dec2.to_string());
        emit(tr_out_rename, renames.to_string());
      } else if (tr_action == "unsplit") {
        Clause clause = parse_clause(slurp(tr_clause));
        RenameTable renames = RenameTable::from_string(slurp(tr_rename));
        emit(tr_out_clause, unsplit_clause(clause, renames).to_string() + "\n");
      } else {
        throw Error("unknown transform action: " + tr_action);
      }
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal invariant breach: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
