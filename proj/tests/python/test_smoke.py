"""Smoke tests for the Python module and the CLI surfaces."""

import os
import shutil
import subprocess
import textwrap

import pytest

fl = pytest.importorskip("forcelearn")

APPEND_DEC = textwrap.dedent(
    """
    head: append/3
    mode: components(+,-,-)
    mode: null(+)
    mode: equal(+,+)
    mode: odd(+)
    mode: append(+,+,+)
    """
)

APPEND_DB = "null(nil). odd(1). odd(3)."

APPEND_INSTANCE = textwrap.dedent(
    """
    fact: append(l12,l3,l123).
    desc:
    components(l123,1,l23). components(l23,2,l3). components(l3,3,nil).
    components(l12,1,l2). components(l2,2,nil).
    append(nil,l3,l3).
    equal(l12,l12). equal(l2,l2). equal(l123,l123). equal(l23,l23). equal(l3,l3).
    equal(nil,nil). equal(1,1). equal(2,2). equal(3,3).
    """
)


def test_parse_and_modes():
    dec = fl.parse_declaration(APPEND_DEC)
    assert dec.head_pred == "append"
    assert dec.unique_mode() and dec.has_equality_mode()
    clause = fl.parse_clause(
        "append(Xs,Ys,Zs) :- components(Xs,X,Xs1), components(Zs,X,Zs1), append(Xs1,Ys,Zs1)."
    )
    assert str(fl.literal_mode(clause, 0)) == "components+--"
    assert str(fl.literal_mode(clause, 1)) == "components++-"
    depths, clause_depth = fl.variable_depths(clause)
    assert clause_depth == 1 and depths["Xs1"] == 1


def test_bottom_and_forcesim():
    dec = fl.parse_declaration(APPEND_DEC)
    bottom = fl.bottom_star(1, dec)
    assert len(bottom.clause.body) == 3 + 9 + 81 + 9
    candidates = fl.enumerate_recursive_literals(bottom, dec, 1)
    assert len(candidates) == 9**3 - 1

    instance = fl.parse_instance(APPEND_INSTANCE)
    db = fl.parse_database(APPEND_DB)
    merged = fl.Database(db.facts() + instance.description)

    xs1 = bottom.deepen_outputs(fl.ModeString("components", "+--"), ["X1"])[1]
    zs1 = bottom.deepen_outputs(fl.ModeString("components", "+--"), ["X3"])[1]
    start = fl.parse_clause(
        str(bottom.clause)[:-1]
        + ", append(%s,X2,%s)." % (xs1, zs1)
    )
    budget = fl.auto_budget(dec, merged.size(), 0)
    out = fl.force_sim(start, instance.fact, dec, merged, budget)
    assert out.generalized
    assert len(out.trace) == 2
    assert fl.covers([out.clause], db, instance)
    assert fl.is_subclause(out.clause, start)


def test_learning_less_than():
    dec = fl.parse_declaration(
        "head: less_than/2\nmode: successor(+,-)\nmode: less_than(+,+)\n"
    )
    facts = []
    for i in range(1, 8):
        facts.append("successor(%d,%d)." % (i, i + 1))
        facts.append("less_than(%d,%d)." % (i, i + 1))
    db = fl.parse_database("\n".join(facts))
    pool_text = []
    for i in range(1, 9):
        for j in range(1, 9):
            pool_text.append(
                "fact: less_than(%d,%d).\nlabel: %s" % (i, j, "+" if i < j else "-")
            )
    pool = fl.parse_instances("\n".join(pool_text))
    target = fl.load_target(
        [fl.parse_clause("less_than(A,B) :- successor(A,C), less_than(C,B).")],
        db,
        pool,
        dec,
    )
    teacher = fl.PoolTeacher(target, dec, fl.TeacherPolicy.parse("exhaustive"))
    result = fl.force1(1, dec, db, teacher)
    assert result.identified
    assert result.stats.queries <= fl.query_cap(15, 2)


def test_flatten_and_transforms():
    ex = fl.parse_term_example("append([1,2],[3],[1,2,3]).")
    inst = fl.flatten(ex)
    assert str(inst.fact) == "append(l12,l3,l123)"
    assert len(inst.description) == 5

    db = fl.parse_database("q(a,b).")
    dec = fl.parse_declaration("head: p/1\nmode: q(+,-)\nmode: q(+,+)\n")
    db2, dec2 = fl.augment_equality(db, dec)
    assert db2.contains(fl.parse_fact("equal(a,a)."))
    db3, dec3, renames = fl.split_modes(db2, dec2)
    assert dec3.unique_mode()
    restored = fl.unsplit_clause(
        fl.parse_clause("p(X) :- q__io(X,Y), q__ii(X,Y), equal(Y,Y)."), renames
    )
    assert str(restored) == "p(X) :- q(X,Y)."


CLI = os.environ.get("FORCELEARN_CLI") or shutil.which("forcelearn")


@pytest.mark.skipif(CLI is None, reason="CLI binary not available")
def test_cli_bottom_and_eval(tmp_path):
    dec = tmp_path / "append.dec"
    dec.write_text(APPEND_DEC)
    out = subprocess.run(
        [CLI, "bottom", "--dec", str(dec), "--depth", "1"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.count("components(") == 3

    program = tmp_path / "append.pl"
    program.write_text(
        "append(Xs,Ys,Ys) :- null(Xs).\n"
        "append(Xs,Ys,Zs) :- components(Xs,X,Xs1), components(Zs,X,Zs1), "
        "append(Xs1,Ys,Zs1).\n"
    )
    db = tmp_path / "db.facts"
    db.write_text(APPEND_DB)
    inst = tmp_path / "inst.txt"
    inst.write_text(APPEND_INSTANCE)
    out = subprocess.run(
        [CLI, "eval", "--program", str(program), "--db", str(db), "--instance", str(inst)],
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.startswith("covered")


@pytest.mark.skipif(CLI is None, reason="CLI binary not available")
def test_cli_teach_protocol(tmp_path):
    dec = tmp_path / "lt.dec"
    dec.write_text("head: less_than/2\nmode: successor(+,-)\nmode: less_than(+,+)\n")
    db_lines = []
    for i in range(1, 8):
        db_lines.append("successor(%d,%d)." % (i, i + 1))
        db_lines.append("less_than(%d,%d)." % (i, i + 1))
    db = tmp_path / "lt.facts"
    db.write_text("\n".join(db_lines))
    target = tmp_path / "lt.pl"
    target.write_text("less_than(A,B) :- successor(A,C), less_than(C,B).\n")
    pool_lines = []
    for i in range(1, 9):
        for j in range(1, 9):
            pool_lines.append(
                "fact: less_than(%d,%d).\nlabel: %s" % (i, j, "+" if i < j else "-")
            )
    pool = tmp_path / "lt.pool"
    pool.write_text("\n".join(pool_lines))

    proc = subprocess.Popen(
        [
            CLI,
            "teach",
            "--target", str(target),
            "--db", str(db),
            "--pool", str(pool),
            "--dec", str(dec),
            "--policy", "exhaustive",
        ],
        stdin=subprocess.PIPE,
        stdout=subprocess.PIPE,
        text=True,
    )
    requests = (
        "MEMBER less_than(2,5).\n"
        "MEMBER less_than(5,2).\n"
        "EQ\nless_than(A,B) :- successor(A,C), less_than(C,B).\n.\n"
        "EQ\nless_than(A,B) :- successor(A,B).\n.\n"
        "QUIT\n"
    )
    out, _ = proc.communicate(requests, timeout=60)
    lines = out.strip().splitlines()
    assert lines[0] == "YES"
    assert lines[1] == "NO"
    assert lines[2] == "YES"
    assert lines[3].startswith("CEX +")
    assert proc.returncode == 0


@pytest.mark.skipif(CLI is None, reason="CLI binary not available")
def test_cli_learn_exit_codes(tmp_path):
    dec = tmp_path / "lt.dec"
    dec.write_text("head: less_than/2\nmode: successor(+,-)\nmode: less_than(+,+)\n")
    db_lines = []
    for i in range(1, 8):
        db_lines.append("successor(%d,%d)." % (i, i + 1))
        db_lines.append("less_than(%d,%d)." % (i, i + 1))
    db = tmp_path / "lt.facts"
    db.write_text("\n".join(db_lines))
    pool_lines = []
    for i in range(1, 9):
        for j in range(1, 9):
            pool_lines.append(
                "fact: less_than(%d,%d).\nlabel: %s" % (i, j, "+" if i < j else "-")
            )
    pool = tmp_path / "lt.pool"
    pool.write_text("\n".join(pool_lines))
    out = subprocess.run(
        [
            CLI, "learn",
            "--algo", "force1",
            "--depth", "1",
            "--dec", str(dec),
            "--db", str(db),
            "--pool", str(pool),
        ],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0, out.stderr
    assert "identified" in out.stdout

    # a pool no candidate can satisfy: exit code 1
    bad_pool = tmp_path / "bad.pool"
    bad_pool.write_text("fact: less_than(1,2).\nlabel: -\n")
    out = subprocess.run(
        [
            CLI, "learn",
            "--algo", "force1",
            "--depth", "1",
            "--dec", str(dec),
            "--db", str(db),
            "--pool", str(bad_pool),
        ],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 1

    # unparsable input: exit code 2
    broken = tmp_path / "broken.facts"
    broken.write_text("successor(1,")
    out = subprocess.run(
        [
            CLI, "learn",
            "--algo", "force1",
            "--depth", "1",
            "--dec", str(dec),
            "--db", str(broken),
            "--pool", str(pool),
        ],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 2
