import json

import pytest

from kanon.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p
    return write


def test_anonymize_simplex(capsys, files):
    db = files("same.db", "alphabet: 0 1\n" + "0 1\n" * 4)
    code, out = run(capsys, "anonymize", db, "--k", 2, "--method", "simplex")
    assert code == 0 and out["cost"] == 0 and len(out["groups"]) == 2


def test_simplex_needs_k_two(capsys, files):
    db = files("same.db", "alphabet: 0 1\n" + "0 1\n" * 4)
    code, out = run(capsys, "anonymize", db, "--k", 3, "--method", "simplex")
    assert code == 2 and out["status"] == "error"


def test_unknown_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["anonymize", "x", "--k", "2", "--bogus"])
    assert exc.value.code == 2


def test_infeasible_exit_code(capsys, files):
    db = files("two.db", "alphabet: 0 1\n0 1\n1 1\n")
    code, out = run(capsys, "anonymize", db, "--k", 3, "--method", "brute")
    assert code == 1 and out["status"] == "infeasible"


def test_parse_error_exit_code(capsys, files):
    db = files("bad.db", "alphabet: 0 1\n0 *\n")
    code, out = run(capsys, "anonymize", db, "--k", 1)
    assert code == 2 and "line 2" in out["message"]


def test_hierarchy_option(capsys, files):
    db = files("h.db", "alphabet: a b c\na\nb\nc\nc\n")
    h = files("h.txt", "* 2\n  ab 1\n    a 0\n    b 0\n  c 0\n")
    code, out = run(capsys, "anonymize", db, "--k", 2, "--method", "simplex", "--hierarchy", h)
    assert code == 0 and out["cost"] == 2 and out["released"][0] == "ab"


def test_graph_reduction_then_anonymize(capsys, files, tmp_path):
    g = files("k3.graph", "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    out_db = tmp_path / "k3.db"
    code, out = run(capsys, "reduce", g, "--from", "graph", "--output", out_db)
    assert code == 0 and out["rows"] == 3
    code, out = run(capsys, "anonymize", out_db, "--k", 3, "--method", "brute")
    assert code == 0 and out["cost"] == 9


def test_example_two_has_no_partition(capsys, files, tmp_path):
    cnf = files("ex2.cnf", "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n")
    graph = tmp_path / "ex2.graph"
    run(capsys, "reduce", cnf, "--from", "1in3sat", "--output", graph)
    code, out = run(capsys, "oracle", graph, "--problem", "edge-partition")
    assert code == 1 and out["partition"] == "none"


def test_example_one_partition_verifies(capsys, files, tmp_path):
    cnf = files("ex1.cnf", "p cnf 3 2\n-1 2 3 0\n1 -2 3 0\n")
    graph, reg, part = tmp_path / "g", tmp_path / "reg.json", tmp_path / "p.json"
    run(capsys, "reduce", cnf, "--from", "1in3sat", "--output", graph, "--registry", reg)
    code, _ = run(capsys, "oracle", graph, "--problem", "edge-partition", "--output", part)
    assert code == 0
    code, out = run(capsys, "verify", graph, "--partition", part, "--registry", reg)
    assert code == 0 and out["valid"]
    assert set(out["classifications"].values()) <= {"TruePartitioned", "FalsePartitioned"}
    code, sat = run(capsys, "oracle", cnf, "--problem", "1in3sat")
    assert out["assignment"] in sat["assignments"]


def test_verify_rejects_bad_partition(capsys, files):
    g = files("p.graph", "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n")
    part = files("p.json", '{"blocks": [[[1, 2], [2, 3], [3, 4]]]}')
    code, out = run(capsys, "verify", g, "--partition", part)
    assert code == 1 and not out["valid"]


def test_tripartite_reduction_and_diversify(capsys, files, tmp_path):
    g = files("t.graph", "p edge 3 3\nn 1 1\nn 2 2\nn 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    out_db = tmp_path / "t.db"
    for source, l in (("tripartite-2div", 2), ("tripartite-3div", 3)):
        code, out = run(capsys, "reduce", g, "--from", source, "--output", out_db)
        assert code == 0
        code, out = run(capsys, "diversify", out_db, "--l", l)
        assert code == 0 and out["cost"] == 9


def test_diversify_infeasible(capsys, files):
    db = files("d.db", "alphabet: 0 1\n0 0\n1 0\n")
    code, out = run(capsys, "diversify", db, "--l", 2, "--q-cols", "0", "--s-cols", "1")
    assert code == 1


def test_3dm_reduction_and_oracle(capsys, files):
    inst = files("m.3dm", "p 3dm 1 1 1\nt 1 1 1\n")
    code, out = run(capsys, "reduce", inst, "--from", "3dm3")
    assert code == 0 and out["columns"] == 27
    code, out = run(capsys, "oracle", inst, "--problem", "3dm")
    assert code == 0 and out["size"] == 1


def test_selftest_subset(capsys):
    code, out = run(capsys, "selftest", "--only", "7")
    assert code == 0 and out["criteria"][0]["passed"]
