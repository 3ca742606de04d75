import pytest

from kanon.core import Database
from kanon.diversity import (
    DiversityInstance,
    diversity_cost,
    is_l_diverse,
    release,
    solve_l_diversity_bruteforce,
)
from kanon.reductions import Graph, TripartiteGraph, tripartite_to_2div, tripartite_to_3div

TRIANGLE = TripartiteGraph(Graph(3, ((0, 1), (1, 2), (0, 2))), (0, 1, 2))
CLAW = TripartiteGraph(Graph(4, ((0, 1), (0, 2), (0, 3))), (0, 1, 1, 2))


def inst(rows, q, s):
    return DiversityInstance(Database.from_rows(rows), q, s)


def test_instance_validation():
    with pytest.raises(ValueError, match="sensitive"):
        inst(["01"], (0, 1), ())
    with pytest.raises(ValueError, match="overlap"):
        inst(["01"], (0, 1), (1,))
    with pytest.raises(ValueError, match="partition"):
        inst(["012"], (0,), (1,))


def test_l_one_is_always_diverse():
    i = inst(["00", "00"], (0,), (1,))
    assert is_l_diverse(i, i.db, 1)


def test_equal_sensitive_values_fail():
    i = inst(["00", "00"], (0,), (1,))
    assert not is_l_diverse(i, i.db, 2)
    assert solve_l_diversity_bruteforce(i, 2) is None


def test_triangle_fully_starred_is_two_diverse():
    i = tripartite_to_2div(TRIANGLE)
    released = release(i, [(0, 1, 2)])
    assert all(r[:3] == ("*",) * 3 for r in released.rows)
    assert is_l_diverse(i, released, 2)
    # two edges of a triangle always touch a common part, so no companion
    # differs on all three columns at once
    assert not is_l_diverse(i, released, 2, joint=True)


def test_costs():
    i = inst(["01", "01"], (0,), (1,))
    assert diversity_cost(i, [(0, 1)]) == 0
    i = inst(["00", "01"], (0,), (1,))
    assert diversity_cost(i, [(0, 1)]) == 0
    assert diversity_cost(tripartite_to_2div(TRIANGLE), [(0, 1, 2)]) == 9


def test_triangle_optima():
    for build, l in ((tripartite_to_2div, 2), (tripartite_to_3div, 3)):
        sol = solve_l_diversity_bruteforce(build(TRIANGLE), l)
        assert sol.cost == 9 and sol.groups == ((0, 1, 2),)
        assert is_l_diverse(build(TRIANGLE), sol.released, l)


def test_claw_cannot_be_grouped():
    assert solve_l_diversity_bruteforce(tripartite_to_2div(CLAW), 2) is None
    assert solve_l_diversity_bruteforce(tripartite_to_3div(CLAW), 3) is None


def test_joint_reading_is_stricter():
    i = inst([("0", "a", "x"), ("0", "a", "y"), ("0", "b", "y"), ("0", "b", "x")], (0,), (1, 2))
    assert is_l_diverse(i, i.db, 2)
    assert is_l_diverse(i, i.db, 2, joint=True)
    i = inst([("0", "a", "x"), ("0", "a", "y"), ("0", "b", "x"), ("0", "b", "x")], (0,), (1, 2))
    assert is_l_diverse(i, i.db, 2)
    assert not is_l_diverse(i, i.db, 2, joint=True)


def test_only_q_columns_are_starred():
    i = inst(["00", "11"], (0,), (1,))
    sol = solve_l_diversity_bruteforce(i, 2)
    assert sol.released.rows == (("*", "0"), ("*", "1"))
    assert sol.cost == 2
