import random

import pytest
from hypothesis import given, settings, strategies as st

from kanon.core import Database, group_cost
from kanon.generators import random_hierarchy
from kanon.hierarchy import (
    GeneralizationHierarchy,
    generalize_group,
    generalized_group_cost,
    lowest_common_ancestor,
    star_hierarchy,
    validate_hierarchy,
)


def three_level():
    parent = {"a": "ab", "b": "ab", "c": "cd", "d": "cd", "ab": "*", "cd": "*", "*": None}
    cost = {"a": 0, "b": 0, "c": 0, "d": 0, "ab": 1, "cd": 1, "*": 2}
    return GeneralizationHierarchy(parent, cost)


def test_star_hierarchy_is_valid():
    assert validate_hierarchy(star_hierarchy("01"), "01") == []


def test_single_leaf_hierarchy_is_valid():
    assert validate_hierarchy(GeneralizationHierarchy({"a": None}, {"a": 0}), "a") == []


def test_non_monotone_cost_is_reported():
    h = GeneralizationHierarchy({"0": "*", "1": "*", "*": None}, {"0": 3, "1": 0, "*": 1})
    problems = validate_hierarchy(h)
    assert len(problems) == 1 and "below child '0'" in problems[0]


def test_other_violations():
    assert validate_hierarchy(GeneralizationHierarchy({"a": None, "b": None}, {"a": 0, "b": 0}))
    h = GeneralizationHierarchy({"a": "x", "x": "a", "r": None}, {"a": 0, "x": 0, "r": 0})
    assert any("cycle" in p or "root" in p for p in validate_hierarchy(h))
    assert validate_hierarchy(star_hierarchy("01"), "012")


def test_lca():
    h = three_level()
    assert lowest_common_ancestor(h, ["a"]) == "a"
    assert lowest_common_ancestor(h, ["a", "b"]) == "ab"
    assert lowest_common_ancestor(h, ["a", "b", "c"]) == "*"
    assert lowest_common_ancestor(star_hierarchy("01"), ["0", "1"]) == "*"
    with pytest.raises(KeyError):
        lowest_common_ancestor(h, ["ab"])


def test_generalized_cost_examples():
    h = three_level()
    db = Database.from_rows([("a", "c"), ("b", "c")])
    assert generalize_group(db, [0, 1], h) == (("ab", "c"), 2)
    assert generalized_group_cost(db, [0], h) == 0
    db2 = Database.from_rows([("a",), ("d",), ("b",)])
    assert generalized_group_cost(db2, [0, 1, 2], h) == 6


rows = st.integers(1, 4).flatmap(
    lambda m: st.lists(st.lists(st.sampled_from("012"), min_size=m, max_size=m), min_size=1, max_size=5))


@given(rows)
@settings(max_examples=150, deadline=None)
def test_star_hierarchy_matches_suppression(data):
    db = Database.from_rows(data, symbols="012")
    h = star_hierarchy("012")
    for i in range(db.n):
        group = list(range(i + 1))
        assert generalized_group_cost(db, group, h) == group_cost(db, group)


def test_random_hierarchies_are_valid():
    rng = random.Random(0)
    for c in range(1, 6):
        symbols = [str(i) for i in range(c)]
        for _ in range(20):
            assert validate_hierarchy(random_hierarchy(rng, symbols), symbols) == []
