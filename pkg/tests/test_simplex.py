import random
from itertools import combinations

import pytest

from kanon.core import Database, InfeasibleError
from kanon.generators import random_database, random_hierarchy
from kanon.simplex import (
    CostHypergraph,
    build_anonymity_hypergraph,
    check_simplex_conditions,
    solve_simplex_matching,
)


def test_identical_rows_cost_nothing():
    hg = build_anonymity_hypergraph(Database.from_rows(["00"] * 3))
    assert set(hg.pair_edges.values()) == {0}
    assert hg.triple_edges == {(0, 1, 2): 0}


def test_hand_computed_costs():
    hg = build_anonymity_hypergraph(Database.from_rows(["00", "01", "11"]))
    assert hg.pair_edges == {(0, 1): 2, (1, 2): 2, (0, 2): 4}
    assert hg.triple_edges[(0, 1, 2)] == 6


def test_too_few_rows():
    with pytest.raises(InfeasibleError):
        build_anonymity_hypergraph(Database.from_rows(["0"]))


def test_violations_are_reported():
    hg = CostHypergraph(3, {(0, 1): 2, (1, 2): 2, (0, 2): 4}, {(0, 1, 2): 3})
    assert any("inequality" in p for p in check_simplex_conditions(hg))
    hg = CostHypergraph(3, {(0, 1): 2, (1, 2): 2}, {(0, 1, 2): 6})
    assert any("closure" in p for p in check_simplex_conditions(hg))


def test_built_hypergraphs_satisfy_conditions():
    rng = random.Random(5)
    for it in range(100):
        db = random_database(rng, rng.randint(2, 7), rng.randint(1, 4), rng.randint(1, 3))
        h = random_hierarchy(rng, db.alphabet.symbols) if it % 2 else None
        assert check_simplex_conditions(build_anonymity_hypergraph(db, h)) == []


def test_small_matchings():
    m = solve_simplex_matching(CostHypergraph(2, {(0, 1): 5}))
    assert m.chosen_edges == ((0, 1),) and m.cost == 5
    m = solve_simplex_matching(CostHypergraph(3, {(0, 1): 2, (1, 2): 2, (0, 2): 4}, {(0, 1, 2): 6}))
    assert m.chosen_edges == ((0, 1, 2),) and m.cost == 6
    with pytest.raises(InfeasibleError):
        solve_simplex_matching(CostHypergraph(3, {(0, 1): 1}))


def _covers(vertices):
    if not vertices:
        yield []
        return
    first, rest = vertices[0], vertices[1:]
    for size in (1, 2):
        for extra in combinations(rest, size):
            left = [v for v in rest if v not in extra]
            for tail in _covers(left):
                yield [(first,) + extra] + tail


def test_matches_exhaustive_enumeration():
    rng = random.Random(6)
    for _ in range(30):
        db = random_database(rng, 6, rng.randint(1, 4), rng.randint(2, 3))
        hg = build_anonymity_hypergraph(db)
        best = min(sum(hg.cost(e) for e in cover) for cover in _covers(list(range(6))))
        assert solve_simplex_matching(hg).cost == best


def test_lexicographic_tie_break():
    hg = build_anonymity_hypergraph(Database.from_rows(["0"] * 4))
    assert solve_simplex_matching(hg).chosen_edges == ((0, 1), (2, 3))
