import random

import pytest
from hypothesis import given, settings, strategies as st

from kanon.core import Database, InfeasibleError, is_k_anonymous
from kanon.generators import duplicated_database, random_database
from kanon.solvers import (
    brute_force_k_anonymity,
    kernel_threshold,
    kernelize,
    solve_2_anonymity,
    solve_k_anonymity_dnc,
    solve_k_anonymity_kernelized,
)

SOLVERS = (brute_force_k_anonymity, solve_k_anonymity_dnc, solve_k_anonymity_kernelized)


def test_two_anonymity_examples():
    assert solve_2_anonymity(Database.from_rows(["01"] * 4)).total_cost == 0
    sol = solve_2_anonymity(Database.from_rows(["00", "01", "11"]))
    assert sol.total_cost == 6 and sol.groups == ((0, 1, 2),)


@pytest.mark.parametrize("solve", SOLVERS)
def test_trivial_cases(solve):
    assert solve(Database.from_rows(["10"] * 3), 3).total_cost == 0
    assert solve(Database.from_rows(["1", "0", "1"]), 1).total_cost == 0
    assert solve(Database.from_rows(["10"] * 4), 2).total_cost == 0
    with pytest.raises(InfeasibleError):
        solve(Database.from_rows(["1", "0"]), 3)
    with pytest.raises(ValueError):
        solve(Database.from_rows(["1"]), 0)


def test_stars_in_input_are_rejected():
    db = Database.from_rows([["0", "*"], ["0", "1"]])
    with pytest.raises(ValueError, match="star"):
        brute_force_k_anonymity(db, 2)


dbs = st.tuples(st.integers(2, 8), st.integers(1, 4), st.integers(1, 3), st.integers(0, 10 ** 6))


@given(dbs, st.sampled_from([2, 3]))
@settings(max_examples=80, deadline=None)
def test_solvers_agree(params, k):
    n, m, c, seed = params
    db = random_database(random.Random(seed), n, m, c)
    if n < k:
        return
    costs = {solve.__name__: solve(db, k).total_cost for solve in SOLVERS}
    if k == 2:
        costs["simplex"] = solve_2_anonymity(db).total_cost
    assert len(set(costs.values())) == 1, costs


def test_solutions_are_k_anonymous():
    rng = random.Random(3)
    for _ in range(40):
        db = random_database(rng, rng.randint(3, 9), rng.randint(1, 4), 3)
        for k in (2, 3):
            for solve in SOLVERS:
                sol = solve(db, k)
                assert sol.min_group_size >= k
                assert is_k_anonymous(sol.released(db), k)
                stars = sum(r.count("*") for r in sol.released_rows())
                assert stars == sol.total_cost


def test_dnc_handles_sixty_duplicated_rows():
    rng = random.Random(4)
    for _ in range(10):
        db = duplicated_database(rng, 60, 2, 2)
        assert solve_k_anonymity_dnc(db, 3).total_cost == solve_k_anonymity_kernelized(db, 3).total_cost


def test_kernel_hundred_copies():
    db = Database.from_rows(["0"] * 100, symbols="01")
    ker = kernelize(db, 2)
    assert ker.threshold == kernel_threshold(2, 1) == 16
    assert len(ker.extracted) == 42
    assert ker.kernel.n == 16
    assert all(len(g) == 2 for g in ker.extracted)
    assert ker.pure_groups(db)[0] == (("0",), 2)
    assert ker.cell_reads <= 3 * db.n * db.m
    assert solve_k_anonymity_kernelized(db, 2).total_cost == 0


def test_kernel_leaves_small_databases_alone():
    db = Database.from_rows(["01", "10", "01", "11"])
    ker = kernelize(db, 2)
    assert ker.kernel == db and ker.extracted == ()
    assert solve_k_anonymity_kernelized(db, 2) == solve_k_anonymity_dnc(db, 2)


def test_kernel_bounds_on_duplicated_data():
    rng = random.Random(8)
    for _ in range(50):
        c, ell, k = rng.randint(1, 2), rng.randint(1, 2), rng.choice((2, 3))
        db = duplicated_database(rng, rng.randint(k, 60), ell, c)
        ker = kernelize(db, k)
        assert ker.kernel.n <= 2 * k * k * (2 * c) ** ell
        assert ker.cell_reads <= 3 * db.n * ell
        kept = sorted(ker.kernel_indices + tuple(i for g in ker.extracted for i in g))
        assert kept == list(range(db.n))


def test_kernel_pipeline_matches_brute_force_on_small_slices():
    rng = random.Random(9)
    for _ in range(20):
        db = duplicated_database(rng, rng.randint(3, 12), 2, 2)
        assert solve_k_anonymity_kernelized(db, 2).total_cost == brute_force_k_anonymity(db, 2).total_cost
