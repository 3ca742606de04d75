"""l-diversity over quasi-identifier (Q) and sensitive (S) columns.

Only Q cells are ever starred or charged; S cells are released as they are.

Diversity is checked one sensitive column at a time: a row ``u0`` is fine
when, for every S column, ``u0`` together with the rows sharing its released
Q values shows at least ``l`` distinct values in that column.  Passing
``joint=True`` instead demands a single set of ``l - 1`` companions that is
pairwise distinct on all S columns at once.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .core import Database, disagreement_columns, normalize_partition


@dataclass(frozen=True)
class DiversityInstance:
    db: Database
    q_columns: tuple[int, ...]
    s_columns: tuple[int, ...]

    def __post_init__(self):
        q, s = tuple(self.q_columns), tuple(self.s_columns)
        object.__setattr__(self, "q_columns", q)
        object.__setattr__(self, "s_columns", s)
        if not s:
            raise ValueError("at least one sensitive column is required")
        if set(q) & set(s):
            raise ValueError("Q and S columns overlap")
        if sorted(q + s) != list(range(self.db.m)):
            raise ValueError("Q and S columns must partition the column set")


@dataclass(frozen=True)
class DiversitySolution:
    groups: tuple[tuple[int, ...], ...]
    cost: int
    released: Database


def _check_l(l: int) -> None:
    if l < 1:
        raise ValueError("l must be a positive integer")


def is_l_diverse(inst: DiversityInstance, anonymized: Database, l: int, joint: bool = False) -> bool:
    _check_l(l)
    if anonymized.n != inst.db.n or anonymized.m != inst.db.m:
        raise ValueError("anonymized database has the wrong shape")
    if l == 1:
        return True
    rows = anonymized.rows
    classes: dict[tuple, list[int]] = defaultdict(list)
    for i, r in enumerate(rows):
        classes[tuple(r[q] for q in inst.q_columns)].append(i)
    for members in classes.values():
        if len(members) < l:
            return False
        if joint:
            if not all(_has_joint_witness(rows, inst.s_columns, u, members, l) for u in members):
                return False
        else:
            # the count of distinct values is the same for every member
            for s in inst.s_columns:
                if len({rows[i][s] for i in members}) < l:
                    return False
    return True


def _has_joint_witness(rows, s_columns, u0: int, members: list[int], l: int) -> bool:
    others = [i for i in members if i != u0]
    for pick in combinations(others, l - 1):
        chosen = (u0,) + pick
        if all(len({rows[i][s] for i in chosen}) == l for s in s_columns):
            return True
    return False


def diversity_cost(inst: DiversityInstance, groups: Iterable[Iterable[int]]) -> int:
    parts = normalize_partition(groups, inst.db.n)
    q = set(inst.q_columns)
    return sum(len(g) * len(disagreement_columns(inst.db, g) & q) for g in parts)


def release(inst: DiversityInstance, groups: Iterable[Iterable[int]]) -> Database:
    """Star the Q columns on which each group disagrees; keep S intact."""
    db = inst.db
    parts = normalize_partition(groups, db.n)
    q = set(inst.q_columns)
    star = db.alphabet.star
    out: list = [None] * db.n
    for g in parts:
        bad = disagreement_columns(db, g) & q
        for i in g:
            out[i] = tuple(star if j in bad else tok for j, tok in enumerate(db.rows[i]))
    return Database(db.alphabet, tuple(out))


def solve_l_diversity_bruteforce(inst: DiversityInstance, l: int,
                                 joint: bool = False) -> DiversitySolution | None:
    """Cheapest partition into groups of size >= l whose release is l-diverse.

    Exhaustive over set partitions with branch and bound on the Q-star cost;
    returns ``None`` when no partition works.  Meant for about ten rows.
    """
    _check_l(l)
    db = inst.db
    n = db.n
    q = set(inst.q_columns)
    cost_cache: dict[tuple[int, ...], int] = {}

    def cost_of(g):
        c = cost_cache.get(g)
        if c is None:
            c = cost_cache[g] = len(g) * len(disagreement_columns(db, g) & q)
        return c

    best_cost = float("inf")
    best_groups = None
    current: list[tuple[int, ...]] = []

    def rec(remaining: tuple[int, ...], spent: int):
        nonlocal best_cost, best_groups
        if not remaining:
            if spent < best_cost and is_l_diverse(inst, release(inst, current), l, joint):
                best_cost, best_groups = spent, list(current)
            return
        low, others = remaining[0], remaining[1:]
        for size in range(l, len(remaining) + 1):
            if 0 < len(remaining) - size < l:
                continue
            for extra in combinations(others, size - 1):
                g = (low,) + extra
                c = spent + cost_of(g)
                if c >= best_cost:
                    continue
                current.append(g)
                rest = tuple(i for i in others if i not in extra)
                rec(rest, c)
                current.pop()

    if n:
        rec(tuple(range(n)), 0)
    if best_groups is None:
        return None
    groups = normalize_partition(best_groups, n)
    return DiversitySolution(groups, int(best_cost), release(inst, groups))
