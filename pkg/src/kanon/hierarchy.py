"""Generalization hierarchies and the generalized group cost.

A hierarchy is a rooted tree over an extended symbol set whose leaves are the
database alphabet.  Cells of a group that disagree in a column are all
replaced by the lowest common ancestor of the column's tokens; cells that
already agree are left untouched and cost nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .core import STAR, AnonymizationSolution, Database, _check_group, normalize_partition


@dataclass(frozen=True)
class GeneralizationHierarchy:
    """Tree given by a child -> parent map (the root maps to ``None``)."""

    parent: Mapping[str, str | None]
    cost: Mapping[str, int]

    def __hash__(self):
        return hash((tuple(sorted(self.parent.items(), key=str)),
                     tuple(sorted(self.cost.items()))))

    @cached_property
    def children(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {v: [] for v in self.parent}
        for v, p in self.parent.items():
            if p is not None and p in out:
                out[p].append(v)
        return out

    @cached_property
    def roots(self) -> list[str]:
        return [v for v, p in self.parent.items() if p is None]

    @property
    def root(self) -> str:
        if len(self.roots) != 1:
            raise ValueError("hierarchy must have exactly one root")
        return self.roots[0]

    @cached_property
    def leaves(self) -> frozenset[str]:
        return frozenset(v for v, ch in self.children.items() if not ch)

    def ancestors(self, symbol: str) -> list[str]:
        """``symbol`` followed by its ancestors up to the root."""
        if symbol not in self.parent:
            raise KeyError(f"unknown symbol {symbol!r}")
        path = [symbol]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
            if len(path) > len(self.parent):
                raise ValueError("hierarchy contains a cycle")
        return path

    @cached_property
    def depth(self) -> dict[str, int]:
        return {v: len(self.ancestors(v)) - 1 for v in self.parent}


def star_hierarchy(symbols: Iterable[str], star: str = STAR) -> GeneralizationHierarchy:
    """The hierarchy that models plain suppression: leaves cost 0, the star costs 1."""
    symbols = list(symbols)
    parent: dict[str, str | None] = {s: star for s in symbols}
    parent[star] = None
    cost = {s: 0 for s in symbols}
    cost[star] = 1
    return GeneralizationHierarchy(parent, cost)


def validate_hierarchy(h: GeneralizationHierarchy, alphabet: Iterable[str] | None = None) -> list[str]:
    """Return a list of violations; an empty list means the hierarchy is valid."""
    problems = []
    if len(h.roots) != 1:
        problems.append(f"expected exactly one root, found {len(h.roots)}")
    for v, p in h.parent.items():
        if p is not None and p not in h.parent:
            problems.append(f"{v!r} has unknown parent {p!r}")
    for v in h.parent:
        if v not in h.cost:
            problems.append(f"{v!r} has no cost")
        elif h.cost[v] < 0:
            problems.append(f"{v!r} has negative cost {h.cost[v]}")
    if problems:
        return problems
    for v in h.parent:
        try:
            h.ancestors(v)
        except ValueError:
            problems.append(f"{v!r} lies on a cycle")
            return problems
    for v, p in h.parent.items():
        if p is not None and h.cost[p] < h.cost[v]:
            problems.append(f"cost of parent {p!r} ({h.cost[p]}) is below child {v!r} ({h.cost[v]})")
    if alphabet is not None:
        alphabet = set(alphabet)
        if set(h.leaves) != alphabet:
            missing = sorted(alphabet - h.leaves)
            extra = sorted(h.leaves - alphabet)
            problems.append(f"leaves do not match alphabet (missing {missing}, extra {extra})")
    return problems


def lowest_common_ancestor(h: GeneralizationHierarchy, tokens: Iterable[str]) -> str:
    tokens = list(dict.fromkeys(tokens))
    if not tokens:
        raise ValueError("need at least one token")
    for t in tokens:
        if t not in h.leaves:
            raise KeyError(f"token {t!r} is not a leaf of the hierarchy")
    common = h.ancestors(tokens[0])
    for t in tokens[1:]:
        anc = set(h.ancestors(t))
        common = [a for a in common if a in anc]
    # ``common`` runs leaf-to-root, so the first survivor is the deepest
    return common[0]


def generalize_group(db: Database, group: Iterable[int], h: GeneralizationHierarchy):
    """Released row and cost of generalizing ``group`` under ``h``."""
    g = _check_group(db, group)
    row, cost = [], 0
    for j in range(db.m):
        column = {db.rows[i][j] for i in g}
        if len(column) == 1:
            row.append(next(iter(column)))
            continue
        node = lowest_common_ancestor(h, column)
        row.append(node)
        cost += len(g) * h.cost[node]
    return tuple(row), cost


def generalized_group_cost(db: Database, group: Iterable[int], h: GeneralizationHierarchy) -> int:
    return generalize_group(db, group, h)[1]


def generalize_partition(db: Database, groups, h: GeneralizationHierarchy) -> AnonymizationSolution:
    parts = normalize_partition(groups, db.n)
    released, total = [], 0
    for g in parts:
        row, cost = generalize_group(db, g, h)
        released.append(row)
        total += cost
    return AnonymizationSolution(parts, tuple(released), total, db.n)
