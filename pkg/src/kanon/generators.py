"""Seeded random instances for tests and the acceptance suite."""

from __future__ import annotations

import random
from itertools import combinations

from .core import Database
from .hierarchy import GeneralizationHierarchy
from .reductions.types import Graph, ThreeDMInstance, TripartiteGraph


def random_database(rng: random.Random, n: int, m: int, c: int) -> Database:
    rows = [[str(rng.randrange(c)) for _ in range(m)] for _ in range(n)]
    return Database.from_rows(rows, symbols=[str(i) for i in range(c)])


def duplicated_database(rng: random.Random, n: int, m: int, c: int, types: int | None = None) -> Database:
    """Rows drawn from a handful of distinct patterns, so most rows repeat."""
    pool = [tuple(str(rng.randrange(c)) for _ in range(m)) for _ in range(types or rng.randint(1, c ** m))]
    weights = [rng.random() ** 2 for _ in pool]
    rows = rng.choices(pool, weights=weights, k=n)
    return Database.from_rows(rows, symbols=[str(i) for i in range(c)])


def random_hierarchy(rng: random.Random, symbols, root: str = "*") -> GeneralizationHierarchy:
    """Random cost-monotone tree whose leaves are ``symbols`` (leaf cost 0)."""
    parent: dict[str, str | None] = {s: None for s in symbols}
    cost = {s: 0 for s in symbols}
    tops = list(symbols)
    fresh = 0
    while len(tops) > 1:
        size = rng.randint(2, len(tops))
        if size == len(tops):
            name = root
        else:
            name, fresh = f"g{fresh}", fresh + 1
        picked = rng.sample(tops, size)
        for s in picked:
            parent[s] = name
            tops.remove(s)
        parent[name] = None
        cost[name] = max(cost[s] for s in picked) + rng.randint(0, 2)
        tops.append(name)
    if tops[0] != root:
        # a single-symbol alphabet still gets a proper root above it
        parent[tops[0]] = root
        parent[root] = None
        cost[root] = cost[tops[0]] + 1
    return GeneralizationHierarchy(parent, cost)


def random_3dm(rng: random.Random, q: int, max_triples: int | None = None) -> ThreeDMInstance:
    """Balanced instance (|W| = |X| = |Y| = q) respecting the 3-occurrence bound."""
    W, X, Y = ([f"{c}{i}" for i in range(1, q + 1)] for c in "wxy")
    target = rng.randint(0, max_triples if max_triples is not None else 3 * q)
    occ = {e: 0 for e in W + X + Y}
    triples: list[tuple[str, str, str]] = []
    for _ in range(20 * (target + 1)):
        if len(triples) == target:
            break
        t = (rng.choice(W), rng.choice(X), rng.choice(Y))
        if t in triples or any(occ[e] >= 3 for e in t):
            continue
        triples.append(t)
        for e in t:
            occ[e] += 1
    return ThreeDMInstance(W, X, Y, tuple(triples))


def random_tripartite(rng: random.Random, m: int, max_vertices: int = 7,
                      seed_triangles: int = 0) -> TripartiteGraph:
    """Random simple tripartite graph with exactly ``m`` edges.

    ``seed_triangles`` triangles are placed first, which makes triangle
    partitions likely.
    """
    for _ in range(1000):
        nv = rng.randint(3, max_vertices)
        parts = [i % 3 for i in range(3)] + [rng.randrange(3) for _ in range(nv - 3)]
        rng.shuffle(parts)
        by_part = [[v for v in range(nv) if parts[v] == p] for p in range(3)]
        edges: set[tuple[int, int]] = set()
        for _ in range(seed_triangles):
            tri = [rng.choice(by_part[p]) for p in range(3)]
            new = {tuple(sorted(e)) for e in combinations(tri, 2)}
            if len(edges | new) <= m:
                edges |= new
        candidates = [(u, v) for u, v in combinations(range(nv), 2) if parts[u] != parts[v]]
        rng.shuffle(candidates)
        for e in candidates:
            if len(edges) >= m:
                break
            edges.add(e)
        if len(edges) == m:
            return TripartiteGraph(Graph(nv, tuple(sorted(edges))), tuple(parts))
    raise ValueError(f"could not place {m} edges on at most {max_vertices} vertices")
