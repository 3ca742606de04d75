from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..vertex_count-1``."""

    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        edges = tuple(norm_edge(u, v) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not 0 <= u < v < self.vertex_count:
                raise ValueError(f"edge {(u, v)} out of range")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge {(u, v)}")
            seen.add((u, v))

    @cached_property
    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class TripartiteGraph:
    graph: Graph
    parts: tuple[int, ...]  # part label 0, 1 or 2 per vertex

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) != self.graph.vertex_count:
            raise ValueError("need one part label per vertex")
        if any(p not in (0, 1, 2) for p in parts):
            raise ValueError("part labels must be 0, 1 or 2")
        for u, v in self.graph.edges:
            if parts[u] == parts[v]:
                raise ValueError(f"edge {(u, v)} lies inside part {parts[u]}")


@dataclass(frozen=True)
class ThreeDMInstance:
    """Triples over disjoint element sets W, X, Y; each element in at most 3 triples."""

    W: tuple[str, ...]
    X: tuple[str, ...]
    Y: tuple[str, ...]
    triples: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        for name in ("W", "X", "Y"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "triples", tuple(tuple(t) for t in self.triples))
        elements = self.W + self.X + self.Y
        if len(set(elements)) != len(elements):
            raise ValueError("W, X and Y must be disjoint sets of distinct elements")
        if len(set(self.triples)) != len(self.triples):
            raise ValueError("duplicate triple")
        sets = (set(self.W), set(self.X), set(self.Y))
        for t in self.triples:
            for e, s, name in zip(t, sets, "WXY"):
                if e not in s:
                    raise ValueError(f"triple {t}: {e!r} is not in {name}")
        counts = Counter(e for t in self.triples for e in t)
        over = sorted(e for e, c in counts.items() if c > 3)
        if over:
            raise ValueError(f"elements occurring in more than 3 triples: {over}")

    @property
    def elements(self) -> tuple[str, ...]:
        return self.W + self.X + self.Y


@dataclass(frozen=True)
class CnfFormula:
    """3-CNF with DIMACS-style literals: ``+v`` / ``-v`` for variable ``v >= 1``."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for i, c in enumerate(self.clauses):
            if len(c) != 3:
                raise ValueError(f"clause {i} has {len(c)} literals, expected 3")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {i}: bad literal {lit}")

    @property
    def variables(self) -> list[int]:
        return sorted({abs(lit) for c in self.clauses for lit in c})
