"""Edge-vertex incidence tables and their diversity variants."""

from __future__ import annotations

from ..core import Alphabet, Database
from ..diversity import DiversityInstance
from .types import Graph, TripartiteGraph

# sensitive label for an edge between two parts
PAIR_LABEL = {(0, 1): "1", (0, 2): "2", (1, 2): "3"}


def _incidence_rows(g: Graph) -> list[list[str]]:
    return [["1" if v in e else "0" for v in range(g.vertex_count)] for e in g.edges]


def graph_to_incidence_db(g: Graph) -> Database:
    """One row per edge, one column per vertex; a cell is 1 when the vertex is an endpoint."""
    return Database(Alphabet(("0", "1")), tuple(tuple(r) for r in _incidence_rows(g)))


def _parts_of(g: TripartiteGraph, e) -> tuple[int, int]:
    a, b = sorted((g.parts[e[0]], g.parts[e[1]]))
    return a, b


def tripartite_to_2div(g: TripartiteGraph) -> DiversityInstance:
    """Incidence Q columns plus three binary S columns: does the edge touch part j?"""
    rows = _incidence_rows(g.graph)
    for r, e in zip(rows, g.graph.edges):
        touched = _parts_of(g, e)
        r.extend("1" if j in touched else "0" for j in range(3))
    n = g.graph.vertex_count
    db = Database(Alphabet(("0", "1")), tuple(tuple(r) for r in rows))
    return DiversityInstance(db, tuple(range(n)), (n, n + 1, n + 2))


def tripartite_to_3div(g: TripartiteGraph) -> DiversityInstance:
    """Incidence Q columns plus one S column naming the pair of parts the edge spans."""
    rows = _incidence_rows(g.graph)
    for r, e in zip(rows, g.graph.edges):
        r.append(PAIR_LABEL[_parts_of(g, e)])
    n = g.graph.vertex_count
    db = Database(Alphabet(("0", "1", "2", "3")), tuple(tuple(r) for r in rows))
    return DiversityInstance(db, tuple(range(n)), (n,))
