"""Gadget graphs for 1-in-3 SAT to 4-star edge partition.

Variable gadget ``G_d``: two 3-binary trees of depth ``d`` (top and bottom),
each missing one leaf under its first three leaf-parents, with those parents
joined across the trees.  Edges to the remaining leaves are *shared*.

Clause gadget ``S_5``: a center with one private pendant edge and three
shared edges.  Merging a clause shared edge with a tree shared edge deletes
the tree leaf and joins the clause center to the leaf's parent directly.
Tree shared edges left over are bundled three at a time (distinct parents)
into a fresh hub vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .types import CnfFormula, Edge, Graph, norm_edge


def build_3binary_tree(d: int) -> tuple[Graph, list[int]]:
    """Complete tree: the root has three children, every other internal node two.

    Vertices are numbered breadth first.  Returns the graph and each vertex's depth.
    """
    if d < 1:
        raise ValueError("tree depth must be at least 1")
    depth = [0]
    edges = []
    frontier = [0]
    for level in range(1, d + 1):
        nxt = []
        for v in frontier:
            for _ in range(3 if level == 1 else 2):
                c = len(depth)
                depth.append(level)
                edges.append((v, c))
                nxt.append(c)
        frontier = nxt
    return Graph(len(depth), tuple(edges)), depth


@dataclass(frozen=True)
class GadgetGd:
    """``G_d`` as a standalone graph; ``sides[v]`` is 0 for top, 1 for bottom."""

    d: int
    graph: Graph
    sides: tuple[int, ...]
    depth: tuple[int, ...]
    top_shared: tuple[Edge, ...]  # (parent, leaf)
    bottom_shared: tuple[Edge, ...]
    cross: tuple[Edge, ...]  # (top parent, bottom parent)

    @property
    def shared(self) -> tuple[Edge, ...]:
        return self.top_shared + self.bottom_shared

    @property
    def private(self) -> tuple[Edge, ...]:
        shared = {norm_edge(*e) for e in self.shared}
        return tuple(e for e in self.graph.edges if e not in shared)


def build_gadget_Gd(d: int) -> GadgetGd:
    if d < 2:
        raise ValueError("G_d needs d >= 2")
    tree, depth = build_3binary_tree(d)
    children: dict[int, list[int]] = {}
    for u, v in tree.edges:
        children.setdefault(u, []).append(v)
    parents = [v for v in range(tree.vertex_count) if depth[v] == d - 1]
    deleted = {children[p][-1] for p in parents[:3]}
    kept = [v for v in range(tree.vertex_count) if v not in deleted]
    size = len(kept)
    local = {v: i for i, v in enumerate(kept)}

    edges: list[Edge] = []
    shared: tuple[list[Edge], list[Edge]] = ([], [])
    for side in (0, 1):
        off = side * size
        for u, v in tree.edges:
            if v in deleted:
                continue
            e = (local[u] + off, local[v] + off)
            edges.append(e)
            if depth[v] == d:
                shared[side].append(e)
    cross = tuple((local[p], local[p] + size) for p in parents[:3])
    edges.extend(cross)
    depths = tuple(depth[v] for v in kept) * 2
    sides = (0,) * size + (1,) * size
    return GadgetGd(d, Graph(2 * size, tuple(edges)), sides, depths,
                    tuple(shared[0]), tuple(shared[1]), cross)


def gadget_depth(k: int) -> int:
    """Smallest ``d >= 2`` with ``2^(d-2) < k+1 <= 2^(d-1)``."""
    if k < 0:
        raise ValueError("occurrence count must be nonnegative")
    return max(2, 1 + math.ceil(math.log2(k + 1)))


@dataclass
class VariableRecord:
    variable: int
    d: int
    vertices: list[int]
    top_shared: list[Edge] = field(default_factory=list)  # (tree parent, outside vertex)
    bottom_shared: list[Edge] = field(default_factory=list)
    cross: list[Edge] = field(default_factory=list)


@dataclass
class ClauseGadget:
    clause: int
    copy: int
    center: int
    private_edge: Edge  # (center, pendant leaf)
    shared_edges: list[Edge] = field(default_factory=list)  # (center, tree parent) per literal
    literals: list[int] = field(default_factory=list)


@dataclass
class Hub:
    vertex: int
    variable: int
    side: str
    edges: list[Edge]  # (tree parent, hub)


@dataclass
class GadgetRegistry:
    variables: dict[int, VariableRecord] = field(default_factory=dict)
    clauses: list[ClauseGadget] = field(default_factory=list)
    hubs: list[Hub] = field(default_factory=list)

    def to_dict(self) -> dict:
        def edges(es):
            return [list(e) for e in es]

        return {
            "variables": [
                {"variable": r.variable, "d": r.d, "vertices": list(r.vertices),
                 "top_shared": edges(r.top_shared), "bottom_shared": edges(r.bottom_shared),
                 "cross": edges(r.cross)}
                for r in self.variables.values()
            ],
            "clauses": [
                {"clause": c.clause, "copy": c.copy, "center": c.center,
                 "private_edge": list(c.private_edge), "shared_edges": edges(c.shared_edges),
                 "literals": list(c.literals)}
                for c in self.clauses
            ],
            "hubs": [{"vertex": h.vertex, "variable": h.variable, "side": h.side,
                      "edges": edges(h.edges)} for h in self.hubs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GadgetRegistry":
        def edges(es):
            return [tuple(e) for e in es]

        reg = cls()
        for r in data.get("variables", []):
            reg.variables[r["variable"]] = VariableRecord(
                r["variable"], r["d"], list(r["vertices"]), edges(r["top_shared"]),
                edges(r["bottom_shared"]), edges(r["cross"]))
        for c in data.get("clauses", []):
            reg.clauses.append(ClauseGadget(c["clause"], c["copy"], c["center"],
                                            tuple(c["private_edge"]), edges(c["shared_edges"]),
                                            list(c["literals"])))
        for h in data.get("hubs", []):
            reg.hubs.append(Hub(h["vertex"], h["variable"], h["side"], edges(h["edges"])))
        return reg


class _Builder:
    def __init__(self):
        self.count = 0
        self.adj: dict[int, set[int]] = {}

    def vertex(self) -> int:
        v = self.count
        self.count += 1
        self.adj[v] = set()
        return v

    def add(self, u: int, v: int) -> None:
        self.adj[u].add(v)
        self.adj[v].add(u)

    def remove(self, u: int, v: int) -> None:
        self.adj[u].discard(v)
        self.adj[v].discard(u)

    def can_join(self, u: int, v: int) -> bool:
        # no multi-edge and no triangle through a common neighbour
        return v not in self.adj[u] and not (self.adj[u] & self.adj[v])


def formula_to_graph(phi: CnfFormula) -> tuple[Graph, GadgetRegistry]:
    """Build ``G_phi``, which splits into 4-stars iff ``phi`` is 1-in-3 satisfiable."""
    if not isinstance(phi, CnfFormula):
        phi = CnfFormula(*phi)
    b = _Builder()
    reg = GadgetRegistry()
    # free leaf slots per (variable, side): parent -> number of unused leaves
    slots: dict[tuple[int, int], dict[int, int]] = {}

    for x in phi.variables:
        pos = sum(c.count(x) for c in phi.clauses)
        neg = sum(c.count(-x) for c in phi.clauses)
        d = gadget_depth(max(pos, neg))
        g = build_gadget_Gd(d)
        leaves = {leaf for _, leaf in g.shared}
        ids = {v: b.vertex() for v in range(g.graph.vertex_count) if v not in leaves}
        for u, v in g.graph.edges:
            if u in ids and v in ids:
                b.add(ids[u], ids[v])
        rec = VariableRecord(x, d, sorted(ids.values()), cross=[(ids[u], ids[v]) for u, v in g.cross])
        reg.variables[x] = rec
        for side, shared in enumerate((g.top_shared, g.bottom_shared)):
            table: dict[int, int] = {}
            for p, _ in shared:
                table[ids[p]] = table.get(ids[p], 0) + 1
            slots[(x, side)] = table

    pendants = []
    for ci, clause in enumerate(phi.clauses):
        for j in range(3):
            center, leaf = b.vertex(), b.vertex()
            b.add(center, leaf)
            reg.clauses.append(ClauseGadget(ci, j, center, (center, leaf), literals=list(clause)))
            pendants.append(leaf)

    occurrences = [(ci, t, lit) for ci, c in enumerate(phi.clauses) for t, lit in enumerate(c)]
    chosen: list[tuple[int, int, int]] = []  # (clause gadget index, parent, occurrence index)

    def candidates(key):
        table = slots[key]
        # prefer a parent that still has a second unused leaf, then lowest index
        return sorted((p for p, c in table.items() if c), key=lambda p: (table[p] < 2, p))

    def assign(occ: int, j: int) -> bool:
        if occ == len(occurrences):
            return _hubs_possible(slots)
        ci, _, lit = occurrences[occ]
        key = (abs(lit), 0 if lit > 0 else 1)
        gadget = 3 * ci + j
        center = reg.clauses[gadget].center
        for p in candidates(key):
            if not b.can_join(center, p):
                continue
            slots[key][p] -= 1
            b.add(center, p)
            chosen.append((gadget, p, occ))
            nxt = (occ, j + 1) if j < 2 else (occ + 1, 0)
            if assign(*nxt):
                return True
            chosen.pop()
            b.remove(center, p)
            slots[key][p] += 1
        return False

    if not assign(0, 0):
        raise ValueError("could not place clause gadgets without multi-edges or triangles")

    for gadget, p, occ in chosen:
        cg = reg.clauses[gadget]
        cg.shared_edges.append((cg.center, p))
        lit = occurrences[occ][2]
        rec = reg.variables[abs(lit)]
        (rec.top_shared if lit > 0 else rec.bottom_shared).append((p, cg.center))

    for (x, side), table in slots.items():
        rec = reg.variables[x]
        for trio in _group_hubs(table):
            hub = b.vertex()
            es = []
            for p in trio:
                b.add(p, hub)
                es.append((p, hub))
            (rec.top_shared if side == 0 else rec.bottom_shared).extend(es)
            reg.hubs.append(Hub(hub, x, "top" if side == 0 else "bottom", es))

    edges = sorted({norm_edge(u, v) for u in b.adj for v in b.adj[u]})
    return Graph(b.count, tuple(edges)), reg


def _hubs_possible(slots) -> bool:
    for table in slots.values():
        total = sum(table.values())
        if total % 3 or (total and max(table.values()) > total // 3):
            return False
    return True


def _group_hubs(table: dict[int, int]) -> list[list[int]]:
    """Triples of distinct parents, always drawing from the fullest parents."""
    left = dict(table)
    groups = []
    while sum(left.values()):
        trio = sorted((p for p in left if left[p]), key=lambda p: (-left[p], p))[:3]
        if len(trio) < 3:
            raise ValueError("leftover shared edges cannot be grouped by distinct parents")
        for p in trio:
            left[p] -= 1
        groups.append(sorted(trio))
    return groups
