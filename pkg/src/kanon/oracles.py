"""Brute-force solvers and structural checks used to cross-validate everything else."""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator

from .reductions.gadgets import GadgetRegistry
from .reductions.types import CnfFormula, Edge, Graph, ThreeDMInstance, norm_edge

TRUE_PARTITIONED = "TruePartitioned"
FALSE_PARTITIONED = "FalsePartitioned"
INVALID = "Invalid"

Block = tuple[Edge, Edge, Edge]


def enumerate_1in3_sat(phi: CnfFormula) -> list[tuple[bool, ...]]:
    """Every assignment to variables 1..num_vars with exactly one true literal per clause."""
    out = []
    for bits in product((False, True), repeat=phi.num_vars):
        if all(sum(bits[abs(l) - 1] == (l > 0) for l in c) == 1 for c in phi.clauses):
            out.append(bits)
    return out


def max_3dm_bruteforce(inst: ThreeDMInstance) -> tuple[tuple[str, str, str], ...]:
    """A largest set of pairwise coordinate-disjoint triples (first found in input order)."""
    triples = list(inst.triples)
    best: list = []

    def rec(i: int, used: set, chosen: list):
        nonlocal best
        if len(chosen) + (len(triples) - i) <= len(best):
            return
        if i == len(triples):
            best = list(chosen)
            return
        t = triples[i]
        if not used.intersection(t):
            chosen.append(t)
            rec(i + 1, used | set(t), chosen)
            chosen.pop()
        rec(i + 1, used, chosen)

    rec(0, set(), [])
    return tuple(best)


def _block_center(block) -> int | None:
    common = set(block[0])
    for e in block[1:]:
        common &= set(e)
    return next(iter(common)) if len(common) == 1 else None


def _is_triangle(block) -> bool:
    verts = {v for e in block for v in e}
    return len(verts) == 3 and len({norm_edge(*e) for e in block}) == 3


def verify_edge_partition(g: Graph, partition, allow_triangles: bool = True,
                          allow_stars: bool = True) -> bool:
    """True iff the blocks are disjoint, cover the edges, and are 4-stars or triangles."""
    edges = set(g.edges)
    seen: set[Edge] = set()
    for block in partition:
        block = [norm_edge(*e) for e in block]
        if len(block) != 3 or len(set(block)) != 3:
            return False
        if any(e not in edges or e in seen for e in block):
            return False
        seen.update(block)
        star = _block_center(block) is not None
        tri = _is_triangle(block)
        if not ((star and allow_stars) or (tri and allow_triangles)):
            return False
    return seen == edges


def iter_edge_partitions(g: Graph, allow_triangles: bool = False,
                         allow_stars: bool = True) -> Iterator[list[Block]]:
    """Every partition of the edges into 4-stars (and triangles, if allowed).

    Backtracking always branches on the uncovered edge with the fewest ways to
    be covered, ties going to the lowest edge index; an edge with no option
    ends the branch at once, which also forces pendant edges into the star at
    their other endpoint.  Options are tried with the lower endpoint as center
    first, then the higher, then triangles.
    """
    m = g.m
    if m % 3:
        return
    index = {e: i for i, e in enumerate(g.edges)}
    incident: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].append(i)
        incident[v].append(i)
    adj = g.adjacency
    covered = [False] * m
    free_deg = [len(incident[v]) for v in range(g.vertex_count)]
    blocks: list[Block] = []

    def options(i: int):
        u, v = g.edges[i]
        if allow_stars:
            for c in (u, v):
                others = [j for j in incident[c] if j != i and not covered[j]]
                for pair in combinations(others, 2):
                    yield (i,) + pair
        if allow_triangles:
            for w in sorted(adj[u] & adj[v]):
                a, b = index[norm_edge(u, w)], index[norm_edge(v, w)]
                if not covered[a] and not covered[b]:
                    yield (i, a, b)

    def count(i: int) -> int:
        u, v = g.edges[i]
        total = 0
        if allow_stars:
            for c in (u, v):
                f = free_deg[c] - 1
                total += f * (f - 1) // 2
        if allow_triangles:
            for w in adj[u] & adj[v]:
                if not covered[index[norm_edge(u, w)]] and not covered[index[norm_edge(v, w)]]:
                    total += 1
        return total

    def set_cover(ids, flag: bool):
        for j in ids:
            covered[j] = flag
            a, b = g.edges[j]
            free_deg[a] += -1 if flag else 1
            free_deg[b] += -1 if flag else 1

    def rec(left: int):
        if left == 0:
            yield list(blocks)
            return
        pick, fewest = -1, None
        for i in range(m):
            if covered[i]:
                continue
            c = count(i)
            if fewest is None or c < fewest:
                pick, fewest = i, c
                if c == 0:
                    return
        for ids in list(options(pick)):
            set_cover(ids, True)
            blocks.append(tuple(g.edges[j] for j in sorted(ids)))
            yield from rec(left - 3)
            blocks.pop()
            set_cover(ids, False)

    yield from rec(m)


def edge_partition_search(g: Graph, allow_triangles: bool = False,
                          allow_stars: bool = True) -> list[Block] | None:
    """First partition found, or ``None`` when there is none."""
    return next(iter_edge_partitions(g, allow_triangles, allow_stars), None)


def classify_gadget_partition(registry: GadgetRegistry, partition, variable: int) -> str:
    """Orientation of one variable gadget under a 4-star partition.

    True-partitioned: every top shared edge sits in a star centered at its
    tree end and every bottom shared edge in a star centered at its far end.
    False-partitioned is the mirror image.
    """
    if variable not in registry.variables:
        raise KeyError(f"no gadget for variable {variable}")
    rec = registry.variables[variable]
    center_of: dict[Edge, int | None] = {}
    for block in partition:
        c = _block_center(block)
        for e in block:
            center_of[norm_edge(*e)] = c

    def inside(shared) -> list[bool | None]:
        out = []
        for p, u in shared:
            c = center_of.get(norm_edge(p, u))
            out.append(None if c is None else c == p)
        return out

    top, bottom = inside(rec.top_shared), inside(rec.bottom_shared)
    if None in top or None in bottom:
        return INVALID
    if all(top) and not any(bottom):
        return TRUE_PARTITIONED
    if all(bottom) and not any(top):
        return FALSE_PARTITIONED
    return INVALID


def assignment_from_partition(registry: GadgetRegistry, partition, num_vars: int):
    """Read a truth assignment off a partition; ``None`` if some gadget is Invalid.

    Variables without a gadget are reported as False.
    """
    values = [False] * num_vars
    for x in registry.variables:
        label = classify_gadget_partition(registry, partition, x)
        if label == INVALID:
            return None
        values[x - 1] = label == TRUE_PARTITIONED
    return tuple(values)
