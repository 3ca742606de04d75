"""Cost hypergraphs with 2- and 3-edges and an exact simplex-matching solver.

The solver is a subset dynamic program: the state is the set of still
uncovered vertices, and each step covers the lowest uncovered vertex with a
pair or triple edge.  It is exact and fast enough for a couple dozen
vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .core import Database, InfeasibleError, group_cost, require_plain
from .hierarchy import GeneralizationHierarchy, generalized_group_cost

Edge = tuple[int, ...]


@dataclass
class CostHypergraph:
    vertex_count: int
    pair_edges: dict[Edge, int] = field(default_factory=dict)
    triple_edges: dict[Edge, int] = field(default_factory=dict)

    def cost(self, edge) -> int:
        edge = tuple(sorted(edge))
        table = self.pair_edges if len(edge) == 2 else self.triple_edges
        return table[edge]


@dataclass(frozen=True)
class SimplexMatching:
    chosen_edges: tuple[Edge, ...]
    cost: int


def build_anonymity_hypergraph(db: Database, h: GeneralizationHierarchy | None = None) -> CostHypergraph:
    """One vertex per row; every pair and triple of rows becomes a weighted edge."""
    require_plain(db)
    if db.n < 2:
        raise InfeasibleError("no 2-anonymous solution exists")
    if h is None:
        cost = lambda g: group_cost(db, g)  # noqa: E731
    else:
        cost = lambda g: generalized_group_cost(db, g, h)  # noqa: E731
    n = db.n
    hg = CostHypergraph(n)
    for e in combinations(range(n), 2):
        hg.pair_edges[e] = cost(e)
    for e in combinations(range(n), 3):
        hg.triple_edges[e] = cost(e)
    return hg


def check_simplex_conditions(hg: CostHypergraph) -> list[str]:
    """Violations of closure and of c(uv)+c(vw)+c(uw) <= 2c(uvw); empty when valid."""
    problems = []
    for e, c in hg.pair_edges.items():
        if len(e) != 2 or e[0] >= e[1] or not 0 <= e[0] < e[1] < hg.vertex_count:
            problems.append(f"malformed pair edge {e}")
        if c < 0:
            problems.append(f"negative cost on {e}")
    for e, c in hg.triple_edges.items():
        if len(e) != 3 or list(e) != sorted(set(e)) or not (0 <= e[0] and e[-1] < hg.vertex_count):
            problems.append(f"malformed triple edge {e}")
            continue
        pairs = list(combinations(e, 2))
        missing = [p for p in pairs if p not in hg.pair_edges]
        if missing:
            problems.append(f"closure: triple {e} lacks pair edges {missing}")
            continue
        total = sum(hg.pair_edges[p] for p in pairs)
        if total > 2 * c:
            problems.append(f"simplex inequality fails on {e}: pairs sum {total} > 2 * {c}")
    return problems


def solve_simplex_matching(hg: CostHypergraph) -> SimplexMatching:
    """Minimum-cost exact cover of the vertices by pair and triple edges.

    Ties go to the lexicographically smallest sorted edge list.
    """
    n = hg.vertex_count
    if n < 2:
        raise InfeasibleError("infeasible: fewer than two vertices")
    # candidate edges per lowest vertex, in lexicographic order
    by_low: list[list[tuple[Edge, int, int]]] = [[] for _ in range(n)]
    for table in (hg.pair_edges, hg.triple_edges):
        for e, c in table.items():
            mask = 0
            for v in e:
                mask |= 1 << v
            by_low[e[0]].append((e, mask, c))
    for lst in by_low:
        lst.sort()

    INF = float("inf")

    @lru_cache(maxsize=None)
    def best(remaining: int):
        if remaining == 0:
            return 0, None
        low = (remaining & -remaining).bit_length() - 1
        result = (INF, None)
        for e, mask, c in by_low[low]:
            if mask & remaining != mask:
                continue
            sub, _ = best(remaining & ~mask)
            if c + sub < result[0]:
                result = (c + sub, (e, mask))
        return result

    full = (1 << n) - 1
    total, _ = best(full)
    if total == INF:
        best.cache_clear()
        raise InfeasibleError("infeasible: no exact cover by pair/triple edges")
    chosen = []
    remaining = full
    while remaining:
        _, (e, mask) = best(remaining)
        chosen.append(e)
        remaining &= ~mask
    best.cache_clear()
    return SimplexMatching(tuple(chosen), int(total))
