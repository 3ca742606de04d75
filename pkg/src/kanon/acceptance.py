"""The acceptance suite: nine oracle-backed checks at desk scale.

Each ``criterion_N`` returns a :class:`CriterionResult`; ``run_all`` runs them
in order.  Both ``tests/test_acceptance.py`` and ``kanon selftest`` use this.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product

import networkx as nx

from .core import Database, InfeasibleError, group_cost
from .diversity import DiversityInstance, is_l_diverse, release, solve_l_diversity_bruteforce
from .generators import duplicated_database, random_3dm, random_database, random_hierarchy, random_tripartite
from .hierarchy import GeneralizationHierarchy, generalized_group_cost, star_hierarchy
from .oracles import (
    INVALID,
    assignment_from_partition,
    classify_gadget_partition,
    edge_partition_search,
    enumerate_1in3_sat,
    iter_edge_partitions,
    max_3dm_bruteforce,
    verify_edge_partition,
)
from .reductions import (
    CnfFormula,
    Graph,
    formula_to_graph,
    graph_to_incidence_db,
    is_matching,
    map_3dm_solution,
    tdm3_to_db27,
    tripartite_to_2div,
    tripartite_to_3div,
)
from .simplex import build_anonymity_hypergraph, check_simplex_conditions
from .solvers import (
    brute_force_k_anonymity,
    kernelize,
    solve_2_anonymity,
    solve_k_anonymity_dnc,
    solve_k_anonymity_kernelized,
)

EXAMPLE_1 = CnfFormula(3, ((-1, 2, 3), (1, -2, 3)))
EXAMPLE_2 = CnfFormula(3, ((1, 2, 3), (-1, -2, -3)))


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    limit: float | None = None

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number}. {self.title} ({self.seconds:.1f}s): {self.detail}"


def _timed(number: int, title: str, limit: float | None = None):
    def wrap(fn):
        def run(*args, **kwargs) -> CriterionResult:
            start = time.perf_counter()
            passed, detail = fn(*args, **kwargs)
            took = time.perf_counter() - start
            if limit is not None and took > limit:
                passed, detail = False, f"{detail}; exceeded {limit:.0f}s"
            return CriterionResult(number, title, passed, detail, took, limit)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


# -- 1 -------------------------------------------------------------------------

@_timed(1, "solver cross-agreement", limit=120)
def criterion_1(instances: int = 500, seed: int = 1):
    rng = random.Random(seed)
    mismatches = []
    for it in range(instances):
        db = random_database(rng, rng.randint(3, 9), rng.randint(1, 5), rng.randint(1, 4))
        for k in (2, 3):
            costs = {
                "brute": brute_force_k_anonymity(db, k).total_cost,
                "dnc": solve_k_anonymity_dnc(db, k).total_cost,
                "kernel": solve_k_anonymity_kernelized(db, k).total_cost,
            }
            if k == 2:
                costs["simplex"] = solve_2_anonymity(db).total_cost
            if len(set(costs.values())) != 1:
                mismatches.append((it, k, costs))
    return not mismatches, f"{instances} databases x k in {{2,3}}, {len(mismatches)} disagreements"


# -- 2 -------------------------------------------------------------------------

@_timed(2, "simplex conditions on built hypergraphs", limit=30)
def criterion_2(instances: int = 1000, seed: int = 2):
    rng = random.Random(seed)
    bad = 0
    for it in range(instances):
        c = rng.randint(1, 4)
        db = random_database(rng, rng.randint(2, 8), rng.randint(1, 5), c)
        h = random_hierarchy(rng, db.alphabet.symbols) if it % 2 else None
        if check_simplex_conditions(build_anonymity_hypergraph(db, h)):
            bad += 1
    return bad == 0, f"{instances} hypergraphs (half with random hierarchies), {bad} violating"


# -- 3 -------------------------------------------------------------------------

def _common_ancestors(h: GeneralizationHierarchy, token: str) -> set[str]:
    out = {token}
    while h.parent[token] is not None:
        token = h.parent[token]
        out.add(token)
    return out


def _hierarchy_group_cost(db: Database, group, h: GeneralizationHierarchy) -> int:
    """Cheapest common generalization per column, found by scanning all common ancestors."""
    total = 0
    for j in range(db.m):
        column = {db.rows[i][j] for i in group}
        if len(column) == 1:
            continue
        shared = set.intersection(*(_common_ancestors(h, t) for t in column))
        total += len(group) * min(h.cost[a] for a in shared)
    return total


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        yield [[first]] + sub
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1:]


def hierarchy_partition_bruteforce(db: Database, h: GeneralizationHierarchy) -> int:
    """Cheapest partition with every group of size >= 2, groups of any size allowed."""
    best = None
    for parts in _set_partitions(list(range(db.n))):
        if any(len(g) < 2 for g in parts):
            continue
        c = sum(_hierarchy_group_cost(db, g, h) for g in parts)
        if best is None or c < best:
            best = c
    if best is None:
        raise InfeasibleError("fewer than two rows")
    return best


@_timed(3, "hierarchy consistency")
def criterion_3(instances: int = 150, seed: int = 3):
    # star hierarchy versus plain suppression, exhaustively on tiny binary tables
    h = star_hierarchy(("0", "1"))
    checked = 0
    for n, m in ((2, 1), (2, 2), (3, 2), (3, 3), (4, 2)):
        for cells in product("01", repeat=n * m):
            db = Database.from_rows([cells[i * m:(i + 1) * m] for i in range(n)], symbols="01")
            for size in range(1, n + 1):
                for g in combinations(range(n), size):
                    checked += 1
                    if generalized_group_cost(db, g, h) != group_cost(db, g):
                        return False, f"star hierarchy differs on {db.rows} group {g}"
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(instances):
        db = random_database(rng, rng.randint(2, 7), rng.randint(1, 4), rng.randint(1, 4))
        hier = random_hierarchy(rng, db.alphabet.symbols)
        if solve_2_anonymity(db, hier).total_cost != hierarchy_partition_bruteforce(db, hier):
            mismatches += 1
    return mismatches == 0, (f"{checked} star-hierarchy group costs equal; "
                             f"{instances} hierarchy 2-anonymity instances, {mismatches} mismatches")


# -- 4 -------------------------------------------------------------------------

def _all_matchings(inst):
    triples = list(inst.triples)
    out = []
    for r in range(len(triples) + 1):
        for sub in combinations(triples, r):
            if is_matching(inst, sub):
                out.append(sub)
    return out


@_timed(4, "3DM-3 L-reduction identities", limit=120)
def criterion_4(instances: int = 60, seed: int = 4):
    rng = random.Random(seed)
    problems = []
    for it in range(instances):
        inst = random_3dm(rng, rng.randint(1, 3))
        db = tdm3_to_db27(inst)
        n = db.n
        pos = {e: i for i, e in enumerate(inst.elements)}
        triple_rows = {tuple(sorted(pos[e] for e in t)) for t in inst.triples}
        for size in range(3, n + 1):
            for g in combinations(range(n), size):
                want = (78 if g in triple_rows else 81) if size == 3 else 27 * size
                if group_cost(db, g) != want:
                    problems.append(f"instance {it}: group {g} costs {group_cost(db, g)}, want {want}")
        best = len(max_3dm_bruteforce(inst))
        opt = brute_force_k_anonymity(db, 3).total_cost
        if opt != 27 * n - 3 * best:
            problems.append(f"instance {it}: optimum {opt} != 27*{n} - 3*{best}")
        for mt in _all_matchings(inst):
            img = map_3dm_solution(inst, mt)
            if img.c_3dm != 27 * img.c_3anon or img.solution.total_cost != 27 * n - 3 * len(mt):
                problems.append(f"instance {it}: identity fails for {mt}")
    ok = not problems
    return ok, f"{instances} instances, {len(problems)} violations" + ("" if ok else f": {problems[0]}")


# -- 5 and 6 ---------------------------------------------------------------------

def small_formulas(num_vars: int = 4, max_clauses: int = 2):
    """Every formula up to ``max_clauses`` clauses, clauses as literal multisets."""
    lits = [s * v for v in range(1, num_vars + 1) for s in (1, -1)]
    clauses = list(combinations_with_replacement(lits, 3))
    for count in range(1, max_clauses + 1):
        for combo in combinations_with_replacement(clauses, count):
            yield CnfFormula(num_vars, combo)


@dataclass
class SweepResult:
    formulas: int
    equivalence_failures: list
    not_simple: list
    with_triangles: list
    not_bipartite: list
    dichotomy_failures: list
    examples_ok: bool
    example_detail: str
    partitions_checked: int


def _triangle_free(g: Graph) -> bool:
    return sum(nx.triangles(nx.Graph(g.edges)).values()) == 0


def _bipartite(g: Graph) -> bool:
    G = nx.Graph()
    G.add_nodes_from(range(g.vertex_count))
    G.add_edges_from(g.edges)
    return nx.is_bipartite(G)


def _check_partition(phi, reg, part) -> str | None:
    for x in reg.variables:
        if classify_gadget_partition(reg, part, x) == INVALID:
            return f"variable {x} is Invalid"
    a = assignment_from_partition(reg, part, phi.num_vars)
    if a not in enumerate_1in3_sat(phi):
        return f"assignment {a} does not 1-in-3 satisfy the formula"
    return None


@lru_cache(maxsize=None)
def formula_sweep() -> SweepResult:
    res = SweepResult(0, [], [], [], [], [], False, "", 0)
    for phi in small_formulas():
        res.formulas += 1
        g, reg = formula_to_graph(phi)
        if len({tuple(sorted(e)) for e in g.edges}) != g.m or any(u == v for u, v in g.edges):
            res.not_simple.append(phi)
        if not _triangle_free(g):
            res.with_triangles.append(phi)
        if not _bipartite(g):
            res.not_bipartite.append(phi)
        sat = enumerate_1in3_sat(phi)
        part = edge_partition_search(g)
        if bool(sat) != (part is not None) or (part is not None and not verify_edge_partition(g, part, False)):
            res.equivalence_failures.append(phi)
        if part is not None:
            res.partitions_checked += 1
            why = _check_partition(phi, reg, part)
            if why:
                res.dichotomy_failures.append((phi, why))
    # the two worked examples, all of their partitions
    g1, reg1 = formula_to_graph(EXAMPLE_1)
    parts1 = list(iter_edge_partitions(g1))
    read = sorted(assignment_from_partition(reg1, p, 3) for p in parts1)
    g2, _ = formula_to_graph(EXAMPLE_2)
    none2 = edge_partition_search(g2) is None
    want = sorted(enumerate_1in3_sat(EXAMPLE_1))
    res.examples_ok = read == want and none2 and not enumerate_1in3_sat(EXAMPLE_2)
    for p in parts1:
        res.partitions_checked += 1
        why = _check_partition(EXAMPLE_1, reg1, p)
        if why:
            res.dichotomy_failures.append((EXAMPLE_1, why))
    res.example_detail = (f"example 1: {len(parts1)} partitions reading {read}; "
                          f"example 2: {'no partition' if none2 else 'partition found'}")
    return res


@_timed(5, "edge-partition reduction end to end", limit=600)
def criterion_5():
    r = formula_sweep()
    ok = (not r.equivalence_failures and not r.not_simple and not r.with_triangles
          and not r.not_bipartite and r.examples_ok)
    detail = (f"{r.formulas} formulas: {r.formulas - len(r.equivalence_failures)} agree on satisfiability, "
              f"{len(r.not_simple)} not simple, {len(r.with_triangles)} with triangles, "
              f"{len(r.not_bipartite)} not bipartite; {r.example_detail}")
    return ok, detail


@_timed(6, "variable gadget dichotomy")
def criterion_6():
    r = formula_sweep()
    ok = not r.dichotomy_failures and r.partitions_checked > 0
    detail = f"{r.partitions_checked} partitions classified, {len(r.dichotomy_failures)} failures"
    if r.dichotomy_failures:
        detail += f": {r.dichotomy_failures[0]}"
    return ok, detail


# -- 7 -------------------------------------------------------------------------

def small_connected_graphs(edge_counts=(3, 6), max_vertices: int = 6):
    """All connected simple graphs on at most ``max_vertices`` vertices, up to isomorphism."""
    for G in nx.graph_atlas_g():
        if 0 < G.number_of_nodes() <= max_vertices and G.number_of_edges() in edge_counts \
                and nx.is_connected(G):
            yield Graph(G.number_of_nodes(), tuple(G.edges()))


@_timed(7, "incidence table 3-anonymity vs triangle/4-star partition")
def criterion_7():
    graphs = mismatches = yes = 0
    for g in small_connected_graphs():
        graphs += 1
        cost = brute_force_k_anonymity(graph_to_incidence_db(g), 3).total_cost
        split = edge_partition_search(g, allow_triangles=True) is not None
        yes += split
        if (cost == 3 * g.m) != split:
            mismatches += 1
    return graphs > 0 and mismatches == 0, f"{graphs} graphs ({yes} partitionable), {mismatches} mismatches"


# -- 8 -------------------------------------------------------------------------

def _pair_groups_fail(inst: DiversityInstance) -> bool:
    for pair in combinations(range(inst.db.n), 2):
        sub = DiversityInstance(inst.db.subset(pair), inst.q_columns, inst.s_columns)
        if is_l_diverse(sub, release(sub, [(0, 1)]), 2):
            return False
    return True


@_timed(8, "diversity reductions", limit=300)
def criterion_8(instances: int = 36, seed: int = 8):
    rng = random.Random(seed)
    problems = []
    yes = 0
    for it in range(instances):
        m = (3, 6, 9)[it % 3]
        g = random_tripartite(rng, m, max_vertices=7, seed_triangles=rng.randint(0, m // 3))
        tri = edge_partition_search(g.graph, allow_triangles=True, allow_stars=False) is not None
        yes += tri
        two = tripartite_to_2div(g)
        if not _pair_groups_fail(two):
            problems.append(f"graph {it}: a 2-row group is 2-diverse")
        for inst, l in ((two, 2), (tripartite_to_3div(g), 3)):
            sol = solve_l_diversity_bruteforce(inst, l)
            hit = sol is not None and sol.cost == 3 * m
            if hit != tri:
                problems.append(f"graph {it}: l={l} cost {sol and sol.cost} vs triangle partition {tri}")
    ok = not problems
    detail = f"{instances} tripartite graphs ({yes} triangle-partitionable), {len(problems)} violations"
    return ok, detail + ("" if ok else f": {problems[0]}")


# -- 9 -------------------------------------------------------------------------

@_timed(9, "kernelization contract")
def criterion_9(instances: int = 120, seed: int = 9):
    rng = random.Random(seed)
    problems = []
    biggest = 0
    for it in range(instances):
        c, ell, k = rng.randint(1, 2), rng.randint(1, 2), rng.choice((2, 3))
        n = rng.randint(k, 60)
        db = duplicated_database(rng, n, ell, c)
        ker = kernelize(db, k)
        biggest = max(biggest, ker.kernel.n)
        if ker.kernel.n > 2 * k * k * (2 * c) ** ell:
            problems.append(f"db {it}: kernel {ker.kernel.n} rows")
        if ker.cell_reads > 3 * n * ell:
            problems.append(f"db {it}: {ker.cell_reads} cell reads")
        if solve_k_anonymity_kernelized(db, k).total_cost != solve_k_anonymity_dnc(db, k).total_cost:
            problems.append(f"db {it}: pipeline cost differs")
    ok = not problems
    return ok, (f"{instances} databases, largest kernel {biggest} rows, {len(problems)} violations"
                + ("" if ok else f": {problems[0]}"))


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9)


def run_all(report=print) -> list[CriterionResult]:
    results = []
    for fn in CRITERIA:
        r = fn()
        if report:
            report(r.line())
        results.append(r)
    return results
