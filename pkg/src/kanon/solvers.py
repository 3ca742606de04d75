"""Exact k-anonymity solvers.

``solve_2_anonymity``
    pairs/triples hypergraph + simplex matching (optionally under a
    generalization hierarchy).
``brute_force_k_anonymity``
    subset DP over row bitmasks with groups of size k..2k-1; the oracle.
``solve_k_anonymity_dnc``
    the divide-and-conquer recursion over sub-multisets of about half size.
``kernelize`` / ``solve_k_anonymity_kernelized``
    strip pure groups of heavily repeated rows, then solve what is left.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .core import (
    AnonymizationSolution,
    Database,
    Group,
    InfeasibleError,
    anonymize_partition,
    group_cost,
    require_plain,
)
from .hierarchy import GeneralizationHierarchy, generalize_partition
from .simplex import build_anonymity_hypergraph, solve_simplex_matching


def _check_k(db: Database, k: int) -> None:
    if k < 1:
        raise ValueError("k must be a positive integer")
    require_plain(db)
    if db.n < k:
        raise InfeasibleError(f"infeasible: {db.n} rows cannot be {k}-anonymized")


def solve_2_anonymity(db: Database, h: GeneralizationHierarchy | None = None) -> AnonymizationSolution:
    hg = build_anonymity_hypergraph(db, h)
    matching = solve_simplex_matching(hg)
    if h is None:
        sol = anonymize_partition(db, matching.chosen_edges)
    else:
        sol = generalize_partition(db, matching.chosen_edges, h)
    assert sol.total_cost == matching.cost
    return sol


def brute_force_k_anonymity(db: Database, k: int) -> AnonymizationSolution:
    """Optimal k-anonymization by exhaustive subset DP (groups of size k..2k-1)."""
    _check_k(db, k)
    n = db.n
    cost_cache: dict[int, int] = {}

    def cost_of(members: tuple[int, ...], mask: int) -> int:
        c = cost_cache.get(mask)
        if c is None:
            c = cost_cache[mask] = group_cost(db, members)
        return c

    INF = float("inf")

    @lru_cache(maxsize=None)
    def best(remaining: int):
        if remaining == 0:
            return 0, None
        rest = [i for i in range(n) if remaining >> i & 1]
        low, others = rest[0], rest[1:]
        result = (INF, None)
        for size in range(k, 2 * k):
            if size > len(rest):
                break
            for extra in combinations(others, size - 1):
                members = (low,) + extra
                mask = 1 << low
                for i in extra:
                    mask |= 1 << i
                tail = remaining & ~mask
                # a leftover of 1..k-1 rows can never be grouped
                if 0 < tail.bit_count() < k:
                    continue
                sub, _ = best(tail)
                total = cost_of(members, mask) + sub
                if total < result[0]:
                    result = (total, (members, mask))
        return result

    full = (1 << n) - 1
    total, _ = best(full)
    groups = []
    remaining = full
    while remaining:
        _, (members, mask) = best(remaining)
        groups.append(members)
        remaining &= ~mask
    best.cache_clear()
    sol = anonymize_partition(db, groups)
    assert sol.total_cost == total
    return sol


def _row_types(db: Database):
    """Distinct rows in first-occurrence order and the indices of each."""
    index_of: dict[tuple, int] = {}
    members: list[list[int]] = []
    for i, r in enumerate(db.rows):
        t = index_of.setdefault(r, len(members))
        if t == len(members):
            members.append([])
        members[t].append(i)
    types = list(index_of)
    return types, members


def _sub_multisets(counts: tuple[int, ...], lo: int, hi: int):
    """All count vectors below ``counts`` whose total lies in [lo, hi]."""
    d = len(counts)
    suffix = [0] * (d + 1)
    for i in range(d - 1, -1, -1):
        suffix[i] = suffix[i + 1] + counts[i]
    current = [0] * d

    def rec(i: int, total: int):
        if i == d:
            if lo <= total:
                yield tuple(current)
            return
        # the rest can add at most suffix[i+1]
        start = max(0, lo - total - suffix[i + 1])
        stop = min(counts[i], hi - total)
        for c in range(start, stop + 1):
            current[i] = c
            yield from rec(i + 1, total + c)
        current[i] = 0

    yield from rec(0, 0)


def solve_k_anonymity_dnc(db: Database, k: int) -> AnonymizationSolution:
    """Optimal k-anonymization by divide and conquer over sub-multisets.

    ``Cost(S) = min over T of Cost(T) + Cost(S - T)`` where ``T`` ranges over
    sub-multisets with ``ceil(|S|/2) <= |T| <= min(ceil(|S|/2) + 2k, |S| - k)``;
    sets of size ``k..2k-1`` form a single group.  Subproblems are memoized on
    their row-content multiset, so repeated rows collapse.
    """
    _check_k(db, k)
    types, members = _row_types(db)
    m = db.m
    INF = float("inf")

    def single_group_cost(counts: tuple[int, ...]) -> int:
        present = [types[t] for t, c in enumerate(counts) if c]
        size = sum(counts)
        bad = sum(1 for j in range(m) if any(r[j] != present[0][j] for r in present[1:]))
        return size * bad

    def lower_bound(counts: tuple[int, ...]) -> int:
        # a row type with fewer than k copies must share a group with a
        # different row, which stars at least one column of >= k rows
        return k if any(0 < c < k for c in counts) else 0

    memo: dict[tuple[int, ...], tuple[float, tuple | None]] = {}

    def cost(S: tuple[int, ...]) -> float:
        hit = memo.get(S)
        if hit is not None:
            return hit[0]
        size = sum(S)
        if size == 0:
            result = (0, None)
        elif size < k:
            result = (INF, None)
        elif size <= 2 * k - 1:
            result = (single_group_cost(S), None)
        else:
            half = math.ceil(size / 2)
            lo, hi = max(half, k), min(half + 2 * k, size - k)
            result = (INF, None)
            for T in _sub_multisets(S, lo, hi):
                # costs are nonnegative: a half that already reaches the
                # incumbent cannot improve it, and zero cannot be beaten
                rest = tuple(a - b for a, b in zip(S, T))
                if lower_bound(T) + lower_bound(rest) >= result[0]:
                    continue
                first = cost(T)
                if first + lower_bound(rest) >= result[0]:
                    continue
                total = first + cost(rest)
                if total < result[0]:
                    result = (total, T)
                    if total == 0:
                        break
        memo[S] = result
        return result[0]

    full = tuple(len(ix) for ix in members)
    total = cost(full)
    if total == INF:
        raise InfeasibleError("infeasible")

    pools = [list(ix) for ix in members]
    groups: list[Group] = []
    stack = [full]
    while stack:
        S = stack.pop()
        _, T = memo[S]
        if T is None:
            g = []
            for t, c in enumerate(S):
                g.extend(pools[t][:c])
                del pools[t][:c]
            groups.append(tuple(g))
        else:
            stack.append(tuple(a - b for a, b in zip(S, T)))
            stack.append(T)
    sol = anonymize_partition(db, groups)
    assert sol.total_cost == total
    return sol


@dataclass(frozen=True)
class Kernel:
    """Outcome of kernelization.

    ``extracted`` holds pure groups (k copies of one row, given as original
    row indices); ``kernel_indices[i]`` is the original index of kernel row i.
    ``cell_reads`` counts every database cell the procedure looked at.
    """

    kernel: Database
    kernel_indices: tuple[int, ...]
    extracted: tuple[Group, ...]
    threshold: int
    cell_reads: int

    def pure_groups(self, db: Database) -> list[tuple[tuple[str, ...], int]]:
        return [(db.rows[g[0]], len(g)) for g in self.extracted]


def kernel_threshold(k: int, ell: int) -> int:
    return k * (2 * k) * 2 ** ell


def kernelize(db: Database, k: int) -> Kernel:
    """Peel off ``<r, k>`` groups while a row occurs more than k*2k*2^ell times."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    ell = db.m
    T = kernel_threshold(k, ell)
    reads = 0
    row_count: dict[tuple, int] = defaultdict(int)
    occurrences: dict[tuple, list[int]] = defaultdict(list)
    for i, r in enumerate(db.rows):
        key = tuple(r)
        reads += ell
        row_count[key] += 1
        occurrences[key].append(i)
    emitted: dict[tuple, int] = defaultdict(int)
    for r in db.rows:
        key = tuple(r)
        reads += ell
        if row_count[key] > T:
            emitted[key] += 1
            row_count[key] -= k
    extracted: list[Group] = []
    taken: set[int] = set()
    for key, times in emitted.items():
        ix = occurrences[key]
        for e in range(times):
            g = tuple(ix[e * k:(e + 1) * k])
            extracted.append(g)
            taken.update(g)
    kernel_indices = tuple(i for i in range(db.n) if i not in taken)
    kernel_rows = []
    for i in kernel_indices:
        kernel_rows.append(tuple(db.rows[i]))
        reads += ell
    kernel = Database(db.alphabet, tuple(kernel_rows))
    return Kernel(kernel, kernel_indices, tuple(extracted), T, reads)


def solve_k_anonymity_kernelized(db: Database, k: int) -> AnonymizationSolution:
    _check_k(db, k)
    ker = kernelize(db, k)
    groups = list(ker.extracted)
    if ker.kernel.n:
        inner = solve_k_anonymity_dnc(ker.kernel, k)
        groups.extend(tuple(ker.kernel_indices[i] for i in g) for g in inner.groups)
    return anonymize_partition(db, groups)
