"""3DM-3 to 27-attribute 3-anonymity.

Each element ``r`` gets one row built from the (up to) three triples that
contain it.  Column ``9a + 3b + c`` holds triple ``a`` for W-rows, triple
``b`` for X-rows and triple ``c`` for Y-rows, so three rows share a column
value exactly when they are the three coordinates of one triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..core import AnonymizationSolution, Database, InfeasibleError, suppress
from .types import ThreeDMInstance

COLUMNS = 27


def triple_symbol(index: int) -> str:
    return f"t{index}"


def _containing_triples(inst: ThreeDMInstance) -> dict[str, list[str]]:
    slots: dict[str, list[str]] = {e: [] for e in inst.elements}
    for idx, t in enumerate(inst.triples):
        for e in t:
            slots[e].append(triple_symbol(idx))
    return slots


def tdm3_to_db27(inst: ThreeDMInstance) -> Database:
    """Rows in the order W, X, Y; short triple lists padded with unique symbols."""
    slots = _containing_triples(inst)
    padding = []
    for e in inst.elements:
        while len(slots[e]) < 3:
            sym = f"pad{len(padding)}"
            padding.append(sym)
            slots[e].append(sym)
    rows = []
    for part, shift in ((inst.W, 9), (inst.X, 3), (inst.Y, 1)):
        for e in part:
            t = slots[e]
            rows.append(tuple(t[(col // shift) % 3] for col in range(COLUMNS)))
    symbols = [triple_symbol(i) for i in range(len(inst.triples))] + list(inst.elements) + padding
    return Database.from_rows(rows, symbols=symbols)


def row_index(inst: ThreeDMInstance) -> dict[str, int]:
    return {e: i for i, e in enumerate(inst.elements)}


def is_matching(inst: ThreeDMInstance, matching) -> bool:
    chosen = list(matching)
    if any(t not in inst.triples for t in chosen) or len(set(chosen)) != len(chosen):
        return False
    used = [e for t in chosen for e in t]
    return len(used) == len(set(used))


@dataclass(frozen=True)
class MatchingImage:
    solution: AnonymizationSolution
    c_3dm: Fraction
    c_3anon: Fraction


def map_3dm_solution(inst: ThreeDMInstance, matching) -> MatchingImage:
    """Turn a matching into a 3-anonymization of the 27-column database.

    Matched triples become 3-row groups; the remaining rows are packed into
    groups of 3 to 5 that are starred completely, even where their rows
    happen to agree.  When only one or two rows remain they cannot stand
    alone and are folded into the last matched group, which is then starred
    completely too; with |W| = |X| = |Y| this never happens.
    """
    matching = [tuple(t) for t in matching]
    if not is_matching(inst, matching):
        raise ValueError("not a valid matching of the instance")
    n = len(inst.elements)
    if n < 3:
        raise InfeasibleError("fewer than three rows")
    db = tdm3_to_db27(inst)
    pos = row_index(inst)
    groups = [[pos[e] for e in t] for t in matching]
    used = {i for g in groups for i in g}
    rest = [i for i in range(n) if i not in used]
    packs: list[list[int]] = []
    if len(rest) in (1, 2):
        packs.append(groups.pop() + rest)
    elif rest:
        packs = [rest[i:i + 3] for i in range(0, len(rest) - len(rest) % 3, 3)]
        for j, i in enumerate(rest[len(packs) * 3:]):
            packs[j % len(packs)].append(i)
    released = [suppress(db, g) for g in groups] + [(db.alphabet.star,) * COLUMNS for _ in packs]
    pairs = sorted(zip((tuple(sorted(g)) for g in groups + packs), released))
    cost = sum(len(g) * r.count(db.alphabet.star) for g, r in pairs)
    sol = AnonymizationSolution(tuple(g for g, _ in pairs), tuple(r for _, r in pairs), cost, n)
    c_3dm = Fraction(3 * len(matching), n)
    c_3anon = 1 - Fraction(sol.total_cost, COLUMNS * n)
    return MatchingImage(sol, c_3dm, c_3anon)
