"""Databases, suppression costs and k-anonymity checks.

A database is an ``n x m`` matrix of opaque string tokens.  Anonymized
databases may additionally contain the star token, which compares equal only
to itself.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

STAR = "*"

Row = tuple[str, ...]
Group = tuple[int, ...]


class InfeasibleError(ValueError):
    """Raised when an instance admits no solution of the requested kind."""


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    star: str = STAR

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        if self.star in self.symbols:
            raise ValueError(f"star token {self.star!r} cannot be an alphabet symbol")

    def __contains__(self, token) -> bool:
        return token in self._lookup

    def __len__(self) -> int:
        return len(self.symbols)

    @cached_property
    def _lookup(self) -> frozenset:
        return frozenset(self.symbols)


@dataclass(frozen=True)
class Database:
    """Rows of equal length over ``alphabet``; star cells mark suppression."""

    alphabet: Alphabet
    rows: tuple[Row, ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if rows:
            m = len(rows[0])
            for i, r in enumerate(rows):
                if len(r) != m:
                    raise ValueError(f"row {i} has {len(r)} cells, expected {m}")
                for tok in r:
                    if tok != self.alphabet.star and tok not in self.alphabet:
                        raise ValueError(f"row {i}: token {tok!r} not in alphabet")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], symbols: Iterable | None = None,
                  star: str = STAR) -> "Database":
        """Build a database, inferring the alphabet from the cells if needed."""
        rows = [tuple(str(t) for t in r) for r in rows]
        if symbols is None:
            seen = dict.fromkeys(t for r in rows for t in r if t != star)
            symbols = sorted(seen, key=_natural_key)
        return cls(Alphabet(tuple(str(s) for s in symbols), star), tuple(rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def has_stars(self) -> bool:
        star = self.alphabet.star
        return any(star in r for r in self.rows)

    def subset(self, indices: Iterable[int]) -> "Database":
        return Database(self.alphabet, tuple(self.rows[i] for i in indices))

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class AnonymizationSolution:
    """A partition of the rows plus the released row of every group."""

    groups: tuple[Group, ...]
    anonymized_rows: tuple[Row, ...]
    total_cost: int
    n: int = field(default=0)

    @property
    def min_group_size(self) -> int:
        return min(len(g) for g in self.groups)

    def released_rows(self) -> tuple[Row, ...]:
        """The anonymized database, in original row order."""
        out: list[Row | None] = [None] * self.n
        for g, r in zip(self.groups, self.anonymized_rows):
            for i in g:
                out[i] = r
        return tuple(out)

    def released(self, db: Database) -> Database:
        return Database(db.alphabet, self.released_rows())


def _natural_key(tok: str):
    return (0, int(tok), "") if tok.lstrip("-").isdigit() else (1, 0, tok)


def _check_group(db: Database, group: Iterable[int]) -> Group:
    g = tuple(group)
    if not g:
        raise ValueError("empty group")
    if len(set(g)) != len(g):
        raise ValueError("group indices must be distinct")
    for i in g:
        if not 0 <= i < db.n:
            raise ValueError(f"row index {i} out of range [0, {db.n})")
    return g


def disagreement_columns(db: Database, group: Iterable[int]) -> set[int]:
    """Columns on which the rows of ``group`` do not all carry the same token."""
    g = _check_group(db, group)
    rows = [db.rows[i] for i in g]
    first = rows[0]
    return {j for j in range(db.m) if any(r[j] != first[j] for r in rows[1:])}


def group_cost(db: Database, group: Iterable[int]) -> int:
    """Stars needed to make the rows of ``group`` identical."""
    g = _check_group(db, group)
    return len(g) * len(disagreement_columns(db, g))


def suppress(db: Database, group: Iterable[int]) -> Row:
    """The common released row of ``group``: shared tokens kept, the rest starred."""
    g = _check_group(db, group)
    bad = disagreement_columns(db, g)
    first = db.rows[g[0]]
    star = db.alphabet.star
    return tuple(star if j in bad else first[j] for j in range(db.m))


def normalize_partition(groups: Iterable[Iterable[int]], n: int) -> tuple[Group, ...]:
    """Sort a partition canonically, raising if it is not a partition of range(n)."""
    out = []
    seen: set[int] = set()
    for g in groups:
        g = tuple(sorted(g))
        if not g:
            raise ValueError("not a partition: empty group")
        for i in g:
            if i in seen or not 0 <= i < n:
                raise ValueError(f"not a partition: row {i} repeated or out of range")
            seen.add(i)
        out.append(g)
    if len(seen) != n:
        raise ValueError(f"not a partition: {n - len(seen)} rows uncovered")
    return tuple(sorted(out))


def anonymize_partition(db: Database, groups: Iterable[Iterable[int]]) -> AnonymizationSolution:
    parts = normalize_partition(groups, db.n)
    released = tuple(suppress(db, g) for g in parts)
    cost = sum(len(g) * r.count(db.alphabet.star) for g, r in zip(parts, released))
    return AnonymizationSolution(parts, released, cost, db.n)


def is_k_anonymous(db: Database, k: int) -> bool:
    """True iff every row has at least ``k - 1`` cell-wise identical companions."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    counts = Counter(db.rows)
    return all(counts[r] >= k for r in db.rows)


def require_plain(db: Database) -> None:
    if db.has_stars:
        raise ValueError("input database must not contain star cells")
