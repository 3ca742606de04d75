"""Line-oriented text formats for databases, graphs, formulas, 3DM instances and hierarchies.

Database::

    alphabet: 0 1
    # q-cols: 0 1      (optional, 0-based)
    # s-cols: 2
    0 1 1
    1 1 0

Graph (vertices 1-based; optional ``n v part`` lines give parts 1..3)::

    p edge 3 3
    e 1 2

CNF follows DIMACS: ``p cnf V C`` then clauses terminated by ``0``.

3DM: ``p 3dm |W| |X| |Y|`` then ``t i j k`` lines with 1-based indices into
W, X and Y; elements are named ``w1``, ``x1``, ``y1`` and so on.

Hierarchy: one ``symbol cost`` per line, children indented below their parent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import STAR, Alphabet, Database
from .hierarchy import GeneralizationHierarchy, validate_hierarchy
from .reductions.gadgets import GadgetRegistry
from .reductions.types import CnfFormula, Graph, ThreeDMInstance, TripartiteGraph


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text: str, comment: str | None = "#"):
    """Yield (line number, stripped content) for non-blank, non-comment lines."""
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or (comment and line.startswith(comment)):
            continue
        yield no, line


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {tok!r}", no) from None


# -- databases ---------------------------------------------------------------

@dataclass(frozen=True)
class DatabaseFile:
    db: Database
    q_columns: tuple[int, ...] | None = None
    s_columns: tuple[int, ...] | None = None


def parse_database_file(text: str, anonymized: bool = False, star: str = STAR) -> DatabaseFile:
    symbols = None
    cols: dict[str, tuple[int, ...]] = {}
    rows: list[tuple[str, ...]] = []
    width = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            for key in ("q-cols", "s-cols"):
                if body.startswith(key + ":"):
                    cols[key] = tuple(_int(t, no, "column index") for t in body[len(key) + 1:].split())
            continue
        if line.startswith("alphabet:"):
            if symbols is not None or rows:
                raise FormatError("alphabet header must come once, before the rows", no)
            symbols = tuple(line[len("alphabet:"):].split())
            if len(set(symbols)) != len(symbols):
                raise FormatError("repeated alphabet symbol", no)
            if star in symbols:
                raise FormatError(f"the star {star!r} cannot be an alphabet symbol", no)
            continue
        row = tuple(line.split())
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise FormatError(f"row has {len(row)} cells, expected {width}", no)
        for tok in row:
            if tok == star:
                if not anonymized:
                    raise FormatError("star cells are only allowed in anonymized databases", no)
            elif symbols is not None and tok not in symbols:
                raise FormatError(f"token {tok!r} is not in the alphabet", no)
        rows.append(row)
    if not rows and symbols is None:
        raise FormatError("empty database file")
    if symbols is None:
        db = Database.from_rows(rows, star=star)
    else:
        db = Database(Alphabet(symbols, star), tuple(rows))
    return DatabaseFile(db, cols.get("q-cols"), cols.get("s-cols"))


def parse_database(text: str, anonymized: bool = False) -> Database:
    return parse_database_file(text, anonymized).db


def serialize_database(db: Database, q_columns=None, s_columns=None) -> str:
    out = ["alphabet: " + " ".join(db.alphabet.symbols)]
    if q_columns is not None:
        out.append("# q-cols: " + " ".join(map(str, q_columns)))
    if s_columns is not None:
        out.append("# s-cols: " + " ".join(map(str, s_columns)))
    out.extend(" ".join(r) for r in db.rows)
    return "\n".join(out) + "\n"


# -- graphs ------------------------------------------------------------------

def parse_graph_file(text: str) -> Graph | TripartiteGraph:
    """A plain graph, or a tripartite one when every vertex has an ``n v part`` line."""
    header = None
    edges = []
    parts: dict[int, int] = {}
    for no, line in _lines(text, comment="c"):
        tok = line.split()
        if tok[0] == "p":
            if header is not None:
                raise FormatError("second problem line", no)
            if len(tok) != 4 or tok[1] != "edge":
                raise FormatError("expected 'p edge <vertices> <edges>'", no)
            header = (_int(tok[2], no, "vertex count"), _int(tok[3], no, "edge count"))
            continue
        if header is None:
            raise FormatError("data before the 'p edge' line", no)
        n = header[0]
        if tok[0] == "e":
            if len(tok) != 3:
                raise FormatError("expected 'e <u> <v>'", no)
            u, v = (_int(t, no, "vertex") for t in tok[1:])
            for x in (u, v):
                if not 1 <= x <= n:
                    raise FormatError(f"vertex {x} outside 1..{n}", no)
            if u == v:
                raise FormatError(f"loop at vertex {u}", no)
            e = (min(u, v) - 1, max(u, v) - 1)
            if e in edges:
                raise FormatError(f"duplicate edge {u} {v}", no)
            edges.append(e)
        elif tok[0] == "n":
            if len(tok) != 3:
                raise FormatError("expected 'n <vertex> <part>'", no)
            v, p = _int(tok[1], no, "vertex"), _int(tok[2], no, "part")
            if not 1 <= v <= n or p not in (1, 2, 3):
                raise FormatError("vertex out of range or part not in 1..3", no)
            parts[v - 1] = p - 1
        else:
            raise FormatError(f"unknown line type {tok[0]!r}", no)
    if header is None:
        raise FormatError("missing 'p edge' line")
    if len(edges) != header[1]:
        raise FormatError(f"header promises {header[1]} edges, found {len(edges)}")
    g = Graph(header[0], tuple(edges))
    if not parts:
        return g
    if len(parts) != header[0]:
        raise FormatError("every vertex needs an 'n v part' line")
    labels = tuple(parts[v] for v in range(header[0]))
    for u, v in g.edges:
        if labels[u] == labels[v]:
            raise FormatError(f"edge {u + 1} {v + 1} lies inside part {labels[u] + 1}")
    return TripartiteGraph(g, labels)


def parse_graph(text: str) -> Graph:
    g = parse_graph_file(text)
    return g.graph if isinstance(g, TripartiteGraph) else g


def parse_tripartite(text: str) -> TripartiteGraph:
    g = parse_graph_file(text)
    if not isinstance(g, TripartiteGraph):
        raise FormatError("tripartite graph needs 'n v part' lines")
    return g


def serialize_graph(g: Graph | TripartiteGraph) -> str:
    base = g.graph if isinstance(g, TripartiteGraph) else g
    out = [f"p edge {base.vertex_count} {base.m}"]
    if isinstance(g, TripartiteGraph):
        out.extend(f"n {v + 1} {p + 1}" for v, p in enumerate(g.parts))
    out.extend(f"e {u + 1} {v + 1}" for u, v in base.edges)
    return "\n".join(out) + "\n"


# -- CNF ---------------------------------------------------------------------

def parse_cnf(text: str) -> CnfFormula:
    header = None
    clauses = []
    pending: list[int] = []
    pending_line = None
    for no, line in _lines(text, comment="c"):
        tok = line.split()
        if tok[0] == "p":
            if header is not None:
                raise FormatError("second problem line", no)
            if len(tok) != 4 or tok[1] != "cnf":
                raise FormatError("expected 'p cnf <vars> <clauses>'", no)
            header = (_int(tok[2], no, "variable count"), _int(tok[3], no, "clause count"))
            continue
        if header is None:
            raise FormatError("clause before the 'p cnf' line", no)
        for t in tok:
            lit = _int(t, no, "literal")
            if pending_line is None:
                pending_line = no
            if lit == 0:
                if len(pending) != 3:
                    raise FormatError(f"clause has {len(pending)} literals, expected 3", pending_line)
                clauses.append(tuple(pending))
                pending, pending_line = [], None
            elif abs(lit) > header[0]:
                raise FormatError(f"literal {lit} exceeds variable count {header[0]}", no)
            else:
                pending.append(lit)
    if header is None:
        raise FormatError("missing 'p cnf' line")
    if pending:
        raise FormatError("last clause is not terminated by 0", pending_line)
    if len(clauses) != header[1]:
        raise FormatError(f"header promises {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def serialize_cnf(phi: CnfFormula) -> str:
    out = [f"p cnf {phi.num_vars} {len(phi.clauses)}"]
    out.extend(" ".join(map(str, c)) + " 0" for c in phi.clauses)
    return "\n".join(out) + "\n"


# -- 3DM ---------------------------------------------------------------------

def parse_3dm(text: str) -> ThreeDMInstance:
    header = None
    triples = []
    seen: dict[str, int] = {}
    for no, line in _lines(text, comment="c"):
        tok = line.split()
        if tok[0] == "p":
            if len(tok) != 5 or tok[1] != "3dm" or header is not None:
                raise FormatError("expected a single 'p 3dm |W| |X| |Y|' line", no)
            header = tuple(_int(t, no, "set size") for t in tok[2:])
            continue
        if header is None:
            raise FormatError("triple before the 'p 3dm' line", no)
        if tok[0] != "t" or len(tok) != 4:
            raise FormatError("expected 't <w> <x> <y>'", no)
        t = []
        for idx, size, name in zip(tok[1:], header, "wxy"):
            i = _int(idx, no, "element index")
            if not 1 <= i <= size:
                raise FormatError(f"{name}{i} outside 1..{size}", no)
            e = f"{name}{i}"
            seen[e] = seen.get(e, 0) + 1
            if seen[e] > 3:
                raise FormatError(f"{e} occurs in more than 3 triples", no)
            t.append(e)
        t = tuple(t)
        if t in triples:
            raise FormatError("duplicate triple", no)
        triples.append(t)
    if header is None:
        raise FormatError("missing 'p 3dm' line")
    W, X, Y = ([f"{c}{i}" for i in range(1, s + 1)] for c, s in zip("wxy", header))
    return ThreeDMInstance(W, X, Y, tuple(triples))


def serialize_3dm(inst: ThreeDMInstance) -> str:
    pos = [{e: i + 1 for i, e in enumerate(part)} for part in (inst.W, inst.X, inst.Y)]
    out = [f"p 3dm {len(inst.W)} {len(inst.X)} {len(inst.Y)}"]
    out.extend("t " + " ".join(str(p[e]) for p, e in zip(pos, t)) for t in inst.triples)
    return "\n".join(out) + "\n"


# -- hierarchies ---------------------------------------------------------------

def parse_hierarchy(text: str, alphabet=None) -> GeneralizationHierarchy:
    parent: dict[str, str | None] = {}
    cost: dict[str, int] = {}
    line_of: dict[str, int] = {}
    stack: list[tuple[int, str]] = []  # (indent, symbol)
    for no, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        if "\t" in raw[: len(raw) - len(raw.lstrip())]:
            raise FormatError("indent with spaces, not tabs", no)
        indent = len(raw) - len(raw.lstrip())
        tok = raw.split()
        if len(tok) != 2:
            raise FormatError("expected '<symbol> <cost>'", no)
        sym, c = tok[0], _int(tok[1], no, "cost")
        if sym in parent:
            raise FormatError(f"symbol {sym!r} listed twice", no)
        while stack and stack[-1][0] >= indent:
            stack.pop()
        if not stack and parent:
            raise FormatError("a second root; indent it under the first", no)
        up = stack[-1][1] if stack else None
        if up is not None and cost[up] < c:
            raise FormatError(f"cost {c} of {sym!r} exceeds its parent {up!r} ({cost[up]})", no)
        parent[sym], cost[sym], line_of[sym] = up, c, no
        stack.append((indent, sym))
    if not parent:
        raise FormatError("empty hierarchy file")
    h = GeneralizationHierarchy(parent, cost)
    problems = validate_hierarchy(h, alphabet)
    if problems:
        raise FormatError("; ".join(problems))
    return h


def serialize_hierarchy(h: GeneralizationHierarchy) -> str:
    out = []

    def walk(v: str, level: int):
        out.append("  " * level + f"{v} {h.cost[v]}")
        for c in h.children[v]:
            walk(c, level + 1)

    walk(h.root, 0)
    return "\n".join(out) + "\n"


# -- JSON sidecars (vertices 1-based, matching the graph format) ---------------

def _shift_edges(edges, by: int):
    return [[u + by, v + by] for u, v in edges]


def registry_to_json(reg: GadgetRegistry) -> str:
    data = reg.to_dict()
    for r in data["variables"]:
        r["vertices"] = [v + 1 for v in r["vertices"]]
        for key in ("top_shared", "bottom_shared", "cross"):
            r[key] = _shift_edges(r[key], 1)
    for c in data["clauses"]:
        c["center"] += 1
        c["private_edge"] = [v + 1 for v in c["private_edge"]]
        c["shared_edges"] = _shift_edges(c["shared_edges"], 1)
    for h in data["hubs"]:
        h["vertex"] += 1
        h["edges"] = _shift_edges(h["edges"], 1)
    return json.dumps(data, indent=1)


def registry_from_json(text: str) -> GadgetRegistry:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad registry JSON: {exc}", exc.lineno) from None
    for r in data.get("variables", []):
        r["vertices"] = [v - 1 for v in r["vertices"]]
        for key in ("top_shared", "bottom_shared", "cross"):
            r[key] = _shift_edges(r[key], -1)
    for c in data.get("clauses", []):
        c["center"] -= 1
        c["private_edge"] = [v - 1 for v in c["private_edge"]]
        c["shared_edges"] = _shift_edges(c["shared_edges"], -1)
    for h in data.get("hubs", []):
        h["vertex"] -= 1
        h["edges"] = _shift_edges(h["edges"], -1)
    return GadgetRegistry.from_dict(data)


def partition_to_json(partition) -> str:
    blocks = [_shift_edges(b, 1) for b in partition]
    return json.dumps({"blocks": blocks})


def partition_from_json(text: str) -> list[tuple[tuple[int, int], ...]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad partition JSON: {exc}", exc.lineno) from None
    blocks = data["blocks"] if isinstance(data, dict) else data
    return [tuple((u - 1, v - 1) for u, v in b) for b in blocks]
