"""Command-line front end.

Every command prints one JSON object.  Exit status: 0 on success, 1 when the
instance is infeasible (or a check fails), 2 on usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .core import InfeasibleError
from .diversity import DiversityInstance, solve_l_diversity_bruteforce
from .oracles import (
    assignment_from_partition,
    classify_gadget_partition,
    edge_partition_search,
    enumerate_1in3_sat,
    max_3dm_bruteforce,
    verify_edge_partition,
)
from .reductions import (
    formula_to_graph,
    graph_to_incidence_db,
    tdm3_to_db27,
    tripartite_to_2div,
    tripartite_to_3div,
)
from .solvers import (
    brute_force_k_anonymity,
    solve_2_anonymity,
    solve_k_anonymity_dnc,
    solve_k_anonymity_kernelized,
)

OK, INFEASIBLE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(result: dict) -> None:
    print(json.dumps(result, indent=2))


def _columns(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"bad column list {text!r}") from None


def _solution_block(sol, db) -> dict:
    return {
        "status": "ok",
        "cost": sol.total_cost,
        "groups": [list(g) for g in sol.groups],
        "released": [" ".join(r) for r in sol.released_rows()],
    }


def cmd_anonymize(args) -> int:
    if args.k < 1:
        raise UsageError("--k must be positive")
    if args.method == "simplex" and args.k != 2:
        raise UsageError("--method simplex solves k=2 only")
    if args.hierarchy and args.method != "simplex":
        raise UsageError("--hierarchy is supported with --method simplex only")
    db = formats.parse_database(_read(args.input))
    h = formats.parse_hierarchy(_read(args.hierarchy), db.alphabet.symbols) if args.hierarchy else None
    solve = {
        "simplex": lambda: solve_2_anonymity(db, h),
        "dnc": lambda: solve_k_anonymity_dnc(db, args.k),
        "kernel": lambda: solve_k_anonymity_kernelized(db, args.k),
        "brute": lambda: brute_force_k_anonymity(db, args.k),
    }[args.method]
    sol = solve()
    _emit({"command": "anonymize", "method": args.method, "k": args.k, **_solution_block(sol, db)})
    return OK


def cmd_diversify(args) -> int:
    parsed = formats.parse_database_file(_read(args.input))
    q = _columns(args.q_cols) or parsed.q_columns
    s = _columns(args.s_cols) or parsed.s_columns
    if s is None:
        raise UsageError("sensitive columns missing: pass --s-cols or a '# s-cols:' line")
    if q is None:
        q = tuple(j for j in range(parsed.db.m) if j not in s)
    inst = DiversityInstance(parsed.db, q, s)
    sol = solve_l_diversity_bruteforce(inst, args.l)
    if sol is None:
        _emit({"command": "diversify", "l": args.l, "status": "infeasible"})
        return INFEASIBLE
    _emit({"command": "diversify", "l": args.l, "status": "ok", "cost": sol.cost,
           "groups": [list(g) for g in sol.groups],
           "released": [" ".join(r) for r in sol.released.rows]})
    return OK


def cmd_reduce(args) -> int:
    text = _read(args.input)
    result: dict = {"command": "reduce", "from": args.source, "status": "ok"}
    registry = None
    if args.source == "1in3sat":
        g, registry = formula_to_graph(formats.parse_cnf(text))
        artifact = formats.serialize_graph(g)
        result.update(vertices=g.vertex_count, edges=g.m)
    elif args.source == "3dm3":
        db = tdm3_to_db27(formats.parse_3dm(text))
        artifact = formats.serialize_database(db)
        result.update(rows=db.n, columns=db.m)
    elif args.source == "graph":
        db = graph_to_incidence_db(formats.parse_graph(text))
        artifact = formats.serialize_database(db)
        result.update(rows=db.n, columns=db.m)
    else:
        build = tripartite_to_2div if args.source == "tripartite-2div" else tripartite_to_3div
        inst = build(formats.parse_tripartite(text))
        artifact = formats.serialize_database(inst.db, inst.q_columns, inst.s_columns)
        result.update(rows=inst.db.n, columns=inst.db.m, q_cols=list(inst.q_columns),
                      s_cols=list(inst.s_columns))
    if args.registry:
        if registry is None:
            raise UsageError("--registry applies to --from 1in3sat only")
        Path(args.registry).write_text(formats.registry_to_json(registry))
        result["registry"] = args.registry
    if args.output:
        Path(args.output).write_text(artifact)
        result["output"] = args.output
    else:
        result["artifact"] = artifact
    _emit(result)
    return OK


def cmd_oracle(args) -> int:
    text = _read(args.input)
    if args.problem == "1in3sat":
        phi = formats.parse_cnf(text)
        sols = enumerate_1in3_sat(phi)
        _emit({"command": "oracle", "problem": "1in3sat", "status": "ok" if sols else "infeasible",
               "count": len(sols),
               "assignments": [{str(v + 1): b for v, b in enumerate(a)} for a in sols]})
        return OK if sols else INFEASIBLE
    if args.problem == "3dm":
        best = max_3dm_bruteforce(formats.parse_3dm(text))
        _emit({"command": "oracle", "problem": "3dm", "status": "ok", "size": len(best),
               "matching": [list(t) for t in best]})
        return OK
    g = formats.parse_graph(text)
    part = edge_partition_search(g, allow_triangles=args.allow_triangles)
    if part is None:
        _emit({"command": "oracle", "problem": "edge-partition", "status": "infeasible",
               "partition": "none"})
        return INFEASIBLE
    if args.output:
        Path(args.output).write_text(formats.partition_to_json(part))
    _emit({"command": "oracle", "problem": "edge-partition", "status": "ok",
           "partition": json.loads(formats.partition_to_json(part))["blocks"]})
    return OK


def cmd_verify(args) -> int:
    g = formats.parse_graph(_read(args.input))
    part = formats.partition_from_json(_read(args.partition))
    valid = verify_edge_partition(g, part, allow_triangles=args.allow_triangles)
    result: dict = {"command": "verify", "valid": valid}
    if args.registry:
        reg = formats.registry_from_json(_read(args.registry))
        if valid:
            result["classifications"] = {str(x): classify_gadget_partition(reg, part, x)
                                         for x in sorted(reg.variables)}
            width = max(reg.variables, default=0)
            a = assignment_from_partition(reg, part, width)
            result["assignment"] = None if a is None else {str(x): a[x - 1] for x in sorted(reg.variables)}
    result["status"] = "ok" if valid else "invalid"
    _emit(result)
    return OK if valid else INFEASIBLE


def cmd_selftest(args) -> int:
    from .acceptance import CRITERIA

    wanted = set(_columns(args.only) or range(1, len(CRITERIA) + 1))
    results = []
    for number, fn in enumerate(CRITERIA, 1):
        if number in wanted:
            r = fn()
            print(r.line(), file=sys.stderr, flush=True)
            results.append(r)
    passed = all(r.passed for r in results)
    _emit({"command": "selftest", "status": "ok" if passed else "failed",
           "criteria": [{"number": r.number, "title": r.title, "passed": r.passed,
                         "detail": r.detail, "seconds": round(r.seconds, 2)} for r in results]})
    return OK if passed else INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kanon", description="Exact k-anonymity and l-diversity solvers and reductions.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("anonymize", help="optimal k-anonymization of a database file")
    a.add_argument("input", help="database file, or - for stdin")
    a.add_argument("--k", type=int, required=True)
    a.add_argument("--method", choices=("simplex", "dnc", "kernel", "brute"), default="dnc")
    a.add_argument("--hierarchy", metavar="FILE", help="generalization hierarchy (simplex only)")
    a.set_defaults(func=cmd_anonymize)

    d = sub.add_parser("diversify", help="optimal l-diversity by exhaustive search")
    d.add_argument("input")
    d.add_argument("--l", type=int, required=True)
    d.add_argument("--q-cols", help="comma separated 0-based quasi-identifier columns")
    d.add_argument("--s-cols", help="comma separated 0-based sensitive columns")
    d.set_defaults(func=cmd_diversify)

    r = sub.add_parser("reduce", help="build a reduction instance")
    r.add_argument("input")
    r.add_argument("--from", dest="source", required=True,
                   choices=("1in3sat", "3dm3", "graph", "tripartite-2div", "tripartite-3div"))
    r.add_argument("--output", metavar="FILE", help="write the instance here instead of into the JSON")
    r.add_argument("--registry", metavar="FILE", help="write the gadget registry (1in3sat only)")
    r.set_defaults(func=cmd_reduce)

    o = sub.add_parser("oracle", help="brute-force reference solvers")
    o.add_argument("input")
    o.add_argument("--problem", required=True, choices=("1in3sat", "3dm", "edge-partition"))
    o.add_argument("--allow-triangles", action="store_true")
    o.add_argument("--output", metavar="FILE", help="write the partition JSON here")
    o.set_defaults(func=cmd_oracle)

    v = sub.add_parser("verify", help="check an edge partition, optionally per variable gadget")
    v.add_argument("input", help="graph file")
    v.add_argument("--partition", metavar="FILE", required=True)
    v.add_argument("--registry", metavar="FILE")
    v.add_argument("--allow-triangles", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("selftest", help="run the acceptance suite")
    s.add_argument("--only", help="comma separated criterion numbers")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleError as exc:
        _emit({"command": args.command, "status": "infeasible", "message": str(exc)})
        return INFEASIBLE
    except (UsageError, ValueError, KeyError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        _emit({"command": args.command, "status": "error", "message": message})
        print(f"kanon: error: {message}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
