"""Command-line interface.  Each command parses, delegates and reports."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from sogrs import io, tables
from sogrs.codes import Verdict, galois_dual, gram, hull, is_mds
from sogrs.constructions import FAMILIES, ConstructionParams, build
from sogrs.derive import decompose, puncture_with_hull, shorten_with_hull
from sogrs.errors import NotHermitianSO, NotMds, SogrsError
from sogrs.field import divisors, make_field
from sogrs.grs import verify_so_egrs, verify_so_grs
from sogrs.quantum import hermitian_to_quantum, quantum_from_extended

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, obj: dict, rows: list[dict] | None = None) -> None:
    """JSON object, or TSV of ``rows`` (falling back to key/value lines)."""
    if args.format == "json":
        print(json.dumps(obj, indent=2, default=_jsonable))
        return
    if rows:
        cols = list(rows[0])
        print("\t".join(cols))
        for r in rows:
            print("\t".join(_cell(r[c]) for c in cols))
    else:
        for key, val in obj.items():
            print(f"{key}\t{_cell(val)}")


def _cell(val) -> str:
    if isinstance(val, (dict, list, tuple)):
        return json.dumps(val, separators=(",", ":"), default=_jsonable)
    return str(val)


def _jsonable(obj):
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


# -- field -------------------------------------------------------------------


def cmd_field(args) -> int:
    F = make_field(args.p, args.h, args.modulus)
    info = {"q": F.q, **io.field_to_json(F), "subfields": divisors(F.h)}
    residues = []
    for e in range(1, F.h):
        if F.h % e:
            continue
        residues.append({"e": e, "2e|h": F.h % (2 * e) == 0,
                         "residue_degree": F.residue_degree(e)})
    info["galois_parameters"] = residues
    _emit(args, info, residues if args.format == "tsv" else None)
    return EXIT_OK


# -- construct ---------------------------------------------------------------


def _params_from_args(args) -> ConstructionParams:
    return ConstructionParams(args.family, args.p, args.h, args.e, k=args.k,
                              extended=args.extended, t=args.t, x1=args.x1, x2=args.x2,
                              r1=args.r1, m=args.m, r=args.r)


def cmd_construct(args) -> int:
    R = build(_params_from_args(args))
    C = R.code
    rep = {"code": f"[{R.n},{R.k},{R.n - R.k + 1}]_{R.spec.field.p}^{R.spec.field.h}",
           "n": R.n, "k": R.k, "d": R.n - R.k + 1, "e": R.params.e,
           "hull_dim": hull(C, R.params.e).dim if args.hull else None,
           "certificate": R.verdict.to_json()}
    if args.out:
        io.write_json(io.code_to_json(C), args.out)
        rep["out"] = args.out
    if args.spec_out:
        io.write_json(io.spec_to_json(R.spec, R.cert), args.spec_out)
        rep["spec_out"] = args.spec_out
    _emit(args, {k: v for k, v in rep.items() if v is not None})
    return EXIT_OK if R.verdict.passed else EXIT_FAIL


# -- verify ------------------------------------------------------------------

CHECKS = ("so", "hull", "mds", "dual")


def _first_nonzero(M) -> list[int] | None:
    nz = (M.data >= 0).nonzero()
    if not nz[0].size:
        return None
    return [int(nz[0][0]), int(nz[1][0])]


def _check_so(obj, C, e) -> Verdict:
    if "locators" in obj and obj.get("certificate"):
        spec, cert = io.spec_from_json(obj)
        verify = verify_so_egrs if spec.extended else verify_so_grs
        return verify(spec, e, cert)
    P = gram(C, e)
    w = _first_nonzero(P)
    return Verdict("self-orthogonal", "gram", "Pass" if w is None else "Fail", w)


def _check_hull(C, e, expect) -> Verdict:
    rep = hull(C, e)
    want = C.k if expect is None else expect
    w = None if rep.dim == want else _first_nonzero(gram(C, e))
    return Verdict("hull", "rank", "Pass" if rep.dim == want else "Fail", w,
                   {"dim": rep.dim, "expected": want})


def _check_dual(C, e) -> Verdict:
    D = galois_dual(C, e)
    back = galois_dual(D, (C.field.h - e) % C.field.h)
    ok = D.k == C.n - C.k and back.same_code(C)
    return Verdict("dual", "rank", "Pass" if ok else "Fail", None,
                   {"dual_dim": D.k, "double_dual_is_C": back.same_code(C)})


def cmd_verify(args) -> int:
    obj = io.load_json(args.code_file)
    C = io.load_code(args.code_file)
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    bad = sorted(set(checks) - set(CHECKS))
    if bad:
        raise UsageError(f"unknown checks {bad}; choose from {','.join(CHECKS)}")
    out = {}
    for name in checks:
        if name == "so":
            out[name] = _check_so(obj, C, args.e)
        elif name == "hull":
            out[name] = _check_hull(C, args.e, args.expect_hull)
        elif name == "mds":
            out[name] = is_mds(C, args.mode, budget=args.budget, seed=args.seed)
        else:
            out[name] = _check_dual(C, args.e)
    ok = all(v.passed for v in out.values())
    rows = [{"check": k, **{f: v.to_json().get(f) for f in ("claim", "mode", "result", "witness")},
             "detail": v.detail} for k, v in out.items()]
    _emit(args, {"n": C.n, "k": C.k, "e": args.e, "passed": ok,
                 "checks": {k: v.to_json() for k, v in out.items()}}, rows)
    return EXIT_OK if ok else EXIT_FAIL


# -- derive ------------------------------------------------------------------


def cmd_derive(args) -> int:
    C = io.with_generator_root(io.load_code(args.code_file))
    if args.op == "decompose":
        C1, C2 = decompose(C, args.e, args.s)
        parts = {"C1": C1, "C2": C2}
        rep = {name: {"n": X.n, "k": X.k, "hull_dim": hull(X, args.e).dim}
               for name, X in parts.items()}
        if args.out:
            for name, X in parts.items():
                path = f"{args.out}.{name}.json"
                io.write_json(io.code_to_json(X), path)
                rep[name]["out"] = path
        _emit(args, rep)
        return EXIT_OK
    op = shorten_with_hull if args.op == "shorten" else puncture_with_hull
    res = op(C, args.e, args.s, verify_mds=args.mds, budget=args.budget, seed=args.seed)
    X = res.code
    rep = {"code": f"[{X.n},{X.k}]", "n": X.n, "k": X.k, "hull_dim": res.hull_dim,
           "T": list(res.T), "rule": res.rule}
    if res.mds is not None:
        rep["mds"] = res.mds.to_json()
        if X.k and res.mds.result == "MDS":
            rep["code"] = f"[{X.n},{X.k},{X.n - X.k + 1}]"
    if args.out:
        io.write_json(io.code_to_json(X), args.out)
        rep["out"] = args.out
    _emit(args, rep)
    return EXIT_OK if res.mds is None or res.mds.passed else EXIT_FAIL


# -- quantum -----------------------------------------------------------------


def _parse_kv(items: list[str]) -> dict[str, int]:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"expected KEY=VALUE, got {item!r}")
        try:
            out[key.strip()] = int(val)
        except ValueError:
            raise UsageError(f"{key} must be an integer, got {val!r}") from None
    return out


def _base_from_manifest(N: int, K: int) -> int | None:
    from sogrs.derive import enumerate_extended_params

    for table in ("Q1", "Q2"):
        for row in tables.rows_for(table):
            q = row.quantum
            for tup in enumerate_extended_params(q["p"], q["h"], q["e"], (q["condition"],),
                                                 q["ranges"]):
                if (tup.N, tup.K) == (N, K):
                    return q["base"]
    return None


def cmd_quantum(args) -> int:
    if args.params:
        kv = _parse_kv(args.params)
        missing = {"N", "K"} - set(kv)
        if missing:
            raise UsageError(f"--params needs {sorted(missing)}")
        base = args.base or kv.get("base") or _base_from_manifest(kv["N"], kv["K"])
        if base is None:
            raise UsageError("cannot infer the quantum alphabet; pass --base")
        qp = quantum_from_extended(kv["N"], kv["K"], kv.get("s", 0), base)
    elif args.code_file:
        qp = hermitian_to_quantum(io.load_code(args.code_file), mds_budget=args.budget)
    else:
        raise UsageError("give a code file or --params N=.. K=.. s=..")
    obj = {"code": str(qp), **qp.to_json()}
    _emit(args, obj, [{"N": qp.N, "K": qp.K, "D": qp.D, "base": qp.base, "mds": qp.is_mds}])
    return EXIT_OK if qp.bound_ok else EXIT_FAIL


# -- reproduce / export ----------------------------------------------------


def _run_row(job):
    row, depth, budget, seed = job
    return tables.reproduce_row(row, depth, budget, seed)


def cmd_reproduce(args) -> int:
    table_list = tables.table_ids() if args.table == "all" else [args.table]
    reports = []
    for tid in table_list:
        try:
            rows = tables.rows_for(tid)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        jobs = [(r, args.depth, args.budget, args.seed) for r in rows]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                reports.extend(pool.map(_run_row, jobs))
        else:
            reports.extend(_run_row(j) for j in jobs)
    ok = all(r.passed for r in reports)
    rows = [{"table": r.table, "row": r.label, "feasibility": row_class,
             "depth": r.depth, "expected": r.expected, "got": r.got,
             "result": "pass" if r.passed else "FAIL",
             "failed": [k for k, v in r.checks.items() if not v],
             "seconds": round(r.seconds, 2)}
            for r, row_class in zip(reports, _classes(table_list))]
    _emit(args, {"passed": ok, "rows": rows}, rows)
    return EXIT_OK if ok else EXIT_FAIL


def _classes(table_list):
    for tid in table_list:
        for row in tables.rows_for(tid):
            yield row.feasibility


def cmd_export(args) -> int:
    if args.table:
        try:
            rows = tables.rows_for(args.table)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        out = []
        for row in rows:
            if row.quantum is not None:
                N, K, D = row.expected
                out.append({"family-params": row.label.rsplit(" s=", 1)[0],
                            "s": row.quantum["s"], "N": N, "K": K, "D": D,
                            "base": row.quantum["base"]})
            else:
                out.append({"table": row.table, "row": row.label,
                            "expected": list(row.expected), "feasibility": row.feasibility,
                            "params": row.params.to_json()})
        _emit(args, {"table": args.table, "rows": out}, out)
        return EXIT_OK
    if not args.code_file:
        raise UsageError("export needs a code file or --table")
    C = io.load_code(args.code_file)
    if args.format == "tsv":
        for r in C.gen.to_list():
            print("\t".join(str(x) for x in r))
        return EXIT_OK
    payload = io.code_to_json(C)
    if args.out:
        io.write_json(payload, args.out)
    else:
        print(io.dumps(payload))
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _globals(defaults: bool) -> argparse.ArgumentParser:
    def d(val):
        return val if defaults else argparse.SUPPRESS

    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--seed", type=int, default=d(0), help="seed for sampled MDS checks")
    g.add_argument("--budget", type=int, default=d(None),
                   help="work budget for exhaustive checks")
    g.add_argument("--format", choices=("json", "tsv"), default=d("json"))
    return g


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sogrs", parents=[_globals(True)],
        description="Galois self-orthogonal GRS codes: build, verify, derive, reproduce.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _globals(False)

    p = sub.add_parser("field", parents=[common], help="describe GF(p^h)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--modulus", type=int, nargs="+", help="monic modulus, constant term first")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("construct", parents=[common], help="build a certified SO (extended) GRS code")
    p.add_argument("--family", choices=FAMILIES, required=True)
    for name in ("p", "h", "e"):
        p.add_argument(f"--{name}", type=int, required=True)
    for name in ("k", "t", "x1", "x2", "r1", "m", "r"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--extended", action="store_true")
    p.add_argument("--out", help="write the code JSON here")
    p.add_argument("--spec-out", help="write the GRS spec and certificate JSON here")
    p.add_argument("--no-hull", dest="hull", action="store_false",
                   help="skip the hull rank computation")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check a code or GRS spec file")
    p.add_argument("code_file")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--checks", default="so,hull")
    p.add_argument("--expect-hull", type=int, help="expected hull dimension (default k)")
    p.add_argument("--mode", default="auto",
                   choices=("auto", "exhaustive", "determinant", "cauchy", "sampled"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("derive", parents=[common], help="shorten, puncture or decompose")
    p.add_argument("code_file")
    p.add_argument("--op", choices=("shorten", "puncture", "decompose"), required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--mds", action="store_true", help="also verify the result is MDS")
    p.add_argument("--out", help="output file (decompose: prefix)")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("quantum", parents=[common], help="quantum code parameters")
    p.add_argument("code_file", nargs="?")
    p.add_argument("--params", nargs="+", metavar="KEY=VALUE")
    p.add_argument("--base", type=int, help="quantum alphabet size (sqrt q)")
    p.set_defaults(func=cmd_quantum)

    p = sub.add_parser("reproduce", parents=[common], help="re-verify a golden table")
    p.add_argument("--table", required=True,
                   help=f"one of {', '.join(tables.table_ids())}, 9 (alias of 10) or all")
    p.add_argument("--depth", choices=("parameters", "fast", "full"), default="fast")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("export", parents=[common], help="re-emit a code file or a table")
    p.add_argument("code_file", nargs="?")
    p.add_argument("--table")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotMds, NotHermitianSO) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (SogrsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
