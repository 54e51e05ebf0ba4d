"""Command-line front end. Every command prints deterministic JSON carrying "schema": "1"."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd

from . import acceptance, ar, data, mf, quiver, weights
from .poly import WeightContext

SCHEMA = "1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def emit(payload: dict, fmt: str = "json", out=None) -> None:
    out = out or sys.stdout
    payload = {"schema": SCHEMA, **payload}
    if fmt == "text":
        for k, v in payload.items():
            out.write(f"{k}: {json.dumps(_jsonable(v), sort_keys=True, ensure_ascii=False)}\n")
        return
    out.write(json.dumps(_jsonable(payload), sort_keys=True, indent=1, ensure_ascii=False) + "\n")


def _params(items: list[str] | None) -> dict[str, Fraction]:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--param expects name=p/q, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = Fraction(v.strip())
        except ValueError as exc:
            raise UsageError(f"bad parameter value {v!r}") from exc
    return out


def _weights(vals: list[int]) -> WeightContext:
    a, b, c, h = vals
    if min(vals) <= 0:
        raise UsageError("weights must be positive")
    if max(a, b, c) >= h:
        raise UsageError("weights must be smaller than h")
    if gcd(gcd(a, b), c) != 1:
        raise UsageError("gcd(a, b, c) must be 1")
    return WeightContext(a, b, c, h)


def _case(case_id: str) -> data.CaseEntry:
    try:
        return data.load_case(case_id)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc


def _object(case: data.CaseEntry, name: str, params: dict) -> mf.MF:
    """Corpus factorization, or the generated one when the corpus prints only a grading."""
    vals = dict(case.defaults)
    vals.update(params)
    if name in case.objects and case.objects[name].has_matrices:
        F = case.mf(name)
        return F if case.relations else F.specialize(vals)
    if case.relations:
        raise UsageError(f"{case.id} has no factorization {name!r}")
    try:
        rec = ar.build_collection(case, params or None, check_corpus=False)
    except ar.ARError as exc:
        raise UsageError(f"{case.id}: cannot generate {name!r}: {exc}") from exc
    if name not in rec.objects:
        raise UsageError(f"{case.id} has no object {name!r}")
    return rec.objects[name]


# ----------------------------------------------------------------------------
# commands


def cmd_weights_analyze(args) -> int:
    W = _weights(args.weights)
    rep = weights.analyze(W)
    emit({"command": "weights analyze", **rep}, args.format)
    return EXIT_OK if rep["regular"] else EXIT_FAIL


def cmd_weights_enumerate(args) -> int:
    found = weights.enumerate_eps_minus1_genus0(args.bound)
    rows = [
        {"id": weights.case_id(W), "weights": [W.a, W.b, W.c, W.h], "signature": list(weights.signature(W).alphas)}
        for W in found
    ]
    emit({"command": "weights enumerate", "bound": args.bound, "count": len(rows), "systems": rows}, args.format)
    return EXIT_OK


def _verify_one(args):
    cid, raw = args
    return data.verify_case(data.load_case(cid), raw=raw)


def cmd_data_verify(args) -> int:
    ids = [args.case] if args.case else data.case_ids()
    if args.case:
        _case(args.case)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            reports = list(ex.map(_verify_one, [(i, args.raw) for i in ids]))
        rep = _summarize(reports, args.raw)
    else:
        rep = data.verify_corpus(raw=args.raw, cases=[data.load_case(i) for i in ids])
    emit({"command": "data verify", **rep}, args.format)
    return EXIT_OK if rep["ok"] else EXIT_FAIL


def _summarize(reports: list[dict], raw: bool) -> dict:
    failed = sum(len(r["failures"]) for r in reports)
    gfailed = sum(len(r["grading_failures"]) for r in reports)
    ok = failed == 0 and gfailed == 0 and all(
        r["errata_unique"] is not False and r["replacements_verified"] is not False for r in reports
    )
    return {
        "schema": SCHEMA,
        "mode": "raw" if raw else "overlay",
        "cases": len(reports),
        "factorizations": sum(r["checked"] for r in reports),
        "failures": failed,
        "grading_failures": gfailed,
        "ok": ok,
        "reports": reports,
    }


def cmd_mf_hom(args) -> int:
    c = _case(args.case)
    p = _params(args.param)
    F, G = _object(c, args.source, p), _object(c, args.target, p)
    margin = Fraction(args.window_margin) if args.window_margin is not None else None
    try:
        table = mf.hom_table(F, G, ns=args.n, margin=margin)
    except mf.MFError as exc:
        emit({"command": "mf hom", "error": str(exc)}, args.format)
        return EXIT_FAIL
    rows = [{"n": n, "tau": m, "dim": d} for (n, m), d in sorted(table.items()) if d or args.all]
    emit({"command": "mf hom", "case": c.id, "source": args.source, "target": args.target, "homs": rows}, args.format)
    return EXIT_OK


def cmd_mf_phase(args) -> int:
    c = _case(args.case)
    names = [args.object] if args.object else sorted(c.objects)
    rows = []
    for n in names:
        if n not in c.objects:
            raise UsageError(f"{c.id} has no object {n!r}")
        rec = c.objects[n]
        s, sbar = c.grading(n)
        phi = Fraction(sum(s) + sum(sbar), 2 * len(s) * c.W.h)
        rows.append({"object": n, "phase": phi, "printed_hphi": rec.hphi})
    emit({"command": "mf phase", "case": c.id, "phases": rows}, args.format)
    return EXIT_OK


def cmd_mf_spectrum(args) -> int:
    c = _case(args.case)
    p = _params(args.param)
    F, G = _object(c, args.source, p), _object(c, args.target or args.source, p)
    margin = Fraction(args.window_margin) if args.window_margin is not None else None
    try:
        sp = mf.spectrum(F, G, margin=margin)
    except mf.MFError as exc:
        emit({"command": "mf spectrum", "error": str(exc)}, args.format)
        return EXIT_FAIL
    emit({"command": "mf spectrum", "case": c.id, "source": args.source, "target": args.target or args.source,
          "spectrum": sp}, args.format)
    return EXIT_OK


def cmd_quiver_build(args) -> int:
    try:
        sig = tuple(int(x) for x in args.signature.split(","))
    except ValueError as exc:
        raise UsageError("--signature expects comma-separated integers") from exc
    if not sig or min(sig) < 2:
        raise UsageError("signature entries must be at least 2")
    q = quiver.quiver(sig, args.variant)
    emit({"command": "quiver build", **q.to_json()}, args.format)
    return EXIT_OK


def cmd_coxeter(args) -> int:
    c = _case(args.case)
    q = quiver.quiver(c.A, args.variant)
    cd = quiver.coxeter(q.C, cap=4 * c.W.h)
    emit({"command": "coxeter", "case": c.id, "variant": args.variant, "matrix": cd.matrix, **cd.to_json()}, args.format)
    return EXIT_OK if cd.order is not None else EXIT_FAIL


def cmd_duality_scan(args) -> int:
    rep = quiver.duality_scan()
    rep.pop("schema", None)
    emit({"command": "duality scan", **rep}, args.format)
    return EXIT_OK if rep["involution"] and rep["covers_all"] and not rep["errors"] else EXIT_FAIL


def cmd_collection_generate(args) -> int:
    c = _case(args.case)
    if c.relations:
        emit({"command": "collection generate", "case": c.id,
              "error": "parameters satisfy a relation with no rational specialization"}, args.format)
        return EXIT_FAIL
    try:
        rec = ar.build_collection(c, _params(args.param))
        rel = ar.verify_relations(rec)
    except ar.ARError as exc:
        emit({"command": "collection generate", "case": c.id, "error": f"{type(exc).__name__}: {exc}"}, args.format)
        return EXIT_FAIL
    names = rec.collection("W")
    homs = ar.hom_matrix(rec, names)
    summary = ar.record_summary(rec)
    summary["hom_table"] = [{"source": a, "target": b, "n": n, "dim": d} for (a, b, n), d in sorted(homs.items())]
    summary["relations"] = rel
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for name, X in sorted(rec.objects.items()):
            path = os.path.join(args.out, f"{name.replace(',', '_').replace(chr(39), 'p')}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(json.dumps({"schema": SCHEMA, "case_id": c.id, "object_name": name, "provenance": "generated",
                                    **X.to_json()},
                                    sort_keys=True, indent=1) + "\n")
        with open(os.path.join(args.out, "summary.json"), "w", encoding="utf-8") as fh:
            fh.write(json.dumps(_jsonable({"schema": SCHEMA, **summary}), sort_keys=True, indent=1) + "\n")
    emit({"command": "collection generate", **summary}, args.format)
    return EXIT_OK if rel["ok"] else EXIT_FAIL


def cmd_suite_all(args) -> int:
    results = acceptance.run(args.criterion)
    if args.format == "text":
        for r in results:
            print(r.line())
    else:
        emit({"command": "suite all", "results": [r.to_json() for r in results],
              "passed": sum(r.ok for r in results), "total": len(results)})
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--jobs", type=int, default=1)

    p = _Parser(prog="artifact", description=__doc__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    w = sub.add_parser("weights").add_subparsers(dest="sub", parser_class=_Parser)
    w.required = True
    q = w.add_parser("analyze", parents=[common])
    q.add_argument("weights", type=int, nargs=4, metavar="N")
    q.set_defaults(func=cmd_weights_analyze)
    q = w.add_parser("enumerate", parents=[common])
    q.add_argument("--bound", type=int, default=weights.SEARCH_BOUND)
    q.set_defaults(func=cmd_weights_enumerate)

    d = sub.add_parser("data").add_subparsers(dest="sub", parser_class=_Parser)
    d.required = True
    q = d.add_parser("verify", parents=[common])
    q.add_argument("--raw", action="store_true")
    q.add_argument("--case")
    q.set_defaults(func=cmd_data_verify)

    m = sub.add_parser("mf").add_subparsers(dest="sub", parser_class=_Parser)
    m.required = True
    for name, fn in (("hom", cmd_mf_hom), ("spectrum", cmd_mf_spectrum)):
        q = m.add_parser(name, parents=[common])
        q.add_argument("--case", required=True)
        q.add_argument("--source", required=True)
        q.add_argument("--target", required=(name == "hom"))
        q.add_argument("--param", action="append")
        q.add_argument("--window-margin")
        if name == "hom":
            q.add_argument("--n", type=int, nargs="+", default=[0, 1])
            q.add_argument("--all", action="store_true")
        q.set_defaults(func=fn)
    q = m.add_parser("phase", parents=[common])
    q.add_argument("--case", required=True)
    q.add_argument("--object")
    q.set_defaults(func=cmd_mf_phase)

    qv = sub.add_parser("quiver").add_subparsers(dest="sub", parser_class=_Parser)
    qv.required = True
    q = qv.add_parser("build", parents=[common])
    q.add_argument("--signature", required=True)
    q.add_argument("--variant", choices=quiver.VARIANTS, default="W")
    q.set_defaults(func=cmd_quiver_build)

    q = sub.add_parser("coxeter", parents=[common])
    q.add_argument("--case", required=True)
    q.add_argument("--variant", choices=quiver.VARIANTS, default="W")
    q.set_defaults(func=cmd_coxeter)

    du = sub.add_parser("duality").add_subparsers(dest="sub", parser_class=_Parser)
    du.required = True
    q = du.add_parser("scan", parents=[common])
    q.set_defaults(func=cmd_duality_scan)

    co = sub.add_parser("collection").add_subparsers(dest="sub", parser_class=_Parser)
    co.required = True
    q = co.add_parser("generate", parents=[common])
    q.add_argument("--case", default=acceptance.CI_CASE)
    q.add_argument("--param", action="append")
    q.add_argument("--out")
    q.set_defaults(func=cmd_collection_generate)

    su = sub.add_parser("suite").add_subparsers(dest="sub", parser_class=_Parser)
    su.required = True
    q = su.add_parser("all", parents=[common])
    q.add_argument("--criterion", type=int, action="append")
    q.set_defaults(func=cmd_suite_all)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"artifact: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
