"""Acceptance battery: one check per criterion, each returning a JSON-ready result."""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import ar, data, mf, quiver, weights

CI_CASE = "w-2-2-5-10"


@dataclass
class Result:
    criterion: int
    title: str
    ok: bool
    seconds: float = 0.0
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"criterion {self.criterion:2d} {'PASS' if self.ok else 'FAIL'}  {self.title} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "title": self.title,
            "ok": self.ok,
            "seconds": round(self.seconds, 3),
            "detail": self.detail,
        }


def _timed(fn: Callable[[], tuple[bool, dict]]) -> tuple[bool, dict, float]:
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


def _wid(W) -> str:
    return weights.case_id(W)


# ----------------------------------------------------------------------------


def check_enumeration() -> tuple[bool, dict]:
    t0 = time.perf_counter()
    found = weights.enumerate_eps_minus1_genus0()
    dt = time.perf_counter() - t0
    got = {(W.a, W.b, W.c, W.h): tuple(weights.signature(W).alphas) for W in found}
    want = {(c.W.a, c.W.b, c.W.c, c.W.h): tuple(c.A.alphas) for c in data.load_corpus()}
    ok = len(found) == 22 and got == want and dt < 5
    return ok, {"count": len(found), "matches_corpus_headers": got == want, "enumeration_seconds": round(dt, 3)}


def exponent_symmetry(W) -> dict:
    ex = Counter(weights.chi_series(W).exponents)
    s = W.a + W.b + W.c
    return {
        "under_abc_minus_m": ex == Counter({s - m: k for m, k in ex.items()}),
        "under_h_minus_m": ex == Counter({W.h - m: k for m, k in ex.items()}),
    }


def check_invariants() -> tuple[bool, dict]:
    rows = []
    ok = True
    for W in weights.enumerate_eps_minus1_genus0():
        d = weights.chi_series(W)
        sig = weights.signature(W)
        nu = weights.dual_rank(W)
        sym = exponent_symmetry(W)
        row = {
            "case": _wid(W),
            "mu_matches": Fraction(d.mu) == weights.milnor_number(W),
            "nu_matches": nu == 3 + sum(a - 1 for a in sig.alphas) == len(quiver.vertices(sig)),
            "symmetric_under_abc_minus_m": sym["under_abc_minus_m"],
            "symmetric_under_h_minus_m": sym["under_h_minus_m"],
        }
        ok = ok and row["mu_matches"] and row["nu_matches"] and row["symmetric_under_abc_minus_m"]
        rows.append(row)
    summary = {
        k: sum(r[k] for r in rows)
        for k in ("mu_matches", "nu_matches", "symmetric_under_abc_minus_m", "symmetric_under_h_minus_m")
    }
    return ok, {"cases": len(rows), "passing_counts": summary, "rows": rows}


DOCUMENTED_TYPOS = [("w-3-5-6-15", "Vbar1", "x^z"), ("w-3-5-6-15", "Vbar1", "x^y")]


def check_corpus() -> tuple[bool, dict]:
    t0 = time.perf_counter()
    over = data.verify_corpus(raw=False)
    raw = data.verify_corpus(raw=True)
    dt = time.perf_counter() - t0
    flagged = {(r["case_id"], f["object"]) for r in raw["reports"] for f in r["failures"]}
    typos = []
    for cid, obj, text in DOCUMENTED_TYPOS:
        c = data.load_case(cid)
        hit = any(e.object == obj and text in e.printed for e in c.errata)
        typos.append({"case": cid, "object": obj, "printed": text, "flagged": (cid, obj) in flagged and hit})
    ok = over["ok"] and over["failures"] == 0 and all(t["flagged"] for t in typos) and dt < 60
    return ok, {
        "overlay_failures": over["failures"],
        "overlay_grading_failures": over["grading_failures"],
        "raw_failures": raw["failures"],
        "raw_grading_failures": raw["grading_failures"],
        "documented_typos": typos,
        "seconds": round(dt, 3),
    }


def functor_identities(F: mf.MF) -> dict:
    T2_ok = mf.translate_T(F, 2) == mf.tau(F, F.H)
    t = mf.transpose_t
    return {
        "T2_tau_h": T2_ok,
        "tt_id": t(t(F)) == F,
        "tau_t_tau": mf.tau(t(mf.tau(F)), 1) == t(F),
        "T_t_T": mf.translate_T(t(mf.translate_T(F))) == t(F),
        "cone_id_zero": mf.reduce(mf.cone(mf.identity(F))).rank == 0,
    }


def check_functors() -> tuple[bool, dict]:
    bad = []
    n = 0
    for c in data.load_corpus():
        for name in c.factorizations():
            n += 1
            res = functor_identities(c.mf(name))
            if not all(res.values()):
                bad.append({"case": c.id, "object": name, "checks": res})
    return not bad, {"objects": n, "failures": bad}


def check_phases() -> tuple[bool, dict]:
    bad = []
    spots = []
    n = 0
    for c in data.load_corpus():
        h = c.W.h
        for name, rec in c.objects.items():
            F = c.mf(name) if rec.has_matrices else None
            s, sbar = (F.s, F.sbar) if F is not None else (rec.s, rec.sbar)
            phi = Fraction(sum(s) + sum(sbar), 2 * len(s) * h)
            if rec.hphi is not None:
                n += 1
                if phi != rec.hphi / h:
                    bad.append({"case": c.id, "object": name, "phase": str(phi), "printed": str(rec.hphi / h)})
        p1 = Fraction(sum(c.objects["V1"].s) + sum(c.objects["V1"].sbar), 2 * c.objects["V1"].rank * h)
        p0 = Fraction(sum(c.objects["V0"].s) + sum(c.objects["V0"].sbar), 2 * c.objects["V0"].rank * h)
        spots.append({"case": c.id, "V1": p1 == Fraction(-1, 2), "V0": p0 == Fraction(-1, 2) - Fraction(1, h)})
    ok = not bad and all(s["V1"] and s["V0"] for s in spots)
    return ok, {"objects_with_subscript": n, "mismatches": bad, "spot_values_ok": sum(s["V1"] and s["V0"] for s in spots)}


_record_cache: dict = {}


def ci_record():
    if CI_CASE not in _record_cache:
        _record_cache[CI_CASE] = ar.build_collection(data.load_case(CI_CASE))
    return _record_cache[CI_CASE]


def check_hom_tables(ns=range(-2, 4)) -> tuple[bool, dict]:
    rec = ci_record()
    names = ["V0", "V1"] + sorted(n for n in rec.objects if "," in n)
    mism = []
    count = 0
    for a in names:
        for b in names:
            for n in ns:
                want = ar.expected_hom(a, b, n)
                got = mf.hom_dim(rec.objects[a], mf.translate_T(rec.objects[b], n))
                count += 1
                if want != got:
                    mism.append({"source": a, "target": b, "n": n, "expected": want, "computed": got})
    V1, Vb = rec.objects["V1"], rec.objects["Vbar1"]
    extra = {
        "hom(Vbar1,TV1)=2": mf.hom_dim(Vb, mf.translate_T(V1)) == 2,
        "hom(Vi2,Vbar1)=1": all(mf.hom_dim(rec.objects[f"V{i},2"], Vb) == 1 for i in range(1, len(rec.signature) + 1)),
        "hom(T^n V1,Vbar1)=0": all(mf.hom_dim(mf.translate_T(V1, n), Vb) == 0 for n in ns),
        "hom(Vbar1,Vbar1)=1": mf.hom_dim(Vb, Vb) == 1,
    }
    ok = not mism and all(extra.values())
    return ok, {"entries": count, "mismatches": mism, "vbar1": extra, "n_window": [min(ns), max(ns)]}


def check_pipeline() -> tuple[bool, dict]:
    c = data.load_case(CI_CASE)
    try:
        rec = ci_record()
    except ar.ARError as exc:
        return False, {"error": f"{type(exc).__name__}: {exc}"}
    shifts = {}
    for name, X in sorted(rec.objects.items()):
        if name in c.objects:
            o = c.objects[name]
            shifts[name] = ar.grading_matches(X, o.s, o.sbar)
    lam = rec.lambdas
    distinct = len(set(lam)) == len(lam)
    rel = ar.verify_relations(rec)
    vbar_iso = mf.is_isomorphic(rec.objects["Vbar1"], c.mf("Vbar1").specialize(c.defaults))
    ok = all(v is not None for v in shifts.values()) and distinct and rel["ok"] and vbar_iso
    return ok, {
        "grading_shift": shifts,
        "lambdas": [[str(a), str(b)] for a, b in lam],
        "lambdas_distinct": distinct,
        "relations": rel,
        "cone_isomorphic_to_stored_vbar1": vbar_iso,
    }


def check_coxeter() -> tuple[bool, dict]:
    t0 = time.perf_counter()
    rows = []
    ok = True
    for W in weights.enumerate_eps_minus1_genus0():
        sig = weights.signature(W)
        q = quiver.quiver(sig, "W")
        cd = quiver.coxeter(q.C, cap=W.h)
        nu = len(q.vertices)
        cyclo = cd.cyclotomic is not None and all(W.h % d == 0 for d in cd.cyclotomic)
        iner = cd.inertia
        inertia_ok = iner[1] == 0 and sorted((iner[0], iner[2])) == sorted((nu - 2, 2))
        row = {
            "case": _wid(W),
            "c^h=Id": cd.order is not None and W.h % cd.order == 0,
            "order": cd.order,
            "det": cd.det,
            "cyclotomic_divides_x^h-1": cyclo,
            "inertia": list(iner),
            "inertia_ok": inertia_ok,
        }
        ok = ok and row["c^h=Id"] and abs(cd.det) == 1 and cyclo and inertia_ok
        rows.append(row)
    dt = time.perf_counter() - t0
    return ok and dt < 10, {"rows": rows, "seconds": round(dt, 3)}


def check_duality() -> tuple[bool, dict]:
    a = quiver.duality_scan()
    b = quiver.duality_scan()
    ok = a["systems"] == 14 and not a["errors"] and a["involution"] and a["covers_all"] and a == b
    return ok, {"pairs": a["pairs"], "errors": a["errors"], "involution": a["involution"], "stable": a == b}


def check_cross_validation() -> tuple[bool, dict]:
    rec = ci_record()
    sig = rec.signature
    out = {}
    ok = True
    for v in quiver.VARIANTS:
        closed = quiver.build_chi_from_homs(sig, v)
        computed = ar.chi_from_homs(rec, v)
        C = quiver.int_matrix(quiver.inverse(closed))
        out[v] = {"chi_equal": closed == computed, "C_equal_quoted": C == quiver.quiver(sig, v).C}
        ok = ok and closed == computed and C == quiver.quiver(sig, v).C
    vs = quiver.vertices(sig, "W")
    CW = quiver.quiver(sig, "W").C
    CT = quiver.quiver(sig, "T").C
    ib, i1 = vs.index("vbar1"), vs.index("v1")
    arms = [(vs.index(f"v{i},{j + 1}"), vs.index(f"v{i},{j}")) for i, a in enumerate(sig, 1) for j in range(2, a)]
    quoted = {
        "C_W(vbar1,v1)=2": CW[ib][i1] == 2,
        "C_T(vbar1,v1)=-2": CT[ib][i1] == -2,
        "arm entries -1": all(CW[x][y] == -1 for x, y in arms),
        "C(v1,v0)=-1": CW[i1][vs.index("v0")] == -1,
    }
    ok = ok and all(quoted.values())
    return ok, {"variants": out, "quoted_entries": quoted}


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, dict]]]] = [
    (1, "enumeration of the 22 systems", check_enumeration),
    (2, "invariant table (mu, nu, exponent symmetry)", check_invariants),
    (3, "corpus verification with errata overlay", check_corpus),
    (4, "functor identities on corpus objects", check_functors),
    (5, "phase table", check_phases),
    (6, "hom tables for the CI case", check_hom_tables),
    (7, "generation pipeline for the CI case", check_pipeline),
    (8, "Coxeter suite", check_coxeter),
    (9, "duality scan", check_duality),
    (10, "closed-form chi against computed homs", check_cross_validation),
]


def run(criteria: list[int] | None = None) -> list[Result]:
    out = []
    for num, title, fn in CRITERIA:
        if criteria and num not in criteria:
            continue
        ok, detail, dt = _timed(fn)
        out.append(Result(num, title, ok, dt, detail))
    return out
