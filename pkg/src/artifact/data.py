"""Corpus of the 22 cases: gradings, Q-matrices, errata overlay, verification."""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable, Mapping

from . import mf as mfmod
from .linalg import solve_affine
from .mf import MF
from .poly import (
    PARAMETERS,
    ParseError,
    Polynomial,
    WeightContext,
    format_poly,
    graded_piece_basis,
    mat_mul,
    parse_poly,
    reduce_relations,
)
from .weights import Signature

SCHEMA = "1"
CORPUS_PACKAGE = "artifact.corpus"
ZERO = Polynomial.constant(0)


class CorpusError(ValueError):
    pass


# ----------------------------------------------------------------------------
# printed grading lists


_ITEM_RE = re.compile(r"^\(?(-?\d+(?:/\d+)?)\)?(?:\^(\d+))?$")
_GRADING_RE = re.compile(r"^([\(\[])(.*)([\)\]])(?:_\{?(-?\d+(?:/\d+)?)\}?)?$", re.S)


def _expand_list(text: str) -> list[Fraction]:
    out: list[Fraction] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        m = _ITEM_RE.match(item)
        if not m:
            raise ParseError(f"bad grading item {item!r}")
        out += [Fraction(m.group(1))] * int(m.group(2) or 1)
    return out


def expand_grading(text: str) -> tuple[list[Fraction], list[Fraction], Fraction | None]:
    """Expand a printed grading into (h*s, h*sbar, h*phi).

    ``(q1,...;p1,...)_{hphi}`` means s = [q1,-q1,...] and sbar = [p1,-p1,...], then
    shifted by hphi; a single list is used for both. ``[...]`` lists are literal.
    """
    m = _GRADING_RE.match("".join(text.split()))
    if not m:
        raise ParseError(f"bad grading {text!r}")
    kind, inner, _, hphi = m.groups()
    lists = [_expand_list(p) for p in inner.split(";")]
    if len(lists) == 1:
        lists = [lists[0], lists[0]]
    if len(lists) != 2:
        raise ParseError(f"bad grading {text!r}")
    if kind == "(":
        lists = [[v for q in lst for v in (q, -q)] for lst in lists]
    phi = Fraction(hphi) if hphi is not None else Fraction(0)
    s = [v + phi for v in lists[0]]
    sbar = [v + phi for v in lists[1]]
    return s, sbar, (Fraction(hphi) if hphi is not None else None)


def to_integral(values: Iterable[Fraction], h: int) -> list[int]:
    """Convert h*s values (possibly half-integers) to the integer grading convention."""
    out = []
    for v in values:
        if v.denominator != 1:
            raise ParseError(f"grading value {v} is not an integer in units of 1/h")
        out.append(int(v))
    return out


# ----------------------------------------------------------------------------
# grading alignment


def _edges(ctx: WeightContext, q0, q1) -> list[tuple]:
    """Degree constraints (u, v, delta): value[u] - value[v] = delta.

    Nodes 0..r-1 are s, r..2r-1 are sbar.
    """
    r = len(q0)
    out = []
    for block, M in ((0, q0), (1, q1)):
        for k, row in enumerate(M):
            for l, p in enumerate(row):
                if p is None or p.is_zero():
                    continue
                degs = {ctx.monomial_degree(e) for e, _ in p.items()}
                if len(degs) != 1:
                    continue
                d = degs.pop() - ctx.h
                if block == 0:
                    out.append((k, r + l, d, (block, k, l)))
                else:
                    out.append((r + k, l, d, (block, k, l)))
    return out


def _potentials(n: int, edges: list[tuple]) -> tuple[list[int], list[int]]:
    """Union-find with offsets; returns (component id, value relative to root)."""
    parent = list(range(n))
    off = [0] * n

    def find(u):
        if parent[u] == u:
            return u, 0
        root, o = find(parent[u])
        parent[u] = root
        off[u] += o
        return root, off[u]

    for u, v, d, _ in edges:
        ru, ou = find(u)
        rv, ov = find(v)
        if ru != rv:
            parent[ru] = rv
            off[ru] = d + ov - ou
    comps, vals = [], []
    for u in range(n):
        root, o = find(u)
        comps.append(root)
        vals.append(o)
    return comps, vals


def _fit_shifts(comps, vals, r, target_s, target_sbar):
    """Choose a shift per component so the multisets match the targets."""
    from collections import Counter

    groups: dict[int, list[int]] = {}
    for u, c in enumerate(comps):
        groups.setdefault(c, []).append(u)
    order = sorted(groups.values(), key=len, reverse=True)
    need_s, need_b = Counter(target_s), Counter(target_sbar)

    def rec(i, need_s, need_b, shifts):
        if i == len(order):
            return shifts if not +need_s and not +need_b else None
        nodes = order[i]
        u0 = nodes[0]
        pool = need_s if u0 < r else need_b
        for cand in sorted(k for k, v in pool.items() if v > 0):
            t = cand - vals[u0]
            ns, nb = Counter(need_s), Counter(need_b)
            ok = True
            for u in nodes:
                tgt = ns if u < r else nb
                key = vals[u] + t
                if tgt[key] <= 0:
                    ok = False
                    break
                tgt[key] -= 1
            if ok:
                got = rec(i + 1, ns, nb, shifts + [(nodes, t)])
                if got is not None:
                    return got
        return None

    return rec(0, need_s, need_b, [])


def align_grading(ctx: WeightContext, q0, q1, s_multiset, sbar_multiset, tries: int = 200):
    """Order printed grading values along the rows of q0 (s) and columns of q0 (sbar).

    Entries with the wrong degree are tolerated: several edge orders are tried and
    the assignment consistent with the most entries is kept. Returns (s, sbar, bad)
    where ``bad`` lists entries whose degree disagrees with the result.
    """
    r = len(q0)
    edges = _edges(ctx, q0, q1)
    rng = random.Random(0)
    best = None
    for attempt in range(tries):
        es = list(edges)
        if attempt:
            rng.shuffle(es)
        comps, vals = _potentials(2 * r, es)
        fit = _fit_shifts(comps, vals, r, s_multiset, sbar_multiset)
        if fit is None:
            continue
        value = list(vals)
        for nodes, t in fit:
            for u in nodes:
                value[u] += t
        bad = [pos for u, v, d, pos in edges if value[u] - value[v] != d]
        if best is None or len(bad) < len(best[2]):
            best = (value[:r], value[r:], bad)
            if not bad:
                break
    if best is None:
        raise CorpusError("printed grading does not fit the matrix degrees")
    return best


# ----------------------------------------------------------------------------
# errata solver


def _param_monomials(bounds: Mapping[str, int]) -> list[tuple]:
    b1, b2 = bounds.get("l1", 0), bounds.get("l2", 0)
    return [(i, j) for i in range(b1 + 1) for j in range(b2 + 1)]


def _reduce_mono(e: tuple, rel: Mapping[int, Fraction]) -> tuple[tuple, Fraction]:
    if not rel:
        return e, Fraction(1)
    e = list(e)
    c = Fraction(1)
    for slot, v in rel.items():
        q, rem = divmod(e[slot], 2)
        if q:
            c *= v**q
            e[slot] = rem
    return tuple(e), c


def _add(a: tuple, b: tuple) -> tuple:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4])


def param_bounds(f: Polynomial, blocks) -> dict[str, int]:
    out = {p: 0 for p in PARAMETERS}
    polys = [f] + [p for M in blocks for row in M for p in row if p is not None]
    for p in polys:
        for e, _ in p.items():
            out["l1"] = max(out["l1"], e[3])
            out["l2"] = max(out["l2"], e[4])
    return out


def solve_entries(
    F: MF,
    unknowns: Iterable[tuple[int, int, int]],
    bounds: Mapping[str, int] | None = None,
) -> tuple[list, list] | None:
    """Re-solve the listed entries (block, row, col) so that Q^2 = f.

    Each unknown is a polynomial of the degree forced by the grading (with bounded
    parameter degrees). Returns corrected (q0, q1) if the solution is unique, else None.
    """
    ctx, r = F.ctx, F.rank
    rel = {("l1", "l2").index(k) + 3: Fraction(v) for k, v in F.relations.items()}
    if bounds is None:
        bounds = param_bounds(F.f, (F.q0, F.q1))
    bounds = dict(bounds)
    for k in F.relations:
        bounds[k] = min(bounds.get(k, 0), 1)
    pmons = _param_monomials(bounds)
    blocks = [[list(row) for row in F.q0], [list(row) for row in F.q1]]
    pending: dict[tuple, list[tuple]] = {}
    for pos in unknowns:
        block, k, l = pos
        deg = mfmod.expected_degree(F, block, k, l)
        mons = [(e[0], e[1], e[2], i, j) for e in graded_piece_basis(deg, ctx) for i, j in pmons]
        if mons:
            pending[pos] = mons
        blocks[block][k][l] = ZERO
    fI = reduce_relations(F.f, F.relations)
    while pending:
        index: dict[tuple, int] = {}
        for pos, mons in pending.items():
            for m in mons:
                index[(pos, m)] = len(index)
        nv = len(index)
        rows: dict[tuple, dict] = {}
        for lab, A, B, ai, bi in (("01", blocks[0], blocks[1], 0, 1), ("10", blocks[1], blocks[0], 1, 0)):
            for i in range(r):
                for j in range(r):
                    eqs: dict[tuple, dict] = {}
                    bilinear = False
                    involved = False
                    for k in range(r):
                        ua, ub = (ai, i, k) in pending, (bi, k, j) in pending
                        if ua and ub:
                            bilinear = True
                            break
                        if ua or ub:
                            involved = True
                            upos, known = ((ai, i, k), B[k][j]) if ua else ((bi, k, j), A[i][k])
                            for m in pending[upos]:
                                col = index[(upos, m)]
                                for e, c in known.items():
                                    mono, fac = _reduce_mono(_add(e, m), rel)
                                    row = eqs.setdefault(mono, {})
                                    row[col] = row.get(col, 0) + c * fac
                        else:
                            a, b = A[i][k], B[k][j]
                            if a.is_zero() or b.is_zero():
                                continue
                            for e, c in reduce_relations(a * b, F.relations).items():
                                row = eqs.setdefault(e, {})
                                row[nv] = row.get(nv, 0) + c
                    if bilinear or not involved:
                        continue
                    if i == j:
                        for e, c in fI.items():
                            row = eqs.setdefault(e, {})
                            row[nv] = row.get(nv, 0) - c
                    for mono, row in eqs.items():
                        clean = {k: v for k, v in row.items() if v}
                        if clean:
                            rows[(lab, i, j, mono)] = clean
        particular, null = solve_affine(rows.values(), nv)
        if particular is None:
            return None
        free = set()
        for vec in null:
            free.update(k for k, v in vec.items() if v)
        done = [pos for pos, mons in pending.items() if all(index[(pos, m)] not in free for m in mons)]
        if not done:
            return None
        for pos in done:
            terms = {}
            for m in pending[pos]:
                v = particular.get(index[(pos, m)], 0)
                if v:
                    terms[m] = v
            block, k, l = pos
            blocks[block][k][l] = Polynomial(terms)
            del pending[pos]
    G = MF(ctx, F.f, blocks[0], blocks[1], F.s, F.sbar, F.name, F.relations)
    if not mfmod.is_valid(G):
        return None
    return blocks[0], blocks[1]


def _footprint(F: MF, pos: tuple) -> frozenset:
    """Product positions affected when a single entry changes."""
    block, k, l = pos
    r = F.rank
    other = F.q1 if block == 0 else F.q0
    out = set()
    # (this * other)[k][j] uses other[l][j]; (other * this)[i][l] uses other[i][k]
    first, second = ("01", "10") if block == 0 else ("10", "01")
    for j in range(r):
        if not other[l][j].is_zero():
            out.add((first, k, j))
    for i in range(r):
        if not other[i][k].is_zero():
            out.add((second, i, l))
    return frozenset(out)


def failing_positions(F: MF) -> set:
    out = set()
    fI = reduce_relations(F.f, F.relations)
    for lab, A, B in (("01", F.q0, F.q1), ("10", F.q1, F.q0)):
        P = mat_mul(A, B)
        for i, row in enumerate(P):
            for j, p in enumerate(row):
                want = fI if i == j else ZERO
                if reduce_relations(p, F.relations) != want:
                    out.add((lab, i, j))
    return out


def wrong_degree_entries(F: MF) -> list[tuple]:
    out = []
    for block, M in ((0, F.q0), (1, F.q1)):
        for k, row in enumerate(M):
            for l, p in enumerate(row):
                want = mfmod.expected_degree(F, block, k, l)
                if any(F.ctx.monomial_degree(e) != want for e, _ in p.items()):
                    out.append((block, k, l))
    return out


def find_errata(F: MF, forced: Iterable[tuple] = (), max_size: int = 8, max_tries: int = 4000):
    """Smallest set of entries (containing ``forced``) whose unique re-solution fixes F.

    Returns (positions, q0, q1) or None.
    """
    forced = set(forced) | set(wrong_degree_entries(F))
    if not forced and mfmod.is_valid(F):
        return (), F.q0, F.q1
    r = F.rank
    fails = failing_positions(F)
    allpos = [(b, k, l) for b in (0, 1) for k in range(r) for l in range(r)]
    prints = {pos: _footprint(F, pos) for pos in allpos}
    strict = [pos for pos in allpos if prints[pos] and prints[pos] <= fails]
    loose = [pos for pos in allpos if prints[pos] & fails and pos not in strict]
    loose.sort(key=lambda p: (-len(prints[p] & fails) / len(prints[p]), p))
    base_cover = set().union(*(prints[p] for p in forced)) if forced else set()
    tries = 0
    cands = strict

    def search(chosen, covered, start_size):
        nonlocal tries
        uncovered = fails - covered
        covered = covered & fails
        if not uncovered:
            tries += 1
            got = solve_entries(F, chosen)
            if got is not None:
                return chosen, got
            return None
        if len(chosen) >= start_size or tries > max_tries:
            return None
        target = min(uncovered)
        for pos in cands:
            if pos in chosen or target not in prints[pos]:
                continue
            got = search(chosen | {pos}, covered | prints[pos], start_size)
            if got is not None:
                return got
        return None

    for pool in (strict, strict + loose):
        cands = pool
        tries = 0
        for size in range(len(forced), len(forced) + max_size + 1):
            got = search(frozenset(forced), base_cover & fails, size)
            if got is not None:
                chosen, (q0, q1) = got
                return tuple(sorted(chosen)), q0, q1
            if tries > max_tries:
                break
    return None


# ----------------------------------------------------------------------------
# corpus records


@dataclass
class Erratum:
    object: str
    block: str
    row: int
    col: int
    printed: str
    corrected: str
    justification: str

    def to_json(self) -> dict:
        return {
            "object": self.object,
            "block": self.block,
            "row": self.row,
            "col": self.col,
            "printed": self.printed,
            "corrected": self.corrected,
            "justification": self.justification,
        }


@dataclass
class GradingErratum:
    """A printed grading list replaced by ``corrected`` (same bracket notation)."""

    object: str
    printed: str
    corrected: str
    justification: str

    def to_json(self) -> dict:
        return {
            "object": self.object,
            "printed": self.printed,
            "corrected": self.corrected,
            "justification": self.justification,
        }


@dataclass
class Replacement:
    """A factorization regenerated from the seeds, used in place of printed matrices."""

    object: str
    q0: list
    q1: list
    s: list[int]
    sbar: list[int]
    justification: str

    def to_json(self) -> dict:
        return {
            "object": self.object,
            "q0": self.q0,
            "q1": self.q1,
            "s": list(self.s),
            "sbar": list(self.sbar),
            "justification": self.justification,
        }


@dataclass
class ObjectRecord:
    name: str
    printed: str
    s: list[int]
    sbar: list[int]
    hphi: Fraction | None
    q0: list | None = None
    q1: list | None = None
    ref: str | None = None
    provenance: str = "printed"

    @property
    def rank(self) -> int:
        return len(self.s)

    @property
    def has_matrices(self) -> bool:
        return self.q0 is not None or self.ref is not None


@dataclass
class CaseEntry:
    id: str
    W: WeightContext
    f: Polynomial
    A: Signature
    relations: dict
    defaults: dict
    objects: dict[str, ObjectRecord]
    errata: list[Erratum] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    grading_errata: list[GradingErratum] = field(default_factory=list)
    replacements: list[Replacement] = field(default_factory=list)

    def replacement(self, name: str) -> Replacement | None:
        return next((r for r in self.replacements if r.object == name), None)

    def grading_text(self, name: str, raw: bool = False) -> str:
        """Printed grading, or its correction when one is recorded."""
        if not raw:
            for g in self.grading_errata:
                if g.object == name:
                    return g.corrected
        return self.objects[name].printed

    @property
    def parameters(self) -> list[str]:
        return sorted({PARAMETERS[i - 3] for e, _ in self.f.items() for i in (3, 4) if e[i]})

    def raw_matrices(self, name: str) -> tuple[list, list]:
        rec = self.objects[name]
        if rec.ref is not None:
            rec = self.objects[rec.ref]
        if rec.q0 is None:
            raise CorpusError(f"{self.id}: {name} has no printed matrices")
        return [[_cell(c) for c in row] for row in rec.q0], [[_cell(c) for c in row] for row in rec.q1]

    def matrices(self, name: str) -> tuple[list, list]:
        rep = self.replacement(name)
        if rep is not None:
            return [[parse_poly(c) for c in row] for row in rep.q0], [[parse_poly(c) for c in row] for row in rep.q1]
        q0, q1 = self.raw_matrices(name)
        source = self.objects[name].ref or name
        for e in self.errata:
            if e.object == source:
                M = q0 if e.block == "q0" else q1
                M[e.row][e.col] = parse_poly(e.corrected)
        return q0, q1

    def mf(self, name: str, raw: bool = False) -> MF:
        rec = self.objects[name]
        rep = None if raw else self.replacement(name)
        if rep is not None:
            q0, q1 = self.matrices(name)
            return MF(self.W, self.f, q0, q1, rep.s, rep.sbar, name, dict(self.relations))
        q0, q1 = self.raw_matrices(name) if raw else self.matrices(name)
        return MF(self.W, self.f, q0, q1, rec.s, rec.sbar, name, dict(self.relations))

    def factorizations(self) -> list[str]:
        return [n for n, rec in self.objects.items() if rec.has_matrices]

    def grading(self, name: str) -> tuple[list[int], list[int]]:
        rec = self.objects[name]
        return list(rec.s), list(rec.sbar)


class Unparsed(Polynomial):
    """Marker for a printed cell that is not a valid polynomial."""

    __slots__ = ("text",)

    def __init__(self, text: str) -> None:
        super().__init__({})
        self.text = text

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Unparsed) and other.text == self.text

    def __hash__(self) -> int:
        return hash(("unparsed", self.text))

    def __repr__(self) -> str:
        return f"Unparsed({self.text!r})"


def _cell(text: str) -> Polynomial:
    if text.startswith("!"):
        return Unparsed(text[1:])
    return parse_poly(text)


def _frac_json(v: Fraction | None):
    if v is None:
        return None
    return str(v)


def case_to_json(c: CaseEntry) -> dict:
    objs = {}
    for name, rec in c.objects.items():
        objs[name] = {
            "printed": rec.printed,
            "hphi": _frac_json(rec.hphi),
            "rank": rec.rank,
            "s": list(rec.s),
            "sbar": list(rec.sbar),
            "q0": rec.q0,
            "q1": rec.q1,
            "ref": rec.ref,
            "provenance": rec.provenance,
        }
    return {
        "schema": SCHEMA,
        "case_id": c.id,
        "weights": [c.W.a, c.W.b, c.W.c, c.W.h],
        "f": format_poly(c.f),
        "signature": list(c.A.alphas),
        "relations": {k: str(v) for k, v in sorted(c.relations.items())},
        "defaults": {k: str(v) for k, v in sorted(c.defaults.items())},
        "objects": objs,
        "errata": [e.to_json() for e in c.errata],
        "grading_errata": [g.to_json() for g in c.grading_errata],
        "replacements": [r.to_json() for r in c.replacements],
        "notes": list(c.notes),
    }


def case_from_json(d: dict) -> CaseEntry:
    if d.get("schema") != SCHEMA:
        raise CorpusError(f"unsupported schema {d.get('schema')!r}")
    a, b, cc, h = d["weights"]
    W = WeightContext(a, b, cc, h)
    objs = {}
    for name, o in d["objects"].items():
        objs[name] = ObjectRecord(
            name=name,
            printed=o["printed"],
            s=list(o["s"]),
            sbar=list(o["sbar"]),
            hphi=Fraction(o["hphi"]) if o["hphi"] is not None else None,
            q0=o["q0"],
            q1=o["q1"],
            ref=o["ref"],
            provenance=o["provenance"],
        )
        if o["rank"] != len(o["s"]):
            raise CorpusError(f"{d['case_id']}: {name} rank mismatch")
    return CaseEntry(
        id=d["case_id"],
        W=W,
        f=parse_poly(d["f"]),
        A=Signature(tuple(d["signature"]), 0),
        relations={k: Fraction(v) for k, v in d["relations"].items()},
        defaults={k: Fraction(v) for k, v in d["defaults"].items()},
        objects=objs,
        errata=[Erratum(**e) for e in d["errata"]],
        notes=list(d.get("notes", [])),
        grading_errata=[GradingErratum(**g) for g in d.get("grading_errata", [])],
        replacements=[Replacement(**r) for r in d.get("replacements", [])],
    )


def dumps(d: dict) -> str:
    """Canonical serialization (stable key order, one matrix row per line)."""
    return json.dumps(d, indent=1, ensure_ascii=False) + "\n"


def corpus_files() -> list[str]:
    root = resources.files(CORPUS_PACKAGE)
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def read_case_text(filename: str) -> str:
    return resources.files(CORPUS_PACKAGE).joinpath(filename).read_text(encoding="utf-8")


def _sort_key(c: CaseEntry) -> tuple:
    return (-c.W.h, c.W.a, c.W.b, c.W.c)


_cache: list[CaseEntry] | None = None


def load_corpus() -> list[CaseEntry]:
    global _cache
    if _cache is None:
        out = []
        for fn in corpus_files():
            try:
                out.append(case_from_json(json.loads(read_case_text(fn))))
            except (ValueError, KeyError) as exc:
                raise ParseError(f"{fn}: {exc}") from exc
        out.sort(key=_sort_key)
        _cache = out
    return list(_cache)


def load_case(case_id: str) -> CaseEntry:
    for c in load_corpus():
        if c.id == case_id:
            return c
    raise KeyError(f"unknown case {case_id!r}")


def case_ids() -> list[str]:
    return [c.id for c in load_corpus()]


# ----------------------------------------------------------------------------
# verification


def _check_one(c: CaseEntry, name: str, raw: bool) -> str | None:
    try:
        F = c.mf(name, raw=raw)
    except ParseError as exc:
        return f"parse: {exc}"
    for M in (F.q0, F.q1):
        for row in M:
            for p in row:
                if isinstance(p, Unparsed):
                    return f"unparseable printed entry {p.text!r}"
    try:
        mfmod.validate(F)
    except mfmod.ValidationError as exc:
        return str(exc)
    return None


def verify_erratum_uniqueness(c: CaseEntry, name: str) -> bool:
    """Re-derive the corrected entries of ``name`` from the raw data with the solver."""
    errs = [e for e in c.errata if e.object == name]
    if not errs:
        return True
    q0, q1 = c.raw_matrices(name)
    for M in (q0, q1):
        for row in M:
            for j, p in enumerate(row):
                if isinstance(p, Unparsed):
                    row[j] = ZERO
    rec = c.objects[name]
    F = MF(c.W, c.f, q0, q1, rec.s, rec.sbar, name, dict(c.relations))
    unknowns = [(0 if e.block == "q0" else 1, e.row, e.col) for e in errs]
    got = solve_entries(F, unknowns)
    if got is None:
        return False
    for e in errs:
        M = got[0] if e.block == "q0" else got[1]
        if M[e.row][e.col] != parse_poly(e.corrected):
            return False
    return True


def grading_check(c: CaseEntry, name: str, raw: bool = False) -> str | None:
    """Compare the (corrected) bracket list with the stored vectors and its phase subscript."""
    rec = c.objects[name]
    text = c.grading_text(name, raw)
    try:
        s, sbar, hphi = expand_grading(text)
    except CorpusError as exc:
        return str(exc)
    if len(s) != len(sbar):
        return f"grading {text!r} has {len(s)} s-entries and {len(sbar)} sbar-entries"
    h = c.W.h
    got = Fraction(sum(s) + sum(sbar)) / (2 * len(s))
    if rec.hphi is not None and got != rec.hphi:
        return f"phase {got}/{h} of {text!r} differs from the subscript {rec.hphi}/{h}"
    if not raw:
        want = (sorted(to_integral(s, h)), sorted(to_integral(sbar, h)))
        vecs = [(rec.s, rec.sbar)]
        rep = c.replacement(name)
        if rep is not None:
            vecs.append((rep.s, rep.sbar))
        for vs, vb in vecs:
            if (sorted(vs), sorted(vb)) != want:
                return f"stored grading vectors differ from {text!r}"
    return None


def verify_replacement(c: CaseEntry, name: str) -> bool:
    """Rebuild the collection from the seeds and compare with the stored replacement."""
    from . import ar
    from .mf import is_isomorphic

    rec = ar.build_collection(c, check_corpus=False)
    X = rec.objects.get(name)
    return X is not None and is_isomorphic(X, c.mf(name).specialize(c.defaults))


def verify_case(c: CaseEntry, raw: bool = False, check_errata: bool = True) -> dict:
    failures = []
    checked = 0
    for name in c.factorizations():
        checked += 1
        msg = _check_one(c, name, raw)
        if msg is not None:
            failures.append({"object": name, "reason": msg})
    grading = []
    for name in c.objects:
        msg = grading_check(c, name, raw)
        if msg is not None:
            grading.append({"object": name, "reason": msg})
    errata_ok = None
    replacements_ok = None
    if not raw and check_errata:
        errata_ok = all(verify_erratum_uniqueness(c, n) for n in {e.object for e in c.errata})
        if c.replacements:
            replacements_ok = all(verify_replacement(c, r.object) for r in c.replacements)
    return {
        "case_id": c.id,
        "checked": checked,
        "failures": failures,
        "grading_failures": grading,
        "errata": len(c.errata),
        "grading_errata": len(c.grading_errata),
        "replacements": len(c.replacements),
        "errata_unique": errata_ok,
        "replacements_verified": replacements_ok,
    }


def verify_corpus(raw: bool = False, cases: Iterable[CaseEntry] | None = None) -> dict:
    cases = list(cases) if cases is not None else load_corpus()
    reports = [verify_case(c, raw=raw) for c in cases]
    total = sum(r["checked"] for r in reports)
    failed = sum(len(r["failures"]) for r in reports)
    gfailed = sum(len(r["grading_failures"]) for r in reports)
    ok = (
        failed == 0
        and gfailed == 0
        and all(r["errata_unique"] is not False for r in reports)
        and all(r["replacements_verified"] is not False for r in reports)
    )
    return {
        "schema": SCHEMA,
        "mode": "raw" if raw else "overlay",
        "cases": len(reports),
        "factorizations": total,
        "failures": failed,
        "grading_failures": gfailed,
        "ok": ok,
        "reports": reports,
    }
