"""Graded matrix factorizations (Q, S) of a weighted homogeneous f, functors, cones and hom spaces.

Conventions (all degrees are integers scaled by h, so ``H = h`` stands for degree 1):

* ``q0`` has rows indexed by ``s`` and columns by ``sbar``; ``q1`` the reverse.
* ``deg q0[k][l] = H + s[k] - sbar[l]`` and ``deg q1[k][l] = H + sbar[k] - s[l]``.
* A morphism ``(g0, g1)`` satisfies ``q0' g1 = g0 q0`` and ``q1' g0 = g1 q1`` with
  ``deg g0[k][l] = s'[k] - s[l]`` and ``deg g1[k][l] = sbar'[k] - sbar[l]``.
* ``tau`` adds 2 to every grading entry, ``T`` swaps parity, negates Q and adds H,
  so that ``T^2 = tau^h`` holds on the nose.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .poly import (
    ONE,
    ZERO,
    Polynomial,
    WeightContext,
    euler_degree,
    format_matrix,
    graded_piece_basis,
    mat_identity,
    mat_mul,
    mat_neg,
    mat_transpose,
    mat_zero,
    reduce_relations,
    specialize,
)

TAU_STEP = 2


class MFError(ValueError):
    pass


class ValidationError(MFError):
    pass


class NotAFactorization(ValidationError):
    pass


class NotHomogeneousEntry(ValidationError):
    pass


class ParametricInput(MFError):
    pass


class InvalidMorphism(MFError):
    pass


class IncompatibleEndpoints(MFError):
    pass


class NotASummand(MFError):
    pass


class ZeroObject(MFError):
    pass


class WindowTooSmall(MFError):
    pass


@dataclass(frozen=True, eq=False)
class MF:
    """A graded matrix factorization. Instances are treated as immutable."""

    ctx: WeightContext
    f: Polynomial
    q0: list
    q1: list
    s: tuple
    sbar: tuple
    name: str = ""
    relations: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", tuple(self.s))
        object.__setattr__(self, "sbar", tuple(self.sbar))
        r = len(self.s)
        if len(self.sbar) != r or len(self.q0) != r or len(self.q1) != r:
            raise MFError(f"inconsistent ranks in {self.name or 'factorization'}")
        for M in (self.q0, self.q1):
            for row in M:
                if len(row) != r:
                    raise MFError(f"non-square block in {self.name or 'factorization'}")

    @property
    def rank(self) -> int:
        return len(self.s)

    @property
    def H(self) -> int:
        return self.ctx.h

    def key(self) -> tuple:
        return (
            self.ctx,
            self.f,
            tuple(tuple(r) for r in self.q0),
            tuple(tuple(r) for r in self.q1),
            self.s,
            self.sbar,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MF):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def with_name(self, name: str) -> "MF":
        return MF(self.ctx, self.f, self.q0, self.q1, self.s, self.sbar, name, self.relations)

    def is_parametric(self) -> bool:
        if self.f.has_parameters():
            return True
        return any(p.has_parameters() for M in (self.q0, self.q1) for row in M for p in row)

    def specialize(self, values: Mapping[str, Fraction]) -> "MF":
        sp = lambda p: specialize(p, values)  # noqa: E731
        return MF(
            self.ctx,
            sp(self.f),
            [[sp(p) for p in row] for row in self.q0],
            [[sp(p) for p in row] for row in self.q1],
            self.s,
            self.sbar,
            self.name,
            {},
        )

    def grading_multiset(self) -> tuple:
        return (tuple(sorted(self.s)), tuple(sorted(self.sbar)))

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "q0": format_matrix(self.q0),
            "q1": format_matrix(self.q1),
            "s": list(self.s),
            "sbar": list(self.sbar),
        }

    def __repr__(self) -> str:
        return f"MF({self.name or '?'}, rank={self.rank}, s={list(self.s)}, sbar={list(self.sbar)})"


# ----------------------------------------------------------------------------
# validation


def expected_degree(F: MF, block: int, k: int, l: int) -> int:
    if block == 0:
        return F.H + F.s[k] - F.sbar[l]
    return F.H + F.sbar[k] - F.s[l]


def validate(F: MF) -> None:
    """Raise NotHomogeneousEntry or NotAFactorization on the first failing entry."""
    for block, M in ((0, F.q0), (1, F.q1)):
        for k, row in enumerate(M):
            for l, p in enumerate(row):
                if p.is_zero():
                    continue
                want = expected_degree(F, block, k, l)
                degs = sorted({F.ctx.monomial_degree(e) for e, _ in p.items()})
                if degs != [want]:
                    raise NotHomogeneousEntry(
                        f"{F.name}: q{block}[{k}][{l}] = {p} has degree {degs}, expected {want} (h={F.H})"
                    )
    fI = F.f
    for label, A, B in (("q0*q1", F.q0, F.q1), ("q1*q0", F.q1, F.q0)):
        P = mat_mul(A, B)
        for i, row in enumerate(P):
            for j, p in enumerate(row):
                p = reduce_relations(p, F.relations)
                want = reduce_relations(fI, F.relations) if i == j else ZERO
                if p != want:
                    raise NotAFactorization(f"{F.name}: ({label})[{i}][{j}] = {p}, expected {want}")


def is_valid(F: MF) -> bool:
    try:
        validate(F)
    except ValidationError:
        return False
    return True


# ----------------------------------------------------------------------------
# functors


def tau(F: MF, n: int = 1) -> MF:
    d = TAU_STEP * n
    return MF(
        F.ctx,
        F.f,
        F.q0,
        F.q1,
        tuple(v + d for v in F.s),
        tuple(v + d for v in F.sbar),
        F.name,
        F.relations,
    )


def translate_T(F: MF, n: int = 1) -> MF:
    out = F
    step = F.H if n >= 0 else -F.H
    for _ in range(abs(n)):
        out = MF(
            out.ctx,
            out.f,
            mat_neg(out.q1),
            mat_neg(out.q0),
            tuple(v + step for v in out.sbar),
            tuple(v + step for v in out.s),
            out.name,
            out.relations,
        )
    return out


def transpose_t(F: MF) -> MF:
    return MF(
        F.ctx,
        F.f,
        mat_transpose(F.q1),
        mat_transpose(F.q0),
        tuple(-v for v in F.s),
        tuple(-v for v in F.sbar),
        F.name,
        F.relations,
    )


def direct_sum(F: MF, G: MF) -> MF:
    _check_same_ring(F, G)
    r, t = F.rank, G.rank

    def block(A, B):
        out = mat_zero(r + t, r + t)
        for i in range(r):
            for j in range(r):
                out[i][j] = A[i][j]
        for i in range(t):
            for j in range(t):
                out[r + i][r + j] = B[i][j]
        return out

    return MF(F.ctx, F.f, block(F.q0, G.q0), block(F.q1, G.q1), F.s + G.s, F.sbar + G.sbar, "", F.relations)


def zero_object(ctx: WeightContext, f: Polynomial) -> MF:
    return MF(ctx, f, [], [], (), (), "0")


def trivial(ctx: WeightContext, f: Polynomial, s: int = 0) -> MF:
    """The contractible factorization (1, f) with s = (s), sbar = (s + h)."""
    return MF(ctx, f, [[ONE]], [[f]], (s,), (s + ctx.h,), "trivial")


def phase(F: MF) -> Fraction:
    if F.rank == 0:
        raise ZeroObject("phase of a zero object")
    return Fraction(sum(F.s) + sum(F.sbar), 2 * F.rank * F.H)


def _check_same_ring(F: MF, G: MF) -> None:
    if F.ctx != G.ctx or F.f != G.f:
        raise IncompatibleEndpoints("factorizations of different potentials")


# ----------------------------------------------------------------------------
# reduction


def _eliminate_q0(q0, q1, s, sbar, k, l):
    """Split off the unit q0[k][l] (q0 is modified on copies)."""
    r = len(s)
    q0 = [list(row) for row in q0]
    q1 = [list(row) for row in q1]
    c = q0[k][l].constant_value()
    inv = 1 / c
    for i in range(r):
        if i == k or q0[i][l].is_zero():
            continue
        fac = q0[i][l] * inv
        q0[i] = [q0[i][j] - fac * q0[k][j] for j in range(r)]
        for m in range(r):
            if not q1[m][i].is_zero():
                q1[m][k] = q1[m][k] + fac * q1[m][i]
    for j in range(r):
        if j == l or q0[k][j].is_zero():
            continue
        fac = q0[k][j] * inv
        for i in range(r):
            if not q0[i][l].is_zero():
                q0[i][j] = q0[i][j] - fac * q0[i][l]
        q1[l] = [q1[l][m] + fac * q1[j][m] for m in range(r)]
    keep_s = [i for i in range(r) if i != k]
    keep_b = [j for j in range(r) if j != l]
    nq0 = [[q0[i][j] for j in keep_b] for i in keep_s]
    nq1 = [[q1[j][i] for i in keep_s] for j in keep_b]
    return nq0, nq1, tuple(s[i] for i in keep_s), tuple(sbar[j] for j in keep_b)


def _find_unit(M):
    for k, row in enumerate(M):
        for l, p in enumerate(row):
            if p.is_unit():
                return k, l
    return None


def reduce(F: MF) -> MF:
    """Remove trivial summands until no entry is a nonzero rational constant."""
    q0, q1, s, sbar = F.q0, F.q1, F.s, F.sbar
    while True:
        hit = _find_unit(q0)
        if hit is not None:
            q0, q1, s, sbar = _eliminate_q0(q0, q1, s, sbar, *hit)
            continue
        hit = _find_unit(q1)
        if hit is not None:
            q1, q0, sbar, s = _eliminate_q0(q1, q0, sbar, s, *hit)
            continue
        break
    return MF(F.ctx, F.f, q0, q1, s, sbar, F.name, F.relations)


def is_zero_object(F: MF) -> bool:
    return reduce(F).rank == 0


# ----------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True, eq=False)
class Morphism:
    source: MF
    target: MF
    g0: list
    g1: list

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """self ∘ other."""
        return compose(other, self)

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(
            self.source,
            self.target,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.g0, other.g0)],
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.g1, other.g1)],
        )

    def scale(self, c) -> "Morphism":
        c = Fraction(c)
        return Morphism(
            self.source,
            self.target,
            [[p * c for p in row] for row in self.g0],
            [[p * c for p in row] for row in self.g1],
        )

    def is_zero(self) -> bool:
        return all(p.is_zero() for M in (self.g0, self.g1) for row in M for p in row)


def identity(F: MF) -> Morphism:
    return Morphism(F, F, mat_identity(F.rank), mat_identity(F.rank))


def zero_morphism(F: MF, G: MF) -> Morphism:
    return Morphism(F, G, mat_zero(G.rank, F.rank), mat_zero(G.rank, F.rank))


def compose(g: Morphism, gp: Morphism) -> Morphism:
    """gp ∘ g (apply g first)."""
    if g.target != gp.source:
        raise IncompatibleEndpoints("target of the first map differs from source of the second")
    return Morphism(g.source, gp.target, mat_mul(gp.g0, g.g0), mat_mul(gp.g1, g.g1))


def check_morphism(g: Morphism) -> None:
    F, G = g.source, g.target
    for label, M, degs in (
        ("g0", g.g0, lambda k, l: G.s[k] - F.s[l]),
        ("g1", g.g1, lambda k, l: G.sbar[k] - F.sbar[l]),
    ):
        for k, row in enumerate(M):
            for l, p in enumerate(row):
                if p and any(F.ctx.monomial_degree(e) != degs(k, l) for e, _ in p.items()):
                    raise InvalidMorphism(f"{label}[{k}][{l}] = {p} has wrong degree")
    if mat_mul(G.q0, g.g1) != mat_mul(g.g0, F.q0) or mat_mul(G.q1, g.g0) != mat_mul(g.g1, F.q1):
        raise InvalidMorphism("morphism does not commute with the differentials")


def cone(g: Morphism) -> MF:
    """Mapping cone on T(F) ⊕ G, so that F -> G -> cone(g) -> T(F) is a triangle."""
    F, G = g.source, g.target
    r, t = F.rank, G.rank
    n = r + t
    c0 = mat_zero(n, n)
    c1 = mat_zero(n, n)
    for i in range(r):
        for j in range(r):
            c0[i][j] = -F.q1[i][j]
            c1[i][j] = -F.q0[i][j]
    for i in range(t):
        for j in range(r):
            c0[r + i][j] = g.g0[i][j]
            c1[r + i][j] = g.g1[i][j]
        for j in range(t):
            c0[r + i][r + j] = G.q0[i][j]
            c1[r + i][r + j] = G.q1[i][j]
    H = F.H
    s = tuple(v + H for v in F.sbar) + G.s
    sbar = tuple(v + H for v in F.s) + G.sbar
    return MF(F.ctx, F.f, c0, c1, s, sbar, "", F.relations)


def cone_projection(g: Morphism) -> Morphism:
    """The map cone(g) -> T(F) of the triangle."""
    F, G = g.source, g.target
    C = cone(g)
    TF = translate_T(F)
    r, t = F.rank, G.rank
    p0 = mat_zero(r, r + t)
    p1 = mat_zero(r, r + t)
    for i in range(r):
        p0[i][i] = ONE
        p1[i][i] = ONE
    return Morphism(C, TF, p0, p1)


def cone_inclusion(g: Morphism) -> Morphism:
    F, G = g.source, g.target
    C = cone(g)
    r, t = F.rank, G.rank
    i0 = mat_zero(r + t, t)
    i1 = mat_zero(r + t, t)
    for i in range(t):
        i0[r + i][i] = ONE
        i1[r + i][i] = ONE
    return Morphism(G, C, i0, i1)


def translate_morphism(g: Morphism) -> Morphism:
    """T applied to a morphism: (g0, g1) -> (g1, g0) between T(F) and T(G)."""
    return Morphism(translate_T(g.source), translate_T(g.target), g.g1, g.g0)


def tau_morphism(g: Morphism, n: int = 1) -> Morphism:
    return Morphism(tau(g.source, n), tau(g.target, n), g.g0, g.g1)


# ----------------------------------------------------------------------------
# hom spaces


class _Layout:
    """Indexing of the unknown coefficients of degree-zero maps F -> G."""

    def __init__(self, F: MF, G: MF) -> None:
        self.F, self.G = F, G
        ctx = F.ctx
        self.index: dict = {}
        self.entries: list = []
        for block, rows, cols in ((0, G.s, F.s), (1, G.sbar, F.sbar)):
            for k, dk in enumerate(rows):
                for l, dl in enumerate(cols):
                    for e in graded_piece_basis(dk - dl, ctx):
                        self.index[(block, k, l, e)] = len(self.entries)
                        self.entries.append((block, k, l, e))
        self.n = len(self.entries)

    def vector(self, g0, g1) -> dict:
        out = {}
        for block, M in ((0, g0), (1, g1)):
            for k, row in enumerate(M):
                for l, p in enumerate(row):
                    for e, c in p.items():
                        idx = self.index.get((block, k, l, e))
                        if idx is None:
                            raise InvalidMorphism(f"entry g{block}[{k}][{l}] has a monomial of the wrong degree")
                        out[idx] = c
        return out

    def morphism(self, vec: Mapping[int, Fraction]) -> Morphism:
        F, G = self.F, self.G
        acc = [
            [[{} for _ in range(F.rank)] for _ in range(G.rank)],
            [[{} for _ in range(F.rank)] for _ in range(G.rank)],
        ]
        for idx, c in vec.items():
            if c:
                block, k, l, e = self.entries[idx]
                acc[block][k][l][e] = Fraction(c)
        g0 = [[Polynomial(d) for d in row] for row in acc[0]]
        g1 = [[Polynomial(d) for d in row] for row in acc[1]]
        return Morphism(F, G, g0, g1)


def _mono_times(e, p: Polynomial):
    for ep, c in p.items():
        yield (e[0] + ep[0], e[1] + ep[1], e[2] + ep[2], 0, 0), c


def _constraint_rows(L: _Layout) -> list[dict]:
    """Rows of the linear map (g0, g1) -> (q0' g1 - g0 q0, q1' g0 - g1 q1)."""
    F, G = L.F, L.G
    eqs: dict = {}
    rF = F.rank
    rG = G.rank
    for idx, (block, k, l, e) in enumerate(L.entries):
        if block == 0:
            for j in range(rF):
                p = F.q0[l][j]
                if p:
                    for m, c in _mono_times(e, p):
                        _acc(eqs, (0, k, j, m), idx, -c)
            for i in range(rG):
                p = G.q1[i][k]
                if p:
                    for m, c in _mono_times(e, p):
                        _acc(eqs, (1, i, l, m), idx, c)
        else:
            for i in range(rG):
                p = G.q0[i][k]
                if p:
                    for m, c in _mono_times(e, p):
                        _acc(eqs, (0, i, l, m), idx, c)
            for j in range(rF):
                p = F.q1[l][j]
                if p:
                    for m, c in _mono_times(e, p):
                        _acc(eqs, (1, k, j, m), idx, -c)
    return [row for _, row in sorted(eqs.items()) if any(row.values())]


def _acc(eqs, key, idx, c):
    row = eqs.get(key)
    if row is None:
        row = eqs[key] = {}
    v = row.get(idx, 0) + c
    if v:
        row[idx] = v
    else:
        row.pop(idx, None)


def _homotopy_rows(L: _Layout) -> list[dict]:
    """Images of the homotopy basis: g0 = q0' psi1 + psi0 q1, g1 = q1' psi0 + psi1 q0."""
    F, G = L.F, L.G
    ctx, H = F.ctx, F.H
    rF, rG = F.rank, G.rank
    index = L.index
    rows = []
    # psi0: rows G.s, cols F.sbar
    for k in range(rG):
        for l in range(rF):
            for e in graded_piece_basis(G.s[k] - F.sbar[l] - H, ctx):
                vec: dict = {}
                for j in range(rF):
                    p = F.q1[l][j]
                    if p:
                        for m, c in _mono_times(e, p):
                            _vacc(vec, index[(0, k, j, m)], c)
                for i in range(rG):
                    p = G.q1[i][k]
                    if p:
                        for m, c in _mono_times(e, p):
                            _vacc(vec, index[(1, i, l, m)], c)
                if vec:
                    rows.append(vec)
    # psi1: rows G.sbar, cols F.s
    for k in range(rG):
        for l in range(rF):
            for e in graded_piece_basis(G.sbar[k] - F.s[l] - H, ctx):
                vec = {}
                for i in range(rG):
                    p = G.q0[i][k]
                    if p:
                        for m, c in _mono_times(e, p):
                            _vacc(vec, index[(0, i, l, m)], c)
                for j in range(rF):
                    p = F.q0[l][j]
                    if p:
                        for m, c in _mono_times(e, p):
                            _vacc(vec, index[(1, k, j, m)], c)
                if vec:
                    rows.append(vec)
    return rows


def _vacc(vec, idx, c):
    v = vec.get(idx, 0) + c
    if v:
        vec[idx] = v
    else:
        vec.pop(idx, None)


def _require_numeric(*objs: MF) -> None:
    for X in objs:
        if X.is_parametric():
            raise ParametricInput(f"{X.name or 'factorization'} has parameters; specialize first")


class HomSpace:
    """Degree-zero maps F -> G modulo null-homotopic ones."""

    def __init__(self, F: MF, G: MF) -> None:
        _check_same_ring(F, G)
        _require_numeric(F, G)
        self.source, self.target = F, G
        self.layout = L = _Layout(F, G)
        self.homotopies = _homotopy_rows(L)
        self._boundary = linalg.Echelon(L.n)
        for row in self.homotopies:
            self._boundary.add(row)
        closed = linalg.nullspace(_constraint_rows(L), L.n) if L.n else []
        quotient = linalg.Echelon(L.n)
        quotient.pivots = dict(self._boundary.pivots)
        self.vectors: list[dict] = []
        for v in closed:
            if quotient.add(v):
                self.vectors.append(v)
        self.basis = [L.morphism(v) for v in self.vectors]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def vector(self, g: Morphism) -> dict:
        return self.layout.vector(g.g0, g.g1)

    def is_null_homotopic(self, g: Morphism) -> bool:
        return self._boundary.contains(self.vector(g))

    def coordinates(self, g: Morphism) -> list[Fraction]:
        """Coefficients of the class of g in ``basis``."""
        gens = list(self.vectors) + list(self._boundary.pivots.values())
        sol = linalg.solve_in_span(gens, self.vector(g), self.layout.n)
        if sol is None:
            raise InvalidMorphism("map is not closed")
        return sol[: self.dim]


def hom_space(F: MF, G: MF) -> HomSpace:
    return HomSpace(F, G)


def hom_dim(F: MF, G: MF) -> int:
    """dim Hom(F, G) by ranks only (no basis)."""
    _check_same_ring(F, G)
    _require_numeric(F, G)
    L = _Layout(F, G)
    if L.n == 0:
        return 0
    rk = linalg.rank(_constraint_rows(L), L.n)
    hrk = linalg.rank(_homotopy_rows(L), L.n)
    return L.n - rk - hrk


def is_null_homotopic(g: Morphism) -> bool:
    return HomSpace(g.source, g.target).is_null_homotopic(g)


def _candidates(basis: Sequence[Morphism], tries: int = 6):
    yield from basis
    if len(basis) > 1:
        rng = random.Random(12345)
        for _ in range(tries):
            acc = None
            for b in basis:
                term = b.scale(rng.randint(1, 9))
                acc = term if acc is None else acc + term
            yield acc


def find_inverse_pair(F: MF, G: MF) -> tuple[Morphism, Morphism] | None:
    """Maps a: F -> G, b: G -> F with b∘a ≃ id_F and a∘b ≃ id_G, or None."""
    A = HomSpace(F, G)
    B = HomSpace(G, F)
    EF = HomSpace(F, F)
    EG = HomSpace(G, G)
    if A.dim == 0 or B.dim == 0:
        return None
    target = EF.vector(identity(F))
    for a in _candidates(A.basis):
        gens = [EF.vector(compose(a, b)) for b in B.basis]
        gens += list(EF._boundary.pivots.values())
        sol = linalg.solve_in_span(gens, target, EF.layout.n)
        if sol is None:
            continue
        b = None
        for c, bj in zip(sol[: B.dim], B.basis):
            if c:
                b = bj.scale(c) if b is None else b + bj.scale(c)
        if b is None:
            continue
        diff = compose(b, a) + identity(G).scale(-1)
        if EG.is_null_homotopic(diff):
            return a, b
    return None


def is_isomorphic(F: MF, G: MF) -> bool:
    Fr, Gr = reduce(F), reduce(G)
    if Fr.rank != Gr.rank:
        return False
    if Fr.rank == 0:
        return True
    if Fr.grading_multiset() != Gr.grading_multiset():
        return False
    return find_inverse_pair(Fr, Gr) is not None


def split_summand(Y: MF, X: MF) -> MF:
    """Z with Y ≅ X ⊕ Z, computed as the cone of a split inclusion X -> Y."""
    I = HomSpace(X, Y)
    P = HomSpace(Y, X)
    EX = HomSpace(X, X)
    if I.dim == 0 or P.dim == 0:
        raise NotASummand("no maps between the objects")
    target = EX.vector(identity(X))
    for i in _candidates(I.basis):
        gens = [EX.vector(compose(i, p)) for p in P.basis]
        gens += list(EX._boundary.pivots.values())
        if linalg.solve_in_span(gens, target, EX.layout.n) is not None:
            return reduce(cone(i))
    raise NotASummand("no split inclusion found")


# ----------------------------------------------------------------------------
# tables and spectra


def _shift_range(F: MF, G: MF, n: int, margin: Fraction) -> range:
    """tau-exponents m with phase(T^n tau^m G) - phase(F) within [-margin, 1 + 2/h + margin]."""
    h = F.H
    base = phase(translate_T(G, n)) - phase(F)
    lo_gap, hi_gap = -margin, 1 + Fraction(2, h) + margin
    step = Fraction(TAU_STEP, h)
    lo = -((base - lo_gap) // step)
    hi = (hi_gap - base) // step
    return range(int(lo), int(hi) + 1)


def hom_table(F: MF, G: MF, ns: Sequence[int] = (0, 1), margin: Fraction | None = None) -> dict:
    """{(n, m): dim Hom(F, T^n tau^m G)} over a phase window; raises WindowTooSmall at the edges."""
    F, G = reduce(F), reduce(G)
    if margin is None:
        margin = Fraction(4, F.H)
    out = {}
    for n in ns:
        ms = _shift_range(F, G, n, margin)
        TG = translate_T(G, n)
        for m in ms:
            out[(n, m)] = hom_dim(F, tau(TG, m))
        if ms and (out[(n, ms[0])] or out[(n, ms[-1])]):
            raise WindowTooSmall(f"nonzero hom at the window edge for n={n}")
    return out


def spectrum(F: MF, G: MF, margin: Fraction | None = None) -> list[Fraction]:
    """Sorted multiset {phase(tau^m G) - phase(F)} weighted by dim Hom(F, tau^m G)."""
    F, G = reduce(F), reduce(G)
    if margin is None:
        margin = Fraction(4, F.H)
    pF = phase(F)
    out: list[Fraction] = []
    lo_gap = -1 - margin
    hi_gap = 2 + Fraction(2, F.H) + margin
    step = Fraction(TAU_STEP, F.H)
    base = phase(G) - pF
    ms = range(int(-((base - lo_gap) // step)), int((hi_gap - base) // step) + 1)
    for m in ms:
        d = hom_dim(F, tau(G, m))
        if d:
            if m in (ms[0], ms[-1]):
                raise WindowTooSmall("nonzero hom at the spectrum window edge")
            out.extend([base + m * step] * d)
    return sorted(out)


def euler_chi(F: MF, G: MF, nrange: Sequence[int] = range(-2, 3)) -> int:
    """Σ (-1)^n dim Hom(F, T^n G) over a window of n (checked to vanish at the edges)."""
    F, G = reduce(F), reduce(G)
    dims = {n: hom_dim(F, translate_T(G, n)) for n in nrange}
    ns = list(nrange)
    if dims[ns[0]] or dims[ns[-1]]:
        raise WindowTooSmall("nonzero hom at the edge of the translation window")
    return sum((-1) ** (n % 2) * d for n, d in dims.items())


def counter(values) -> Counter:
    return Counter(values)
