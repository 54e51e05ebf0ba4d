"""Quivers of the exceptional collections, Euler matrices, Coxeter transformations."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .weights import Signature, WeightSystem, chi_series, enumerate_eps_minus1_genus0, signature

VARIANTS = ("W", "T", "prime")


class QuiverError(ValueError):
    pass


class NonInvertibleC(QuiverError):
    pass


class NoDualFound(QuiverError):
    pass


class AmbiguousDual(QuiverError):
    pass


# ----------------------------------------------------------------------------
# vertices and closed-form Euler matrices


def vertices(A: Signature | tuple, variant: str = "W") -> list[str]:
    """Ordered vertex labels making chi upper unitriangular.

    Arms come first (descending j), then vbar1, v1, v0; for the primed collection
    vbar1 (standing for the primed object) is moved to the front.
    """
    alphas = A.alphas if isinstance(A, Signature) else tuple(A)
    arms = [f"v{i},{j}" for i, a in enumerate(alphas, 1) for j in range(a, 1, -1)]
    if variant == "prime":
        return ["vbar1"] + arms + ["v1", "v0"]
    return arms + ["vbar1", "v1", "v0"]


def _arm(label: str) -> tuple[int, int] | None:
    if label.startswith("v") and "," in label:
        i, j = label[1:].split(",")
        return int(i), int(j)
    return None


def _chi_entry(u: str, v: str, variant: str, r: int) -> int:
    """chi(u, v) from the closed-form dimensions of Hom(u, T^n v), n in {0, 1}."""
    au, av = _arm(u), _arm(v)
    if u == v:
        return 1
    if au and av:
        return 1 if au[0] == av[0] and au[1] > av[1] else 0
    if variant == "W":
        # collection (V_ij, Vbar1, V1, V0)
        if au and v == "vbar1":
            return 1
        if au and v in ("v1", "v0"):
            return -1
        if u == "vbar1" and v in ("v1", "v0"):
            return -2
        if (u, v) == ("v1", "v0"):
            return 1
        return 0
    if variant == "T":
        # collection (V_ij, Vbar1, T V1, T V0)
        if au and v == "vbar1":
            return 1
        if au and v in ("v1", "v0"):
            return 1
        if u == "vbar1" and v in ("v1", "v0"):
            return 2
        if (u, v) == ("v1", "v0"):
            return 1
        return 0
    if variant == "prime":
        # collection (Vbar1', V_ij, T V1, T V0)
        if u == "vbar1" and av:
            return 1 if av[1] == 2 else 0
        if u == "vbar1" and v in ("v1", "v0"):
            return r - 2
        if au and v in ("v1", "v0"):
            return 1
        if (u, v) == ("v1", "v0"):
            return 1
        return 0
    raise QuiverError(f"unknown variant {variant!r}")


def build_chi_from_homs(A: Signature | tuple, variant: str = "W") -> list[list[int]]:
    """Euler matrix chi(v, v') = hom(v, v') - hom(v, T v') from the closed-form hom dimensions."""
    alphas = A.alphas if isinstance(A, Signature) else tuple(A)
    if not alphas or min(alphas) < 2:
        raise QuiverError("signature entries must be at least 2")
    vs = vertices(alphas, variant)
    r = len(alphas)
    return [[_chi_entry(u, v, variant, r) for v in vs] for u in vs]


def _c_entry(u: str, v: str, variant: str) -> int:
    au, av = _arm(u), _arm(v)
    if u == v:
        return 1
    if au and av:
        return -1 if au[0] == av[0] and au[1] == av[1] + 1 else 0
    if (u, v) == ("v1", "v0"):
        return -1
    hub = {
        "W": {("a2", "vbar1"): -1, ("a2", "v1"): -1, ("vbar1", "v1"): 2},
        "T": {("a2", "vbar1"): -1, ("a2", "v1"): 1, ("vbar1", "v1"): -2},
        "prime": {("vbar1", "a2"): -1, ("a2", "v1"): -1, ("vbar1", "v1"): 2},
    }[variant]
    key = ("a2" if au and au[1] == 2 else u, "a2" if av and av[1] == 2 else v)
    return hub.get(key, 0)


@dataclass
class QuiverSpec:
    variant: str
    signature: tuple
    vertices: list[str]
    arrows: list[tuple[str, str, int]]
    C: list[list[int]]
    chi: list[list[int]]

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "signature": list(self.signature),
            "vertices": list(self.vertices),
            "arrows": [{"source": s, "target": t, "d": d} for s, t, d in self.arrows],
            "C": self.C,
            "chi": self.chi,
        }


def arrows_from_C(vs: list[str], C: list[list[int]]) -> list[tuple[str, str, int]]:
    out = []
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            c = C[i][j]
            if c < 0:
                out += [(vs[i], vs[j], 1)] * (-c)
            elif c > 0:
                out += [(vs[i], vs[j], -1)] * c
    return out


def quiver(A: Signature | tuple, variant: str = "W") -> QuiverSpec:
    alphas = A.alphas if isinstance(A, Signature) else tuple(A)
    vs = vertices(alphas, variant)
    C = [[_c_entry(u, v, variant) for v in vs] for u in vs]
    chi = int_matrix(inverse(C))
    return QuiverSpec(variant, alphas, vs, arrows_from_C(vs, C), C, chi)


def quiver_variants(A: Signature | tuple) -> tuple[QuiverSpec, QuiverSpec, QuiverSpec]:
    """(Delta_W, Delta_W^T, Delta'_W)."""
    return tuple(quiver(A, v) for v in VARIANTS)


# ----------------------------------------------------------------------------
# exact matrix helpers


def mat_mul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    return [[sum(A[i][t] * B[t][j] for t in range(k) if A[i][t] and B[t][j]) for j in range(m)] for i in range(n)]


def transpose(A):
    return [list(r) for r in zip(*A)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def inverse(A) -> list[list[Fraction]]:
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise NonInvertibleC("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                fct = M[r][col]
                M[r] = [a - fct * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


def int_matrix(A) -> list[list[int]]:
    out = []
    for row in A:
        r = []
        for v in row:
            v = Fraction(v)
            if v.denominator != 1:
                raise QuiverError("matrix is not integral")
            r.append(int(v))
        out.append(r)
    return out


def char_poly(A) -> list[int]:
    """Coefficients of det(xI - A), lowest degree first (Faddeev-LeVerrier)."""
    n = len(A)
    A = [[Fraction(v) for v in row] for row in A]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        if k == 1:
            M = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        else:
            AM = mat_mul(A, M)
            c = coeffs[n - k + 1]
            M = [[AM[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        AM = mat_mul(A, M)
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) / k
    return [int(c) for c in coeffs]


def cyclotomic(d: int) -> list[int]:
    """Phi_d as a coefficient list, lowest degree first."""
    from .weights import poly_divmod

    num = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            num, rem = poly_divmod(num, cyclotomic(e))
            assert not any(rem)
    return num


def _phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def cyclotomic_factorization(p: list[int]) -> dict[int, int] | None:
    """{d: multiplicity} if p is a product of cyclotomic polynomials, else None."""
    from .weights import poly_divmod

    p = list(p)
    deg = len(p) - 1
    out: dict[int, int] = {}
    d = 1
    while len(p) > 1:
        if _phi(d) > deg and d > 2 * deg * deg + 2:
            return None
        phi = cyclotomic(d)
        while len(p) >= len(phi):
            q, rem = poly_divmod(p, phi)
            if any(rem):
                break
            out[d] = out.get(d, 0) + 1
            p = q
            while len(p) > 1 and p[-1] == 0:
                p.pop()
        d += 1
    if p != [1]:
        return None
    return out


def inertia(S) -> tuple[int, int, int]:
    """(n_plus, n_zero, n_minus) of a symmetric rational matrix.

    The characteristic polynomial of a symmetric matrix is real-rooted, so
    Descartes' rule of signs counts positive and negative roots exactly.
    """
    p = char_poly(S)
    n = len(S)
    zero = next(i for i, c in enumerate(p) if c)

    def changes(cs):
        cs = [c for c in cs if c]
        return sum(1 for a, b in zip(cs, cs[1:]) if (a > 0) != (b > 0))

    pos = changes(p)
    neg = changes([c if i % 2 == 0 else -c for i, c in enumerate(p)])
    assert pos + neg + zero == n
    return pos, zero, neg


# ----------------------------------------------------------------------------
# Coxeter transformation


@dataclass
class CoxeterData:
    matrix: list[list[int]]
    order: int | None
    char_poly: list[int]
    cyclotomic: dict[int, int] | None
    eigen_angles: list[Fraction]
    inertia: tuple[int, int, int]
    det: int

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "char_poly": self.char_poly,
            "cyclotomic_factors": {str(k): v for k, v in sorted((self.cyclotomic or {}).items())},
            "eigen_angles": [str(a) for a in self.eigen_angles],
            "inertia": list(self.inertia),
            "det": self.det,
        }


def coxeter_matrix(C) -> list[list[int]]:
    Ct_inv = inverse(transpose(C))
    return int_matrix([[-v for v in row] for row in mat_mul(C, Ct_inv)])


def matrix_order(M, cap: int) -> int | None:
    n = len(M)
    I = identity(n)
    P = M
    for k in range(1, cap + 1):
        if P == I:
            return k
        P = mat_mul(P, M)
    return None


def coxeter(C, cap: int = 1000) -> CoxeterData:
    c = coxeter_matrix(C)
    chi = inverse(C)
    S = [[chi[i][j] + chi[j][i] for j in range(len(C))] for i in range(len(C))]
    cp = char_poly(c)
    fac = cyclotomic_factorization(cp)
    angles: list[Fraction] = []
    for d, m in sorted((fac or {}).items()):
        for k in range(d):
            if gcd(k, d) == 1:
                angles += [Fraction(k, d)] * m
    det = cp[0] * (-1) ** len(C)
    return CoxeterData(c, matrix_order(c, cap), cp, fac, sorted(angles), inertia(S), det)


def coxeter_for_case(W: WeightSystem, variant: str = "W") -> CoxeterData:
    return coxeter(quiver(signature(W), variant).C, cap=4 * W.h)


# ----------------------------------------------------------------------------
# strange duality at the level of K_0


def exponent_angles(W: WeightSystem) -> list[Fraction]:
    """Multiset {m/h mod 1} over the exponents m of W."""
    return sorted(Fraction(m, W.h) % 1 for m in chi_series(W).exponents)


def nu(W: WeightSystem) -> int:
    return 3 + sum(a - 1 for a in signature(W).alphas)


def duality_scan(systems: list[WeightSystem] | None = None) -> dict:
    """Pair each r=3 system W with the W' whose exponent angles match the Coxeter angles of W."""
    if systems is None:
        systems = enumerate_eps_minus1_genus0()
    pool = [W for W in systems if signature(W).r == 3]
    angles = {W: coxeter_for_case(W).eigen_angles for W in pool}
    exps = {W: exponent_angles(W) for W in pool}
    mus = {W: chi_series(W).mu for W in pool}
    pairs = []
    errors = []
    partner = {}
    for W in pool:
        hits = [V for V in pool if mus[V] == nu(W) and Counter(exps[V]) == Counter(angles[W])]
        if not hits:
            errors.append({"case": _wid(W), "error": "NoDualFound"})
            continue
        if len(hits) > 1:
            errors.append({"case": _wid(W), "error": "AmbiguousDual", "candidates": [_wid(V) for V in hits]})
            continue
        partner[W] = hits[0]
        pairs.append({"case": _wid(W), "signature": list(signature(W).alphas), "dual": _wid(hits[0])})
    involution = all(partner.get(partner[W]) == W for W in partner)
    covered = len(partner) == len(pool) and set(partner.values()) == set(pool)
    return {
        "schema": "1",
        "systems": len(pool),
        "pairs": pairs,
        "errors": errors,
        "involution": involution,
        "covers_all": covered,
    }


def _wid(W: WeightSystem) -> str:
    return f"w-{W.a}-{W.b}-{W.c}-{W.h}"
