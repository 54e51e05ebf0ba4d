"""Exact multivariate polynomials over Q in x, y, z and two weight-0 parameters.

Degrees are stored as integers scaled by ``h``: a monomial x^i y^j z^k has
degree numerator ``2(ai + bj + ck)``, so ``f`` of degree 2 has numerator ``2h``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping, Union

VARIABLES = ("x", "y", "z", "l1", "l2")
PARAMETERS = ("l1", "l2")
_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_ALIASES = {"λ": "l1", "lambda": "l1", "λ1": "l1", "λ2": "l2"}

Exponent = tuple  # (ex, ey, ez, el1, el2)
Scalar = Union[int, Fraction]

ZERO_EXP = (0, 0, 0, 0, 0)


class PolyError(ValueError):
    """Base class for polynomial errors."""


class ParseError(PolyError):
    pass


class NotHomogeneous(PolyError):
    pass


class ZeroPolynomial(PolyError):
    pass


class MissingParameter(PolyError):
    pass


@dataclass(frozen=True)
class WeightContext:
    a: int
    b: int
    c: int
    h: int

    def __post_init__(self) -> None:
        for v in (self.a, self.b, self.c, self.h):
            if not isinstance(v, int) or v <= 0:
                raise ValueError(f"weights must be positive integers: {self}")
        if max(self.a, self.b, self.c) >= self.h:
            raise ValueError(f"weights must be smaller than h: {self}")
        if gcd(gcd(self.a, self.b), self.c) != 1:
            raise ValueError(f"gcd(a, b, c) must be 1: {self}")

    @property
    def weights(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def monomial_degree(self, e: Exponent) -> int:
        """h-scaled degree numerator of a monomial."""
        return 2 * (self.a * e[0] + self.b * e[1] + self.c * e[2])


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent 5-tuples to nonzero Fractions."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None) -> None:
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[tuple(e)] = Fraction(c)
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls({ZERO_EXP: c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Polynomial":
        name = _ALIASES.get(name, name)
        e = [0] * 5
        e[_INDEX[name]] = power
        return cls({tuple(e): 1})

    @classmethod
    def monomial(cls, e: Iterable[int], c: Scalar = 1) -> "Polynomial":
        e = tuple(e)
        return cls({e + (0,) * (5 - len(e)): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self._terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({e: -c for e, c in self._terms.items()})

    def __add__(self, other: "Polynomial | Scalar") -> "Polynomial":
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __sub__(self, other: "Polynomial | Scalar") -> "Polynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: "Polynomial | Scalar") -> "Polynomial":
        return _coerce(other) + (-self)

    def __mul__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial._raw({})
            return Polynomial._raw({e: c * other for e, c in self._terms.items()})
        other = _coerce(other)
        return Polynomial._raw(_kernel_mul(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_constant(self) -> bool:
        return all(e == ZERO_EXP for e in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get(ZERO_EXP, Fraction(0))

    def has_parameters(self) -> bool:
        return any(e[3] or e[4] for e in self._terms)

    def parameters(self) -> set[str]:
        out = set()
        for e in self._terms:
            if e[3]:
                out.add("l1")
            if e[4]:
                out.add("l2")
        return out

    def is_unit(self) -> bool:
        """Nonzero rational constant (parameter-free)."""
        return len(self._terms) == 1 and ZERO_EXP in self._terms

    def denominators_lcm(self) -> int:
        out = 1
        for c in self._terms.values():
            d = c.denominator
            out = out * d // gcd(out, d)
        return out

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _coerce(p: "Polynomial | Scalar") -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    if isinstance(p, (int, Fraction)):
        return Polynomial.constant(p)
    raise TypeError(f"cannot coerce {type(p).__name__} to Polynomial")


def _mul_py(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3], ea[4] + eb[4])
            v = out.get(e)
            out[e] = ca * cb if v is None else v + ca * cb
    return {e: c for e, c in out.items() if c}


_kernel_mul = _mul_py

ZERO = Polynomial()
ONE = Polynomial.constant(1)


# ----------------------------------------------------------------------------
# grading


def euler_degree(p: Polynomial, ctx: WeightContext) -> int:
    """h-scaled degree numerator of a homogeneous polynomial."""
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no degree")
    degs = {ctx.monomial_degree(e) for e in p._terms}
    if len(degs) != 1:
        raise NotHomogeneous(f"{p} has monomials of degrees {sorted(degs)} (h={ctx.h})")
    return degs.pop()


def is_homogeneous(p: Polynomial, ctx: WeightContext, d: int) -> bool:
    return all(ctx.monomial_degree(e) == d for e in p._terms)


_piece_cache: dict = {}


def graded_piece_basis(d: int, ctx: WeightContext) -> list[Exponent]:
    """Monomials x^i y^j z^k of h-scaled degree numerator ``d``, in lex-descending order."""
    key = (ctx.a, ctx.b, ctx.c, d)
    hit = _piece_cache.get(key)
    if hit is not None:
        return hit
    out: list[Exponent] = []
    if d >= 0 and d % 2 == 0:
        w = d // 2
        a, b, c = ctx.a, ctx.b, ctx.c
        for i in range(w // a, -1, -1):
            r1 = w - a * i
            for j in range(r1 // b, -1, -1):
                r2 = r1 - b * j
                if r2 % c == 0:
                    out.append((i, j, r2 // c, 0, 0))
    _piece_cache[key] = out
    return out


# ----------------------------------------------------------------------------
# parameters


def specialize(p: Polynomial, values: Mapping[str, Scalar]) -> Polynomial:
    vals = {_ALIASES.get(k, k): Fraction(v) for k, v in values.items()}
    out: dict = {}
    for e, c in p._terms.items():
        coef = c
        for slot, name in ((3, "l1"), (4, "l2")):
            if e[slot]:
                if name not in vals:
                    raise MissingParameter(f"no value for {name} in {p}")
                coef *= vals[name] ** e[slot]
        if coef:
            k = (e[0], e[1], e[2], 0, 0)
            v = out.get(k, 0) + coef
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return Polynomial._raw(out)


def reduce_relations(p: Polynomial, relations: Mapping[str, Scalar]) -> Polynomial:
    """Rewrite ``name^2 -> value`` for parameters with a quadratic relation (e.g. l2^2 = -1)."""
    if not relations:
        return p
    rel = {_INDEX[_ALIASES.get(k, k)]: Fraction(v) for k, v in relations.items()}
    out: dict = {}
    for e, c in p._terms.items():
        e = list(e)
        for slot, v in rel.items():
            q, r = divmod(e[slot], 2)
            c = c * v**q
            e[slot] = r
        k = tuple(e)
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return Polynomial._raw(out)


# ----------------------------------------------------------------------------
# text grammar

_TERM_RE = re.compile(r"[+-]?[^+-]+")
_FACTOR_RE = re.compile(r"^(x|y|z|l1|l2)(?:\^(\d+))?$")
_COEF_RE = re.compile(r"^\d+(?:/\d+)?$")


def parse_poly(text: str) -> Polynomial:
    s = "".join(str(text).split())
    for k in sorted(_ALIASES, key=len, reverse=True):
        s = s.replace(k, _ALIASES[k])
    if not s:
        raise ParseError("empty polynomial")
    if s in ("0", "+0", "-0"):
        return ZERO
    out: dict = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m:
            raise ParseError(f"cannot parse {text!r} at {pos}")
        tok = m.group(0)
        pos = m.end()
        sign = -1 if tok[0] == "-" else 1
        body = tok[1:] if tok[0] in "+-" else tok
        if not body:
            raise ParseError(f"dangling sign in {text!r}")
        coef = Fraction(sign)
        e = [0] * 5
        parts = body.split("*")
        start = 0
        if _COEF_RE.match(parts[0]):
            coef *= Fraction(parts[0])
            start = 1
        elif re.match(r"^\d", parts[0]):
            # coefficient glued to a variable, e.g. 2x^3
            m2 = re.match(r"^(\d+(?:/\d+)?)(.*)$", parts[0])
            coef *= Fraction(m2.group(1))
            parts[0] = m2.group(2)
        for fac in parts[start:]:
            fm = _FACTOR_RE.match(fac)
            if not fm:
                raise ParseError(f"bad factor {fac!r} in {text!r}")
            e[_INDEX[fm.group(1)]] += int(fm.group(2) or 1)
        k = tuple(e)
        v = out.get(k, 0) + coef
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return Polynomial._raw(out)


def _sort_key(e: Exponent) -> tuple:
    return tuple(-v for v in e)


def format_poly(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for e in sorted(p._terms, key=_sort_key):
        c = p._terms[e]
        factors = []
        for name, k in zip(VARIABLES, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ----------------------------------------------------------------------------
# polynomial matrices (lists of lists)

Matrix = list


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, m = len(A), len(B[0]) if B else 0
    inner = len(B)
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            acc: dict = {}
            for k in range(inner):
                a, b = Ai[k], B[k][j]
                if a._terms and b._terms:
                    for e, c in _kernel_mul(a._terms, b._terms).items():
                        v = acc.get(e, 0) + c
                        if v:
                            acc[e] = v
                        else:
                            acc.pop(e, None)
            row.append(Polynomial._raw(acc))
        out.append(row)
    return out


def mat_neg(A: Matrix) -> Matrix:
    return [[-p for p in row] for row in A]


def mat_transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


def mat_identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_zero(n: int, m: int) -> Matrix:
    return [[ZERO] * m for _ in range(n)]


def mat_map(A: Matrix, fn) -> Matrix:
    return [[fn(p) for p in row] for row in A]


def parse_matrix(rows: Iterable[Iterable[str]]) -> Matrix:
    return [[parse_poly(t) for t in row] for row in rows]


def format_matrix(A: Matrix) -> list[list[str]]:
    return [[format_poly(p) for p in row] for row in A]
