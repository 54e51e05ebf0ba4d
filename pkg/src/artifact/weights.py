"""Regular systems of weights: characteristic function, exponents, signature, dual rank."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .poly import WeightContext


class NotRegular(ValueError):
    pass


class MalformedCharacteristic(NotRegular):
    pass


WeightSystem = WeightContext


@dataclass(frozen=True)
class ExponentData:
    exponents: tuple[int, ...]
    mu: int
    epsilon: int
    a0: int


@dataclass(frozen=True)
class Signature:
    alphas: tuple[int, ...]
    a0: int

    @property
    def r(self) -> int:
        return len(self.alphas)


# ----------------------------------------------------------------------------
# integer polynomials as coefficient lists, lowest degree first


def _pmul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _binomial(n: int, m: int, sign: int = -1) -> list[int]:
    """T^n + sign*T^m as a coefficient list (n > m >= 0)."""
    out = [0] * (n + 1)
    out[n] += 1
    out[m] += sign
    return out


def poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division in Z[T] by a monic (up to sign) divisor."""
    num = list(num)
    while len(den) > 1 and den[-1] == 0:
        den = den[:-1]
    lead = den[-1]
    if abs(lead) != 1:
        raise ValueError("divisor must have leading coefficient +-1")
    dq = len(num) - len(den) + 1
    if dq <= 0:
        return [0], num
    quot = [0] * dq
    for k in range(dq - 1, -1, -1):
        c = num[k + len(den) - 1] * lead
        quot[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    rem = num[: len(den) - 1]
    return quot, rem


def chi_series(W: WeightSystem) -> ExponentData:
    """Exponents of W from T^{-h} prod (T^h - T^{a_i}) / prod (T^{a_i} - 1)."""
    a, b, c, h = W.a, W.b, W.c, W.h
    num = [1]
    for w in (a, b, c):
        num = _pmul(num, _binomial(h, w))
    den = [1]
    for w in (a, b, c):
        den = _pmul(den, _binomial(w, 0))
    quot, rem = poly_divmod(num, den)
    if any(rem):
        raise NotRegular(f"{W}: characteristic function has poles")
    exps: list[int] = []
    for k, coef in enumerate(quot):
        if coef < 0:
            raise MalformedCharacteristic(f"{W}: negative coefficient at T^{k - h}")
        exps.extend([k - h] * coef)
    if not exps:
        raise NotRegular(f"{W}: empty characteristic function")
    return ExponentData(tuple(exps), len(exps), exps[0], exps.count(0))


def is_regular_fast(a: int, b: int, c: int, h: int) -> bool:
    """Cyclotomic multiplicity test: Phi_d divides the numerator at least as often as the denominator."""
    ws = (a, b, c)
    divisors = set()
    for w in ws:
        for d in range(2, w + 1):
            if w % d == 0:
                divisors.add(d)
    for d in divisors:
        down = sum(1 for w in ws if w % d == 0)
        up = sum(1 for w in ws if (h - w) % d == 0)
        if down > up:
            return False
    return True


def milnor_number(W: WeightSystem) -> Fraction:
    return Fraction((W.h - W.a) * (W.h - W.b) * (W.h - W.c), W.a * W.b * W.c)


def _pair_count(p: int, q: int, h: int) -> int:
    return sum(1 for u in range(h // p + 1) if (h - p * u) % q == 0)


def signature(W: WeightSystem) -> Signature:
    ws = (W.a, W.b, W.c)
    out: list[int] = []
    for w in ws:
        if W.h % w:
            out.append(w)
    for i in range(3):
        for j in range(i + 1, 3):
            m = _pair_count(ws[i], ws[j], W.h)
            out.extend([gcd(ws[i], ws[j])] * max(m - 1, 0))
    data = chi_series(W)
    return Signature(tuple(sorted(x for x in out if x != 1)), data.a0)


def dual_rank(W: WeightSystem) -> int:
    sig = signature(W)
    eps = W.a + W.b + W.c - W.h
    return sum(x - 1 for x in sig.alphas) + 2 * (1 - sig.a0) - eps


SEARCH_BOUND = 100


def enumerate_eps_minus1_genus0(bound: int = SEARCH_BOUND) -> list[WeightSystem]:
    """All regular (a,b,c;a+b+c+1) with a<=b<=c<=bound, gcd 1 and no zero exponent."""
    out = []
    for c in range(1, bound + 1):
        for b in range(1, c + 1):
            for a in range(1, b + 1):
                if gcd(gcd(a, b), c) != 1:
                    continue
                h = a + b + c + 1
                if not is_regular_fast(a, b, c, h):
                    continue
                W = WeightSystem(a, b, c, h)
                try:
                    data = chi_series(W)
                except NotRegular:
                    continue
                if data.a0 == 0:
                    out.append(W)
    out.sort(key=lambda w: (-w.h, w.a, w.b, w.c))
    return out


def analyze(W: WeightSystem) -> dict:
    """JSON-ready report of all invariants."""
    try:
        data = chi_series(W)
    except NotRegular as exc:
        return {"weights": [W.a, W.b, W.c, W.h], "regular": False, "reason": str(exc)}
    sig = signature(W)
    return {
        "weights": [W.a, W.b, W.c, W.h],
        "regular": True,
        "exponents": list(data.exponents),
        "mu": data.mu,
        "epsilon": data.epsilon,
        "a0": data.a0,
        "signature": list(sig.alphas),
        "dual_rank": dual_rank(W),
    }


def case_id(W: WeightSystem) -> str:
    return f"w-{W.a}-{W.b}-{W.c}-{W.h}"
