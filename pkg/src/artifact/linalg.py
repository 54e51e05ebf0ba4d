"""Exact sparse linear algebra over Q on top of the integer echelon kernel."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable

from . import kernels

SparseRow = dict  # column -> Fraction or int


def integral(row: SparseRow) -> dict:
    """Scale a rational sparse row to a primitive-free integer row (same line)."""
    den = 1
    for v in row.values():
        d = Fraction(v).denominator
        den = den * d // gcd(den, d)
    out = {}
    for k, v in row.items():
        v = Fraction(v) * den
        if v:
            out[k] = v.numerator
    return out


class Echelon:
    """Incremental row-echelon basis of a subspace of Q^n (columns < ``stop`` are pivotable)."""

    def __init__(self, stop: int) -> None:
        self.stop = stop
        self.pivots: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, row: SparseRow) -> tuple[dict, Fraction]:
        res, num, den = kernels.reduce_row(self.pivots, integral(row), self.stop)
        return res, Fraction(num, den)

    def add(self, row: SparseRow) -> bool:
        res, _ = self.reduce(row)
        if res and min(res) < self.stop:
            res = kernels.normalize(res)
            self.pivots[min(res)] = res
            return True
        return False

    def contains(self, row: SparseRow) -> bool:
        res, _ = self.reduce(row)
        return not res or min(res) >= self.stop


def rank(rows: Iterable[SparseRow], ncols: int) -> int:
    return kernels.rank_of([integral(r) for r in rows], ncols)


def nullspace(rows: Iterable[SparseRow], ncols: int) -> list[dict]:
    """Basis of {v : row·v = 0 for all rows}, one vector per free column (ascending)."""
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    piv = ech.pivots
    order = sorted(piv, reverse=True)
    basis = []
    for free in range(ncols):
        if free in piv:
            continue
        x: dict[int, Fraction] = {free: Fraction(1)}
        for p in order:
            if p > free:
                continue
            row = piv[p]
            acc = Fraction(0)
            for k, v in row.items():
                if k != p:
                    xv = x.get(k)
                    if xv:
                        acc += v * xv
            if acc:
                x[p] = -acc / row[p]
        basis.append(x)
    return basis


def solve_in_span(generators: list[SparseRow], target: SparseRow, ncols: int) -> list[Fraction] | None:
    """Coefficients c with sum c_i g_i = target, or None. Uses tag columns after ``ncols``."""
    ech = Echelon(ncols)
    for i, g in enumerate(generators):
        row = dict(g)
        row[ncols + i] = 1
        ech.add(row)
    res, scale = ech.reduce(target)
    if res and min(res) < ncols:
        return None
    out = [Fraction(0)] * len(generators)
    for k, v in res.items():
        out[k - ncols] = Fraction(-v) / scale
    return out


def solve_affine(rows: Iterable[SparseRow], nvars: int) -> tuple[dict | None, list[dict]]:
    """Solve sum a_k x_k + a_rhs = 0 where column ``nvars`` holds a_rhs.

    Returns (particular solution or None if inconsistent, nullspace basis).
    """
    ech = Echelon(nvars)
    inconsistent = False
    for r in rows:
        res, _ = ech.reduce(r)
        if not res:
            continue
        if min(res) >= nvars:
            inconsistent = True
            continue
        res = kernels.normalize(res)
        ech.pivots[min(res)] = res
    if inconsistent:
        return None, []
    piv = ech.pivots
    order = sorted(piv, reverse=True)

    def back(x: dict) -> dict:
        for p in order:
            row = piv[p]
            acc = Fraction(0)
            for k, v in row.items():
                if k != p:
                    xv = x.get(k)
                    if xv:
                        acc += v * xv
            if acc:
                x[p] = -acc / row[p]
        return x

    particular = back({nvars: Fraction(1)})
    particular.pop(nvars, None)
    null = [back({free: Fraction(1)}) for free in range(nvars) if free not in piv]
    return particular, null
