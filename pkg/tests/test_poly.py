from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.poly import (
    ONE,
    ZERO,
    ParseError,
    Polynomial,
    WeightContext,
    euler_degree,
    format_poly,
    graded_piece_basis,
    is_homogeneous,
    parse_poly,
    specialize,
)

E8 = WeightContext(6, 14, 21, 42)


def test_euler_degree_of_potential():
    assert euler_degree(parse_poly("x^7+y^3+z^2"), E8) == 2 * 42


def test_euler_degree_constant():
    assert euler_degree(ONE, E8) == 0


def test_euler_degree_xy():
    # 2(6+14)/42 = 20/21, numerator 40 in units of 1/h
    assert euler_degree(parse_poly("x*y"), E8) == 40
    assert Fraction(euler_degree(parse_poly("x*y"), E8), 42) == Fraction(20, 21)


def test_graded_piece_small():
    assert graded_piece_basis(12, E8) == [(1, 0, 0, 0, 0)]
    assert graded_piece_basis(0, E8) == [(0, 0, 0, 0, 0)]


def test_graded_piece_brute_force():
    got = set(graded_piece_basis(84, E8))
    want = {
        (i, j, k, 0, 0)
        for i, j, k in product(range(8), range(4), range(3))
        if 6 * i + 14 * j + 21 * k == 42
    }
    assert got == want


@pytest.mark.parametrize("W", [E8, WeightContext(3, 4, 5, 13), WeightContext(2, 2, 5, 10)])
def test_graded_piece_generating_function(W):
    # coefficients of prod 1/(1 - T^a_i) as an independent oracle
    N = 60
    coef = [1] + [0] * N
    for a in W.weights:
        for d in range(a, N + 1):
            coef[d] += coef[d - a]
    for d in range(N + 1):
        assert len(graded_piece_basis(2 * d, W)) == coef[d]


def test_specialize_examples():
    x, y, z, l1 = (Polynomial.var(v) for v in ("x", "y", "z", "l1"))
    f = y * (y - x**3) * (y - l1 * x**3) + z**2
    assert specialize(f, {"l1": 2}) == y * (y - x**3) * (y - 2 * x**3) + z**2
    h = parse_poly("x^2+y")
    assert specialize(h, {}) == h
    assert specialize(parse_poly("l1*x-l2*x"), {"l1": 2, "l2": 2}) == ZERO


def test_parse_rational_and_errors():
    p = parse_poly("-3/2*x^2*y + l2 - 1")
    assert p.terms[(2, 1, 0, 0, 0)] == Fraction(-3, 2)
    with pytest.raises(ParseError):
        parse_poly("x^^2")
    with pytest.raises(ParseError):
        parse_poly("w")


def test_homogeneity():
    assert is_homogeneous(parse_poly("x^7+y^3+z^2"), E8, 84)
    assert not is_homogeneous(parse_poly("x+y"), E8, 12)


monos = st.tuples(*(st.integers(0, 3) for _ in range(3)), st.integers(0, 1), st.integers(0, 1))
polys = st.dictionaries(monos, st.fractions(max_denominator=5).filter(bool), max_size=5).map(Polynomial)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p + ZERO == p and p * ONE == p
    assert p - p == ZERO


@settings(max_examples=60, deadline=None)
@given(polys)
def test_round_trip(p):
    assert parse_poly(format_poly(p)) == p


hmonos = st.tuples(st.integers(0, 4), st.integers(0, 2), st.integers(0, 1))


@settings(max_examples=40, deadline=None)
@given(hmonos, hmonos)
def test_degree_additive(e1, e2):
    p = Polynomial.monomial(e1 + (0, 0))
    q = Polynomial.monomial(e2 + (0, 0))
    assert euler_degree(p * q, E8) == euler_degree(p, E8) + euler_degree(q, E8)
