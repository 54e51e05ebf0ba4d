from fractions import Fraction

import pytest

from artifact import weights as Wt
from artifact.poly import WeightContext


def W(*v):
    return WeightContext(*v)


def test_e8_invariants():
    d = Wt.chi_series(W(6, 14, 21, 42))
    assert d.epsilon == -1 and d.mu == 12 and d.a0 == 0
    assert d.mu == Fraction(36 * 28 * 21, 6 * 14 * 21)


def test_elliptic_sanity():
    d = Wt.chi_series(W(1, 1, 1, 3))
    assert d.epsilon == 0


def test_gcd_rejected():
    with pytest.raises(ValueError):
        W(2, 2, 2, 4)


def test_not_regular():
    with pytest.raises(Wt.NotRegular):
        Wt.chi_series(W(2, 3, 5, 11))


@pytest.mark.parametrize(
    "w, sig",
    [((6, 14, 21, 42), (2, 3, 7)), ((2, 6, 9, 18), (2, 2, 2, 3)), ((2, 2, 5, 10), (2, 2, 2, 2, 2))],
)
def test_signature(w, sig):
    assert Wt.signature(W(*w)).alphas == sig


def test_dual_rank():
    assert Wt.dual_rank(W(6, 14, 21, 42)) == 12
    assert Wt.dual_rank(W(2, 2, 5, 10)) == 8


def test_enumeration():
    found = Wt.enumerate_eps_minus1_genus0()
    ids = [(w.a, w.b, w.c, w.h) for w in found]
    assert len(ids) == 22
    assert (3, 4, 5, 13) in ids
    assert (1, 1, 1, 4) not in ids


def test_enumeration_deterministic():
    assert Wt.enumerate_eps_minus1_genus0() == Wt.enumerate_eps_minus1_genus0()


@pytest.mark.parametrize("w", Wt.enumerate_eps_minus1_genus0(), ids=Wt.case_id)
def test_invariants_all_22(w):
    d = Wt.chi_series(w)
    assert d.mu == Fraction((w.h - w.a) * (w.h - w.b) * (w.h - w.c), w.a * w.b * w.c)
    assert d.epsilon == w.a + w.b + w.c - w.h
    sig = Wt.signature(w)
    assert Wt.dual_rank(w) == 3 + sum(a - 1 for a in sig.alphas)
    # exponents are symmetric about h/2
    assert sorted(d.exponents) == sorted(w.h - m for m in d.exponents)


def test_literal_symmetry_does_not_hold():
    # the multiset is not symmetric under m -> a+b+c-m; the acceptance suite reports this
    w = W(6, 14, 21, 42)
    ex = Wt.chi_series(w).exponents
    assert sorted(ex) != sorted(w.a + w.b + w.c - m for m in ex)


def test_analyze_report():
    rep = Wt.analyze(W(6, 14, 21, 42))
    assert rep["signature"] == [2, 3, 7] and rep["regular"] and rep["mu"] == 12
