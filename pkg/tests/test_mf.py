from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact import data
from artifact import mf as M
from artifact.poly import ONE, parse_poly


def numeric_objects():
    out = []
    for cid in ("w-6-14-21-42", "w-2-2-5-10", "w-3-4-5-13"):
        c = data.load_case(cid)
        for n in c.factorizations():
            F = c.mf(n)
            out.append(F.specialize(c.defaults) if c.defaults else F)
    return out


OBJECTS = numeric_objects()


def test_validate_corpus_v0(e8):
    V0 = e8.mf("V0")
    M.validate(V0)
    assert [str(p) for p in V0.q0[0]][:1] == ["z"]


def test_validate_trivial(e8):
    assert M.is_valid(M.trivial(e8.W, e8.f))


def test_validate_rejects_bad_product(e8):
    F = M.MF(e8.W, e8.f, [[parse_poly("x")]], [[e8.f]], (0,), (e8.W.h,))
    with pytest.raises(M.ValidationError):
        M.validate(F)


def test_tau_basics(e8):
    V0 = e8.mf("V0")
    assert M.tau(V0, 0) == V0
    assert M.phase(M.tau(V0)) == M.phase(V0) + Fraction(2, 42)


def test_translation_basics(e8):
    V0 = e8.mf("V0")
    assert M.translate_T(V0, 2) == M.tau(V0, 42)
    assert M.phase(M.translate_T(V0)) == M.phase(V0) + 1
    Z = M.zero_object(e8.W, e8.f)
    assert M.is_zero_object(M.translate_T(Z))


@pytest.mark.parametrize("F", OBJECTS, ids=lambda F: F.name)
def test_functor_identities(F):
    t, T, tau = M.transpose_t, M.translate_T, M.tau
    assert T(F, 2) == tau(F, F.H)
    assert t(t(F)) == F
    assert tau(t(tau(F))) == t(F)
    assert T(t(T(F))) == t(F)
    assert M.is_zero_object(M.cone(M.identity(F)))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(OBJECTS), st.integers(-5, 5), st.integers(-3, 3))
def test_functor_identities_shifted(F, m, n):
    G = M.translate_T(M.tau(F, m), n)
    assert M.translate_T(G, -n) == M.tau(F, m)
    assert M.transpose_t(M.transpose_t(G)) == G
    assert M.tau(M.transpose_t(M.tau(G))) == M.transpose_t(G)
    assert M.phase(G) == M.phase(F) + Fraction(2 * m, F.H) + n


def test_cone_of_zero_map(ci_record):
    F, G = ci_record.objects["V0"], ci_record.objects["V1"]
    C = M.cone(M.zero_morphism(F, G))
    assert M.is_isomorphic(C, M.direct_sum(M.translate_T(F), G))


def test_reduce(ci_record, e8):
    assert M.reduce(M.trivial(e8.W, e8.f)).rank == 0
    F = ci_record.objects["V1"]
    R = M.reduce(M.direct_sum(F, M.trivial(F.ctx, F.f, 4)))
    assert R.rank == F.rank and M.is_isomorphic(R, F)
    assert M.reduce(R) == R


def test_hom_dims(ci_record):
    o = ci_record.objects
    assert M.hom_dim(o["V0"], o["V0"]) == 1
    assert M.hom_dim(o["V1"], o["V0"]) == 1
    assert M.hom_dim(o["V0"], o["V1"]) == 0
    assert M.hom_dim(o["Vbar1"], M.translate_T(o["V1"])) == 2


def test_hom_independent_of_representative(ci_record):
    o = ci_record.objects
    F = M.direct_sum(o["V1"], M.trivial(o["V1"].ctx, o["V1"].f, 2))
    assert M.hom_dim(F, o["V0"]) == M.hom_dim(M.reduce(F), o["V0"])


def test_spectrum_of_v0_reading(e8):
    # the middle entry carries the factor 2, like its neighbours
    W = e8.W
    eps = W.a + W.b + W.c - W.h
    sp = M.spectrum(e8.mf("V0"), e8.mf("V0"))
    doubled = sorted([Fraction(0)] + [Fraction(2 * (w - eps), W.h) for w in W.weights])
    single = sorted([Fraction(0), Fraction(2 * (W.a - eps), W.h), Fraction(W.b - eps, W.h), Fraction(2 * (W.c - eps), W.h)])
    assert sp == doubled
    assert sp != single


def test_spectrum_transpose_and_serre(ci_record):
    o = ci_record.objects
    F, G = o["V0"], o["V1"]
    p = M.spectrum(F, G)
    assert M.spectrum(M.transpose_t(G), M.transpose_t(F)) == p
    h = F.H
    assert M.spectrum(G, M.translate_T(F)) == sorted(1 + Fraction(2, h) - x for x in p)


def test_euler_chi(ci_record):
    o = ci_record.objects
    assert M.euler_chi(o["V0"], o["V0"]) == 1
    assert M.euler_chi(o["Vbar1"], o["V1"]) == -2
    for i in range(1, 6):
        assert M.euler_chi(o[f"V{i},2"], o["V1"]) == -1


def test_euler_chi_bilinear(ci_record):
    o = ci_record.objects
    F, G, H = o["V0"], o["V1,2"], o["V1"]
    assert M.euler_chi(M.direct_sum(F, G), H) == M.euler_chi(F, H) + M.euler_chi(G, H)


def test_phases(ci_record):
    o = ci_record.objects
    h = o["V0"].H
    assert M.phase(o["V0"]) == Fraction(-1, 2) - Fraction(1, h)
    assert M.phase(o["V1"]) == Fraction(-1, 2)
    for j in (1, 2):
        assert M.phase(o[f"V3,{j}"]) == Fraction(j - 1, h)


def test_e8_v0_phase(e8):
    assert M.phase(e8.mf("V0")) == Fraction(-22, 42)


def test_not_isomorphic_to_shift(ci_record):
    F = ci_record.objects["V0"]
    assert not M.is_isomorphic(F, M.tau(F))
    g = M.identity(F)
    assert M.is_null_homotopic(M.zero_morphism(F, F))
    assert not M.is_null_homotopic(g)
    gg = M.compose(g, g)
    assert (gg.g0, gg.g1) == (g.g0, g.g1)


def test_split_summand(ci_record):
    X, Z = ci_record.objects["V1"], ci_record.objects["V2,2"]
    assert M.is_isomorphic(M.split_summand(M.direct_sum(X, Z), X), Z)
    with pytest.raises(M.NotASummand):
        M.split_summand(ci_record.objects["V0"], X)


def test_parametric_requires_specialization():
    c = data.load_case("w-2-3-6-12")
    F = c.mf("V0")
    M.validate(F)
    with pytest.raises(M.ParametricInput):
        M.hom_dim(F, F)


def test_window_too_small(ci_record):
    F = ci_record.objects["V0"]
    with pytest.raises(M.WindowTooSmall):
        M.hom_table(F, F, ns=(0,), margin=Fraction(0))
