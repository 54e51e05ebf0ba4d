from fractions import Fraction

import pytest

from artifact import quiver as Q
from artifact import weights as Wt
from artifact.poly import WeightContext

SYSTEMS = Wt.enumerate_eps_minus1_genus0()


def idx(q, v):
    return q.vertices.index(v)


def test_chi_entries_delta_w():
    chi = Q.build_chi_from_homs((2, 3, 7), "W")
    q = Q.quiver((2, 3, 7), "W")
    assert all(chi[i][i] == 1 for i in range(len(chi)))
    assert chi[idx(q, "vbar1")][idx(q, "v1")] == -2
    for v in ("v1,2", "v2,2", "v3,2"):
        assert chi[idx(q, v)][idx(q, "v1")] == -1


def test_c_entries():
    q = Q.quiver((2, 2, 2, 2, 2), "W")
    assert q.C[idx(q, "vbar1")][idx(q, "v1")] == 2
    qt = Q.quiver((2, 2, 2, 2, 2), "T")
    assert qt.C[idx(qt, "vbar1")][idx(qt, "v1")] == -2
    assert q.C[idx(q, "v1,2")][idx(q, "vbar1")] == -1


def test_variant_shapes():
    qt = Q.quiver((2, 3, 7), "T")
    assert len(qt.vertices) == 12
    dotted = [a for a in qt.arrows if a[2] < 0]
    assert sorted(a[0] for a in dotted) == ["v1,2", "v2,2", "v3,2"]
    assert all(a[1] == "v1" for a in dotted)
    qp = Q.quiver((2, 3, 7), "prime")
    dotted = [a for a in qp.arrows if a[2] < 0]
    assert dotted == [("vbar1", "v1", -1)] * 2
    for q in (qt, qp):
        assert all(x >= 0 for row in q.chi for x in row)


@pytest.mark.parametrize("variant", Q.VARIANTS)
def test_chi_is_inverse_of_c(variant):
    q = Q.quiver((2, 4, 5), variant)
    n = len(q.vertices)
    assert Q.mat_mul(q.C, q.chi) == Q.identity(n)
    assert Q.build_chi_from_homs((2, 4, 5), variant) == q.chi


def test_e8_coxeter():
    W = WeightContext(6, 14, 21, 42)
    cd = Q.coxeter_for_case(W)
    assert cd.order == 42
    assert sorted(cd.inertia, reverse=True) == [10, 2, 0] and cd.inertia[1] == 0
    assert sorted(cd.eigen_angles) == sorted(Q.exponent_angles(W))


@pytest.mark.parametrize("W", SYSTEMS, ids=Wt.case_id)
def test_coxeter_all(W):
    sig = Wt.signature(W)
    cd = Q.coxeter_for_case(W)
    c = cd.matrix
    n = len(c)
    assert Q.matrix_order(c, W.h) is not None and W.h % cd.order == 0
    assert cd.det in (1, -1)
    assert all(W.h % d == 0 for d in cd.cyclotomic)
    p, z, m = cd.inertia
    nu = Q.nu(W)
    assert z == 0 and sorted((p, m)) == sorted((nu - 2, 2)) and n == nu
    assert sum(k for k in cd.cyclotomic.values()) >= 1
    if len(sig.alphas) == 3:
        assert nu == Wt.dual_rank(W)


def test_char_poly_product_of_cyclotomics():
    W = WeightContext(2, 2, 5, 10)
    cd = Q.coxeter_for_case(W)
    prod = [1]
    for d, k in cd.cyclotomic.items():
        for _ in range(k):
            prod = Wt._pmul(prod, Q.cyclotomic(d))
    assert prod == cd.char_poly


def test_k0_identity_rearrangement():
    # c = -C tC^{-1} rearranges to [tau E] + [E] = sum(-C_ij [tau E_j] - C_ji [E_j])
    q = Q.quiver((2, 3, 7), "W")
    C = q.C
    Ct = Q.transpose(C)
    c = Q.coxeter_matrix(C)
    lhs = Q.mat_mul(c, Ct)
    assert lhs == [[-x for x in row] for row in C]


def test_duality_scan():
    rep = Q.duality_scan()
    assert rep["systems"] == 14 and len(rep["pairs"]) == 14 and rep["covers_all"] and rep["involution"]
    pairs = {p["case"]: p["dual"] for p in rep["pairs"]}
    assert pairs["w-6-14-21-42"] == "w-6-14-21-42"
    assert all(pairs[pairs[k]] == k for k in pairs)
    assert Q.duality_scan() == rep


def test_non_invertible():
    with pytest.raises(Q.NonInvertibleC):
        Q.inverse([[1, 1], [1, 1]])


def test_exact_inverse():
    assert Q.inverse([[2, 1], [1, 1]]) == [[Fraction(1), Fraction(-1)], [Fraction(-1), Fraction(2)]]
