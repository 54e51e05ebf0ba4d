import json
from collections import Counter
from fractions import Fraction

import pytest

from artifact import data as D
from artifact import mf as M
from artifact.poly import euler_degree, parse_poly
from artifact.weights import case_id, enumerate_eps_minus1_genus0, signature

CASES = D.load_corpus()


def test_corpus_size_and_headers():
    assert len(CASES) == 22
    want = {case_id(W): signature(W).alphas for W in enumerate_eps_minus1_genus0()}
    assert {c.id: c.A.alphas for c in CASES} == want


def test_grading_expansion_e8():
    s, sbar, hphi = D.expand_grading("(8,22)_{-22}")
    assert sorted(s) == sorted([8 - 22, -8 - 22, 22 - 22, -22 - 22]) and s == sbar and hphi == -22
    rec = D.load_case("w-6-14-21-42").objects["V0"]
    assert Counter(rec.s) == Counter(int(v) for v in s)


def test_literal_and_mixed_brackets():
    s, sbar, hphi = D.expand_grading("[7,-1,-3,-3;3,3,1,-7]_{-7}")
    assert s == [0, -8, -10, -10] and sbar == [-4, -4, -6, -14]
    s, _, _ = D.expand_grading("(1^2,7)_{-5}")
    assert sorted(s) == [-12, -6, -6, -4, -4, 2]


def test_repeated_arms():
    c = D.load_case("w-3-4-4-12")
    assert c.A.alphas == (4, 4, 4)
    for j in (2, 3, 4):
        assert len({c.objects[f"V{i},{j}"].printed for i in (1, 2, 3)}) == 1


@pytest.mark.parametrize("c", CASES, ids=lambda c: c.id)
def test_object_names_cover_collection(c):
    for i, a in enumerate(c.A.alphas, 1):
        for j in range(2, a + 1):
            assert f"V{i},{j}" in c.objects, (c.id, i, j)
    assert {"V0", "V1", "Vbar1"} <= set(c.objects)
    for rec in c.objects.values():
        assert len(rec.s) == len(rec.sbar) == rec.rank


@pytest.mark.parametrize("c", CASES, ids=lambda c: c.id)
def test_round_trip(c):
    fn = f"{c.id}.json"
    text = D.read_case_text(fn)
    assert D.dumps(D.case_to_json(D.case_from_json(json.loads(text)))) == text


@pytest.mark.parametrize("c", CASES, ids=lambda c: c.id)
def test_errata_are_homogeneous(c):
    for e in c.errata:
        F = c.mf(e.object)
        blk = 0 if e.block == "q0" else 1
        p = parse_poly(e.corrected)
        if p:
            assert euler_degree(p, c.W) == M.expected_degree(F, blk, e.row, e.col), (c.id, e)


def test_overlay_verification():
    rep = D.verify_corpus()
    assert rep["ok"] and rep["failures"] == 0 and rep["grading_failures"] == 0
    assert rep["factorizations"] >= 100


def test_raw_verification_flags_documented_typos():
    rep = D.verify_case(D.load_case("w-3-5-6-15"), raw=True)
    assert any(f["object"] == "Vbar1" for f in rep["failures"])
    raw = D.verify_corpus(raw=True)
    assert raw["failures"] > 0 and not raw["ok"]


def test_raw_v0_parameter_free():
    c = D.load_case("w-6-14-21-42")
    M.validate(c.mf("V0", raw=True))


def test_grading_erratum_recorded():
    c = D.load_case("w-3-4-5-13")
    (g,) = c.grading_errata
    assert g.object == "V2,2" and g.corrected == "(3,5,7;0,2,4)_1"
    assert D.grading_check(c, "V2,2", raw=True) is not None
    assert D.grading_check(c, "V2,2") is None


def test_replacements_verified():
    for cid in ("w-3-5-9-18", "w-4-5-10-20"):
        c = D.load_case(cid)
        assert [r.object for r in c.replacements] == ["Vbar1"]
        assert D.verify_replacement(c, "Vbar1")


def test_phase_subscripts():
    for c in CASES:
        for name, rec in c.objects.items():
            if rec.hphi is None:
                continue
            s, sbar = c.grading(name)
            assert Fraction(sum(s) + sum(sbar), 2 * len(s)) == rec.hphi, (c.id, name)


def test_unknown_case():
    with pytest.raises(KeyError):
        D.load_case("w-1-1-1-3")
