import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact import kernels, linalg
from artifact._ext import echelon_py

try:
    from artifact._ext import echelon_c
except ImportError:
    echelon_c = None

needs_c = pytest.mark.skipif(echelon_c is None, reason="compiled kernel not built")

rows = st.dictionaries(st.integers(0, 11), st.integers(-50, 50).filter(bool), min_size=1, max_size=8)
systems = st.lists(rows, max_size=14)


def naive_rank(rs, ncols):
    M = [[Fraction(r.get(j, 0)) for j in range(ncols)] for r in rs]
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                f = M[i][col] / M[rank][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


@settings(max_examples=150, deadline=None)
@given(systems)
def test_python_rank_matches_naive(rs):
    assert echelon_py.rank_of([dict(r) for r in rs], 12) == naive_rank(rs, 12)


@needs_c
@settings(max_examples=150, deadline=None)
@given(systems)
def test_backends_agree_on_rank(rs):
    assert echelon_c.rank_of([dict(r) for r in rs], 12) == echelon_py.rank_of([dict(r) for r in rs], 12)


@needs_c
@settings(max_examples=150, deadline=None)
@given(rows)
def test_backends_agree_on_normalize(r):
    assert echelon_c.normalize(dict(r)) == echelon_py.normalize(dict(r))


@needs_c
@settings(max_examples=100, deadline=None)
@given(systems, rows, st.integers(0, 12))
def test_backends_agree_on_reduce_row(rs, row, stop):
    pivots = {}
    for r in rs:
        res, _, _ = echelon_py.reduce_row(pivots, r, 12)
        if res:
            res = echelon_py.normalize(res)
            pivots[min(res)] = res
    assert echelon_c.reduce_row(pivots, dict(row), stop) == echelon_py.reduce_row(pivots, dict(row), stop)


@settings(max_examples=60, deadline=None)
@given(systems)
def test_nullspace_dimension(rs):
    ns = linalg.nullspace(rs, 12)
    assert len(ns) == 12 - linalg.rank(rs, 12)
    for v in ns:
        for r in rs:
            assert sum(c * v.get(j, 0) for j, c in r.items()) == 0


def test_backend_selection():
    assert kernels.BACKEND in ("cython", "python")
    env = dict(os.environ, ARTIFACT_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from artifact import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
