"""Acceptance battery: one PASS/FAIL line per criterion.

Run directly with ``python tests/test_acceptance.py`` or through pytest.
"""

import sys

import pytest

from artifact import acceptance

CRITERIA = [n for n, _, _ in acceptance.CRITERIA]


@pytest.fixture(scope="module")
def results():
    return {r.criterion: r for r in acceptance.run()}


@pytest.mark.parametrize("n", CRITERIA)
def test_criterion(n, results, capsys):
    r = results[n]
    with capsys.disabled():
        sys.stdout.write("\n" + r.line() + "\n")
    assert r.ok, r.detail


if __name__ == "__main__":
    rs = acceptance.run()
    for r in rs:
        print(r.line())
    sys.exit(0 if all(r.ok for r in rs) else 1)
