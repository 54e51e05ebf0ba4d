"""Pure-Python sparse integer echelon kernel.

Rows are dicts ``{column: int}``. A pivot table maps a column to a primitive row whose
smallest column is that column and whose leading coefficient is positive.
"""

from math import gcd


def content(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def reduce_row(pivots, row, stop):
    """Eliminate leading columns below ``stop`` against ``pivots``.

    Returns ``(residual, num, den)`` with ``residual = (num/den)*row - (combination of pivots)``.
    Stops when the leading column is below ``stop`` but has no pivot, or when every
    column below ``stop`` is cleared.
    """
    row = dict(row)
    num, den = 1, 1
    while row:
        c = min(row)
        if c >= stop:
            break
        p = pivots.get(c)
        if p is None:
            break
        a = row[c]
        b = p[c]
        g = gcd(a, b)
        ma, mb = b // g, a // g
        if ma != 1:
            for k in row:
                row[k] *= ma
            num *= ma
        for k, v in p.items():
            w = row.get(k, 0) - mb * v
            if w:
                row[k] = w
            else:
                row.pop(k, None)
        g = content(row)
        if g > 1:
            for k in row:
                row[k] //= g
            den *= g
    g = gcd(num, den)
    return row, num // g, den // g


def normalize(row):
    g = content(row)
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


def rank_of(rows, ncols):
    pivots = {}
    for r in rows:
        res, _, _ = reduce_row(pivots, r, ncols)
        if res and min(res) < ncols:
            res = normalize(res)
            pivots[min(res)] = res
    return len(pivots)
