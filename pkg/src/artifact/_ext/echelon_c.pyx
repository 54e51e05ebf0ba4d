# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse integer echelon kernel; semantics mirror echelon_py."""

from math import gcd


cpdef object content(dict row):
    cdef object g = 0
    cdef object v
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


cpdef tuple reduce_row(dict pivots, dict row, Py_ssize_t stop):
    cdef dict r = dict(row)
    cdef dict p
    cdef object num = 1, den = 1, a, b, g, ma, mb, v, w, k
    cdef Py_ssize_t c
    while r:
        c = min(r)
        if c >= stop:
            break
        p = pivots.get(c)
        if p is None:
            break
        a = r[c]
        b = p[c]
        g = gcd(a, b)
        ma = b // g
        mb = a // g
        if ma != 1:
            for k in list(r):
                r[k] = r[k] * ma
            num = num * ma
        for k, v in p.items():
            w = r.get(k, 0) - mb * v
            if w:
                r[k] = w
            else:
                r.pop(k, None)
        g = content(r)
        if g > 1:
            for k in list(r):
                r[k] = r[k] // g
            den = den * g
    g = gcd(num, den)
    return r, num // g, den // g


cpdef dict normalize(dict row):
    cdef object g = content(row)
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        return {k: v // g for k, v in row.items()}
    return row


cpdef Py_ssize_t rank_of(list rows, Py_ssize_t ncols):
    cdef dict pivots = {}
    cdef dict res
    for r in rows:
        res = reduce_row(pivots, r, ncols)[0]
        if res and min(res) < ncols:
            res = normalize(res)
            pivots[min(res)] = res
    return len(pivots)
