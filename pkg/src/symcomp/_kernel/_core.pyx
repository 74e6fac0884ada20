# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled twin of the elimination kernel.

Mirrors ``_ref.echelon`` exactly: fraction-free (Bareiss) forward elimination
on sparse integer rows, same pivoting and tie-breaking, identical output.
Values stay arbitrary-precision Python ints; the compiled loops remove the
interpreter overhead of the row merges, which dominate the running time.
"""

from math import gcd

BACKEND = "compiled"


cdef tuple _combine(object pv, list rcols, list rvals, object f,
                    list pcols, list pvals, object prev):
    cdef list out_c = []
    cdef list out_v = []
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t ni = len(rcols), nj = len(pcols)
    cdef long c
    cdef object num, q, rem
    while i < ni or j < nj:
        if j >= nj or (i < ni and <long>rcols[i] < <long>pcols[j]):
            num = pv * rvals[i]
            c = <long>rcols[i]
            i += 1
        elif i >= ni or <long>pcols[j] < <long>rcols[i]:
            num = -f * pvals[j]
            c = <long>pcols[j]
            j += 1
        else:
            num = pv * rvals[i] - f * pvals[j]
            c = <long>rcols[i]
            i += 1
            j += 1
        if num:
            q, rem = divmod(num, prev)
            if rem:
                raise ArithmeticError("fraction-free elimination: inexact division")
            out_c.append(c)
            out_v.append(q)
    return out_c, out_v


cdef tuple _scale(object pv, list cols, list vals, object prev):
    cdef list out_v = []
    cdef object v, q, rem
    for v in vals:
        q, rem = divmod(pv * v, prev)
        if rem:
            raise ArithmeticError("fraction-free elimination: inexact division")
        out_v.append(q)
    return list(cols), out_v


def echelon(rows, ncols):
    """Fraction-free (Bareiss) forward elimination on sparse integer rows."""
    cdef list work = []
    for entry in rows:
        if entry[0]:
            work.append((list(entry[0]), list(entry[1])))
    cdef list piv_cols = []
    cdef list piv_rows = []
    cdef object prev = 1
    cdef object pv, g, v
    cdef list nxt, pcols, pvals, rcols, rvals
    cdef tuple nr, row
    cdef Py_ssize_t idx, best, n
    cdef long c, first
    cdef Py_ssize_t best_len
    while len(work) > 0:
        c = <long>(<list>(<tuple>work[0])[0])[0]
        n = len(work)
        for idx in range(1, n):
            first = <long>(<list>(<tuple>work[idx])[0])[0]
            if first < c:
                c = first
        best = -1
        best_len = 0
        for idx in range(n):
            row = <tuple>work[idx]
            if <long>(<list>row[0])[0] == c:
                if best < 0 or len(<list>row[0]) < best_len:
                    best = idx
                    best_len = len(<list>row[0])
        row = <tuple>work[best]
        del work[best]
        pcols = <list>row[0]
        pvals = <list>row[1]
        pv = pvals[0]
        nxt = []
        for idx in range(len(work)):
            row = <tuple>work[idx]
            rcols = <list>row[0]
            rvals = <list>row[1]
            if <long>rcols[0] == c:
                nr = _combine(pv, rcols, rvals, rvals[0], pcols, pvals, prev)
            else:
                nr = _scale(pv, rcols, rvals, prev)
            if len(<list>nr[0]) > 0:
                nxt.append(nr)
        g = 0
        for v in pvals:
            g = gcd(g, v)
        if g > 1:
            pvals = [v // g for v in pvals]
        if <object>pvals[0] < 0:
            pvals = [-v for v in pvals]
        piv_cols.append(c)
        piv_rows.append((pcols, pvals))
        prev = pv
        work = nxt
    return piv_cols, piv_rows
