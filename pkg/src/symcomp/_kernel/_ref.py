"""Pure-Python twin of the elimination kernel.

Rows are (cols, vals) pairs of parallel lists with cols strictly increasing
and vals nonzero integers.  The compiled twin in ``_core.pyx`` implements the
same algorithm with the same tie-breaking, so both backends produce identical
output.
"""

from math import gcd

BACKEND = "pure"


def _combine(pv, rcols, rvals, f, pcols, pvals, prev):
    # (pv * r - f * p) / prev, merging two sorted sparse rows.
    out_c = []
    out_v = []
    i = 0
    j = 0
    ni = len(rcols)
    nj = len(pcols)
    while i < ni or j < nj:
        if j >= nj or (i < ni and rcols[i] < pcols[j]):
            num = pv * rvals[i]
            c = rcols[i]
            i += 1
        elif i >= ni or pcols[j] < rcols[i]:
            num = -f * pvals[j]
            c = pcols[j]
            j += 1
        else:
            num = pv * rvals[i] - f * pvals[j]
            c = rcols[i]
            i += 1
            j += 1
        if num:
            q, rem = divmod(num, prev)
            if rem:
                raise ArithmeticError("fraction-free elimination: inexact division")
            out_c.append(c)
            out_v.append(q)
    return out_c, out_v


def _scale(pv, cols, vals, prev):
    out_v = []
    for v in vals:
        q, rem = divmod(pv * v, prev)
        if rem:
            raise ArithmeticError("fraction-free elimination: inexact division")
        out_v.append(q)
    return list(cols), out_v


def echelon(rows, ncols):
    """Fraction-free (Bareiss) forward elimination on sparse integer rows.

    Returns (pivot_cols, pivot_rows); pivot_cols is strictly increasing and
    pivot_rows[i] has leading column pivot_cols[i].  Pivot rows are reduced to
    primitive (gcd 1) form on output.
    """
    work = [(list(c), list(v)) for c, v in rows if c]
    piv_cols = []
    piv_rows = []
    prev = 1
    while work:
        c = min(r[0][0] for r in work)
        best = -1
        best_len = 0
        for idx, r in enumerate(work):
            if r[0][0] == c and (best < 0 or len(r[0]) < best_len):
                best = idx
                best_len = len(r[0])
        pcols, pvals = work.pop(best)
        pv = pvals[0]
        nxt = []
        for rcols, rvals in work:
            if rcols[0] == c:
                nr = _combine(pv, rcols, rvals, rvals[0], pcols, pvals, prev)
            else:
                nr = _scale(pv, rcols, rvals, prev)
            if nr[0]:
                nxt.append(nr)
        g = 0
        for v in pvals:
            g = gcd(g, v)
        if g > 1:
            pvals = [v // g for v in pvals]
        if pvals[0] < 0:
            pvals = [-v for v in pvals]
        piv_cols.append(c)
        piv_rows.append((pcols, pvals))
        prev = pv
        work = nxt
    return piv_cols, piv_rows
