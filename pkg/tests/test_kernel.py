"""Twin-consistency and correctness of the elimination kernel."""

import random
from fractions import Fraction

import pytest

from symcomp import _kernel
from symcomp._kernel import _ref, load_backend
from symcomp.exactlin import QMatrix, rank


def dense_rank_oracle(entries, rows, cols):
    """Plain Gaussian elimination over Fraction, independent of the kernel."""
    m = [[Fraction(0)] * cols for _ in range(rows)]
    for (i, j), v in entries.items():
        m[i][j] = Fraction(v)
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def random_entries(rng, rows, cols, density=0.45):
    ent = {}
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                ent[(i, j)] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return {k: v for k, v in ent.items() if v}


def test_rank_against_dense_oracle():
    rng = random.Random(11)
    for _ in range(40):
        rows, cols = rng.randint(1, 12), rng.randint(1, 12)
        ent = random_entries(rng, rows, cols)
        m = QMatrix(rows, cols, ent)
        assert rank(m) == dense_rank_oracle(ent, rows, cols)


def test_echelon_rows_span_and_pivots():
    rng = random.Random(5)
    for _ in range(20):
        rows, cols = rng.randint(1, 10), rng.randint(1, 10)
        ent = random_entries(rng, rows, cols)
        m = QMatrix(rows, cols, ent)
        piv, out = _kernel.echelon(
            [(sorted(r), [int(r[c] * 12) for c in sorted(r)]) for r in
             [{j: v for (i2, j), v in ent.items() if i2 == i} for i in range(rows)]
             if r],
            cols,
        )
        assert piv == sorted(piv)
        for c, (rc, rv) in zip(piv, out):
            assert rc[0] == c
            assert all(v != 0 for v in rv)


def test_backends_agree():
    compiled = load_backend("compiled")
    if compiled is None:
        pytest.skip("compiled kernel not built")
    rng = random.Random(3)
    for _ in range(30):
        rows, cols = rng.randint(1, 10), rng.randint(1, 10)
        int_rows = []
        for i in range(rows):
            cs = sorted(rng.sample(range(cols), rng.randint(0, cols)))
            vs = [rng.randint(-9, 9) or 1 for _ in cs]
            int_rows.append((cs, vs))
        a = compiled.echelon([(list(c), list(v)) for c, v in int_rows], cols)
        b = _ref.echelon([(list(c), list(v)) for c, v in int_rows], cols)
        assert a == b


def test_inexact_division_never_triggers():
    # Bareiss divisibility holds for any pivot order; a large randomized run
    # would raise ArithmeticError on a violation.
    rng = random.Random(17)
    for _ in range(60):
        rows, cols = rng.randint(2, 14), rng.randint(2, 14)
        int_rows = []
        for i in range(rows):
            cs = sorted(rng.sample(range(cols), rng.randint(1, cols)))
            vs = [rng.randint(-30, 30) or 7 for _ in cs]
            int_rows.append((cs, vs))
        _ref.echelon(int_rows, cols)
