"""The plane configuration cell model and its colored quotients."""

import itertools
from fractions import Fraction

import pytest

from symcomp.exactlin import ChainComplex, QMatrix, rank
from symcomp.partitions import parse
from symcomp.planecells import (
    boundary,
    cells,
    colored_complex,
    compact_betti,
    configuration_complex,
    label_action,
    relabel,
    young_labels,
)


def test_cell_counts():
    # n! 2^{n-1} cells in total; by dimension n + m the count is n! C(n-1, m-1)
    from math import comb, factorial

    for n in range(1, 5):
        by_dim = cells(n)
        assert sum(len(v) for v in by_dim.values()) == factorial(n) * 2 ** (n - 1)
        for m in range(1, n + 1):
            assert len(by_dim[n + m]) == factorial(n) * comb(n - 1, m - 1)


def test_boundary_squares_to_zero():
    # the complex constructor verifies d∘d = 0; build through n = 4
    for n in range(1, 5):
        configuration_complex(n)


def test_two_point_boundary_values():
    c, pos = configuration_complex(2)
    cell = ((1,), (2,))
    faces = boundary(cell)
    assert sorted(faces) == [(-1, ((2, 1),)), (1, ((1, 2),))]


def test_ordered_betti_match_known_values():
    # F(plane, n) has Poincare polynomial (1+t)(1+2t)...(1+(n-1)t); the model
    # computes compact-support degrees, dual under 2n - i
    known = {
        1: [1],
        2: [1, 1],
        3: [1, 3, 2],
        4: [1, 6, 11, 6],
    }
    for n, betti in known.items():
        lam = parse("+".join(str(i) for i in range(1, n + 1))) if n > 1 else parse("1")
        got = compact_betti(lam)  # all colors distinct: ordered configurations
        for i, b in enumerate(betti):
            assert got[2 * n - i] == b
        assert sum(got) == sum(betti)


def test_unordered_betti_are_circle_like():
    # unordered configurations of the plane have the rational homology of a
    # circle for n >= 2
    for n in range(2, 5):
        lam = parse("+".join(["1"] * n))
        got = compact_betti(lam)
        assert got[2 * n] == 1
        assert got[2 * n - 1] == 1
        assert sum(got) == 2


def test_two_model_agreement_for_unordered_pair():
    # independent model: the quotient is homotopy circle; a simplicial circle
    # has b = (1, 1), and duality on the 4-dimensional quotient places them
    # in compact-support degrees 4 and 3
    d1 = QMatrix.from_dense([[-1, 0, 1], [1, -1, 0], [0, 1, -1]])
    circle = ChainComplex({0: 3, 1: 3}, {1: d1}, -1)
    hom = circle.homology()
    got = compact_betti(parse("1+1"))
    assert got[4 - 0] == hom[0]
    assert got[4 - 1] == hom[1]


def test_colored_three_points():
    # two indistinguishable points of one color and one of another: the
    # forgetful fibration over the two-point stratum gives chi = 0, and the
    # model must agree with the alternating sum of the ordered model over
    # coset size (Euler characteristic is multiplicative under free quotients)
    got = compact_betti(parse("1+1+2"))
    ordered = compact_betti(parse("1+2+3"))
    chi_got = sum((-1) ** i * b for i, b in enumerate(got))
    chi_ord = sum((-1) ** i * b for i, b in enumerate(ordered))
    assert chi_ord == 2 * chi_got  # quotient by a free action of order 2


def test_duality_sanity_bounds():
    # top compact-support Betti is 1 (connected orientable quotient), and
    # everything below dimension - (n-1) vanishes
    for text in ("1", "1+1", "1+2", "1+1+2", "2+2", "1+1+1+1", "1+2+2"):
        lam = parse(text)
        n = lam.cardinality
        got = compact_betti(lam)
        assert got[2 * n] == 1
        for i in range(0, 2 * n - (n - 1)):
            if i < len(got):
                assert got[i] == 0, (text, i)


def test_group_action_is_free_and_signfree():
    n = 3
    _, pos = configuration_complex(n)
    for perm in itertools.permutations(range(1, n + 1)):
        if perm == (1, 2, 3):
            continue
        for d, table in pos.items():
            for cell in table:
                assert relabel(cell, perm) != cell


def test_label_action_validates():
    c, _ = configuration_complex(3)
    act = label_action(3, [1, 2])
    act.validate(c)
    assert act.order() == 6


def test_young_labels():
    assert young_labels(parse("1+1+2")) == [[1, 2], [3]]
    assert young_labels(parse("2+2")) == [[1, 2]]
    assert young_labels(parse("1+2+3")) == [[1], [2], [3]]
    assert young_labels(parse("1+1+2+2+3")) == [[1, 2], [3, 4], [5]]


def test_colored_complex_dims_count_orbits():
    # the action is free on cells, so each degree has (cell count)/|group|
    # classes
    lam = parse("1+1+1")
    cc = colored_complex(lam)
    raw, _ = configuration_complex(3)
    for d in raw.degrees:
        assert cc.dim(d) * 6 == raw.dim(d)
