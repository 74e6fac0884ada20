"""Stability windows, class validation and puncturing."""

from fractions import Fraction

import pytest

from symcomp.ranges import (
    CLOSED_SURFACE_CAVEAT,
    InvalidManifoldClassError,
    ManifoldClass,
    PLANE,
    integral_surface_range,
    puncture,
    range_caveats,
    stability_range,
    stabilization_defined,
    theorem_range,
)


def test_window_values():
    mc = ManifoldClass(dim=3, orientable=True, open_interior=True)
    assert stability_range(mc, 2, 5) == 7
    surf = ManifoldClass(dim=2, orientable=True, open_interior=True)
    assert stability_range(surf, 2, 5) == 6
    high = ManifoldClass(dim=6, orientable=True, open_interior=True, connectivity=2)
    # max(j+k, min(a+1, dim/2)(j+k) - 1) at k=2, j=3
    assert stability_range(high, 2, 3) == max(5, min(3, 3) * 5 - 1) == 14


def test_window_odd_dim_connectivity_is_rational():
    mc = ManifoldClass(dim=5, orientable=True, open_interior=True, connectivity=2)
    # min(3, 5/2) = 5/2 gives a non-integral window beating the plain case
    assert stability_range(mc, 1, 0) == Fraction(3, 2)
    assert stability_range(mc, 2, 1) == Fraction(13, 2)
    # the maximum rule: the plain case wins when the weighted one is smaller
    low = ManifoldClass(dim=3, orientable=True, open_interior=True, connectivity=1)
    assert stability_range(low, 1, 0) == 1  # max(1, 3/2 - 1)


def test_nonorientable_surface_window():
    mc = ManifoldClass(dim=2, orientable=False, open_interior=True)
    for k in range(1, 5):
        for j in range(0, 6):
            assert stability_range(mc, k, j) == j + k


def test_orientable_surface_window_exact():
    for k in range(1, 5):
        for j in range(0, 6):
            assert stability_range(PLANE, k, j) == j + k - 1


def test_theorem_range():
    assert theorem_range(2, 0) == 1
    assert theorem_range(1, 0) == 0
    assert theorem_range(4, 3) == 6


def test_window_dominates_coarse_range():
    classes = [
        ManifoldClass(dim=2, orientable=True, open_interior=True),
        ManifoldClass(dim=2, orientable=False, open_interior=True),
        ManifoldClass(dim=3, orientable=True, open_interior=True),
        ManifoldClass(dim=5, orientable=False, open_interior=False),
        ManifoldClass(dim=6, orientable=True, open_interior=True, connectivity=2),
        ManifoldClass(dim=4, orientable=True, open_interior=False, connectivity=1),
    ]
    for mc in classes:
        for k in range(1, 9):
            for j in range(0, 13):
                assert stability_range(mc, k, j) >= theorem_range(k, j)


def test_window_monotone_in_j_and_k():
    classes = [
        PLANE,
        ManifoldClass(dim=3, orientable=True, open_interior=True, connectivity=1),
        ManifoldClass(dim=7, orientable=True, open_interior=True, connectivity=2),
    ]
    for mc in classes:
        for k in range(1, 6):
            for j in range(0, 10):
                f = stability_range(mc, k, j)
                assert stability_range(mc, k, j + 1) >= f
                assert stability_range(mc, k + 1, j) >= f


def test_integral_surface_range():
    assert integral_surface_range(2, 4) == 3
    assert integral_surface_range(1, 0) == Fraction(1, 2)
    assert integral_surface_range(3, 3) == 3


def test_puncture():
    closed = ManifoldClass(dim=4, orientable=True, open_interior=False, connectivity=2)
    p = puncture(closed)
    assert p.open_interior and p.punctures == 1
    assert p.dim == 4 and p.connectivity == 2
    assert puncture(puncture(closed)) == puncture(closed, 2)
    for k in range(1, 6):
        for j in range(0, 8):
            assert stability_range(closed, k, j) == stability_range(p, k, j)
    with pytest.raises(ValueError):
        puncture(closed, 0)


def test_validation():
    with pytest.raises(InvalidManifoldClassError):
        ManifoldClass(dim=1, orientable=True, open_interior=True)
    with pytest.raises(InvalidManifoldClassError):
        ManifoldClass(dim=3, orientable=True, open_interior=True, connectivity=2)
    with pytest.raises(InvalidManifoldClassError):
        ManifoldClass(dim=4, orientable=False, open_interior=True, connectivity=1)
    with pytest.raises(ValueError):
        stability_range(PLANE, 0, 0)


def test_stabilization_flag_and_caveats():
    closed_surface = ManifoldClass(dim=2, orientable=True, open_interior=False)
    assert not stabilization_defined(closed_surface)
    assert stabilization_defined(PLANE)
    caveats = range_caveats(closed_surface)
    assert any("no stabilization map" in c for c in caveats)
    assert CLOSED_SURFACE_CAVEAT in caveats
    assert "Z/(2j+2)Z" in CLOSED_SURFACE_CAVEAT
    assert range_caveats(PLANE) == []


def test_json_roundtrip():
    mc = ManifoldClass(dim=5, orientable=True, open_interior=False, connectivity=3, punctures=2)
    assert ManifoldClass.from_json(mc.to_json()) == mc
