"""Manifold-class descriptors and stability windows.

The window function returned by :func:`stability_range` is the largest range
in which adding a particle is known to induce a homology isomorphism below
the bound and a surjection at it.  All values are exact rationals: the
high-connectivity case involves dim/2, which is not an integer in odd
dimensions.

Integral coefficients are a different story and nothing here claims them:
for closed surfaces integral stability fails outright — for the 2-sphere the
first integral homology of the space of j+2 points with no doubled point is
the finite cyclic group Z/(2j+2)Z, torsion that is invisible rationally, and
it keeps growing with j.  The half-weight integral window reported by
:func:`integral_surface_range` therefore applies to open surfaces only.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction


class InvalidManifoldClassError(ValueError):
    """Raised when descriptor fields violate the admissibility constraints."""


@dataclass(frozen=True)
class ManifoldClass:
    """Abstract descriptor of a connected manifold.

    ``connectivity`` is the declared largest a with vanishing reduced
    rational homology through degree a; it is an input hypothesis, not a
    computation, and must satisfy a < dim - 1.  Declaring a >= 1 requires
    orientability (the high-connectivity window is only defined there).
    ``punctures`` counts removed points; puncturing preserves connectivity.
    """

    dim: int
    orientable: bool
    open_interior: bool
    connectivity: int = 0
    punctures: int = 0

    def __post_init__(self):
        if self.dim < 2:
            raise InvalidManifoldClassError("dimension must be at least 2")
        if self.connectivity < 0:
            raise InvalidManifoldClassError("connectivity must be non-negative")
        if self.connectivity >= self.dim - 1:
            raise InvalidManifoldClassError("connectivity must satisfy a < dim - 1")
        if self.connectivity >= 1 and not self.orientable:
            raise InvalidManifoldClassError(
                "declared connectivity >= 1 requires an orientable class"
            )
        if self.punctures < 0:
            raise InvalidManifoldClassError("punctures must be non-negative")

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "orientable": self.orientable,
            "open_interior": self.open_interior,
            "connectivity": self.connectivity,
            "punctures": self.punctures,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ManifoldClass":
        return cls(
            dim=int(data["dim"]),
            orientable=bool(data["orientable"]),
            open_interior=bool(data["open_interior"]),
            connectivity=int(data.get("connectivity", 0)),
            punctures=int(data.get("punctures", 0)),
        )


#: The plane: open, orientable, dimension 2.
PLANE = ManifoldClass(dim=2, orientable=True, open_interior=True, connectivity=0)


def stability_range(mc: ManifoldClass, k: int, j: int) -> Fraction:
    """The window bound f for adding a particle to weight-k patterns.

    Cases are not mutually exclusive; the maximum applicable bound wins:
    j+k for dim > 2, j+k-1 for orientable surfaces, j+k for non-orientable
    surfaces, and min(a+1, dim/2)(j+k) - 1 when connectivity a >= 1 is
    declared (orientable only).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if j < 0:
        raise ValueError("j must be non-negative")
    s = j + k
    candidates = []
    if mc.dim > 2:
        candidates.append(Fraction(s))
    elif mc.orientable:
        candidates.append(Fraction(s - 1))
    else:
        candidates.append(Fraction(s))
    if mc.orientable and mc.connectivity >= 1:
        candidates.append(min(Fraction(mc.connectivity + 1), Fraction(mc.dim, 2)) * s - 1)
    return max(candidates)


def theorem_range(k: int, j: int) -> int:
    """The coarse window j + k - 1 valid for every admissible class."""
    return j + k - 1


def integral_surface_range(k: int, j: int) -> Fraction:
    """The half-weight window (j+k)/2; meaningful for open surfaces only."""
    return Fraction(j + k, 2)


def puncture(mc: ManifoldClass, r: int = 1) -> ManifoldClass:
    """Remove r points: the class becomes open; connectivity is preserved."""
    if r < 1:
        raise ValueError("must remove at least one point")
    return replace(mc, open_interior=True, punctures=mc.punctures + r)


def stabilization_defined(mc: ManifoldClass) -> bool:
    """Whether an add-a-particle map exists (open interiors only).

    For closed classes the window still applies, realized by the transfer
    instead; reports must flag that no stabilization map exists.
    """
    return mc.open_interior


CLOSED_SURFACE_CAVEAT = (
    "integral coefficients: stability fails for closed surfaces; on the "
    "2-sphere the first integral homology of the no-doubled-point space is "
    "torsion Z/(2j+2)Z, which is rationally zero, so all claims here are "
    "rational; the integral half-weight window (j+k)/2 applies only to open "
    "surfaces"
)

CLOSED_CLASS_CAVEAT = (
    "closed class: no stabilization map exists (there is no room to add a "
    "particle); the reported window is realized by the transfer map"
)


def range_caveats(mc: ManifoldClass) -> list[str]:
    """Caveat strings a report generator must attach for this class."""
    out = []
    if not mc.open_interior:
        out.append(CLOSED_CLASS_CAVEAT)
        if mc.dim == 2:
            out.append(CLOSED_SURFACE_CAVEAT)
    return out
