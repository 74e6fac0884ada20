"""Stratification layers, first-page assembly and range certificates.

The complement of the closed locus with collision pattern lam is filtered by
how many merges a configuration is away from the generic pattern; layer p
consists of the strata indexed by ``col(lam, p)``.  The first page of the
associated spectral sequence is assembled from stratum Betti data supplied
by a :class:`BettiOracle`; differentials on that page are never synthesized
— the data determines Euler characteristics and upper bounds, and a user
supplying differential matrices can push pages forward with
:mod:`symcomp.spectral`.

The built-in oracle covers strata of the plane with at most five points (see
:mod:`symcomp.planecells`); everything else must be user-supplied, and every
entry carries its provenance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import planecells
from .partitions import Partition, col, normalize
from .ranges import PLANE, ManifoldClass, stability_range

PLANE_POINT_CAP = 5


class OracleCapError(RuntimeError):
    """Raised when a built-in oracle request exceeds its point cap."""


@dataclass(frozen=True)
class StratumDescriptor:
    """A stratum: pattern lam_prime on a manifold class of dimension d.

    The stratum is a colored configuration space of cardinality(lam_prime)
    points, an open manifold of dimension d * cardinality.
    """

    partition: Partition
    mc: ManifoldClass

    @property
    def dimension(self) -> int:
        return self.mc.dim * self.partition.cardinality


def duality_degree(sd: StratumDescriptor, i: int, twisted: bool = False) -> int:
    """Homological degree paired with compactly supported degree i.

    Valid untwisted only for orientable even-dimensional classes (the
    stratum is then an orientable manifold); otherwise the caller must pass
    ``twisted=True`` to acknowledge the orientation system conversion.
    """
    if not twisted and not (sd.mc.orientable and sd.mc.dim % 2 == 0):
        raise ValueError(
            "untwisted degree conversion requires an orientable even-dimensional class; "
            "pass twisted=True to convert against the orientation system"
        )
    if not 0 <= i <= sd.dimension:
        raise ValueError(f"degree {i} outside [0, {sd.dimension}]")
    return sd.dimension - i


# ---------------------------------------------------------------------------
# Betti oracle


@dataclass(frozen=True)
class OracleEntry:
    betti: tuple[int, ...]  # compactly supported degrees 0..dim
    provenance: str         # "builtin" | "user"


class BettiOracle:
    """Mapping (stratum pattern, manifold class) -> compactly supported Betti.

    The built-in plane model answers queries for the plane up to the point
    cap; other entries must be registered explicitly.  Lookups return None
    when unknown (callers flag their reports incomplete).
    """

    def __init__(self, use_builtin: bool = True, cap: int = PLANE_POINT_CAP):
        self.use_builtin = use_builtin
        self.cap = cap
        self._entries: dict = {}

    def register(self, lam: Partition, mc: ManifoldClass, betti, provenance: str = "user"):
        betti = tuple(int(b) for b in betti)
        dim = mc.dim * lam.cardinality
        if len(betti) != dim + 1:
            raise ValueError(f"expected {dim + 1} Betti entries for a {dim}-dimensional stratum")
        if any(b < 0 for b in betti):
            raise ValueError("Betti numbers must be non-negative")
        self._entries[(lam, mc)] = OracleEntry(betti, provenance)

    def lookup(self, lam: Partition, mc: ManifoldClass) -> OracleEntry | None:
        hit = self._entries.get((lam, mc))
        if hit is not None:
            return hit
        if self.use_builtin and mc == PLANE:
            if lam.cardinality > self.cap:
                raise OracleCapError(
                    f"built-in plane model capped at {self.cap} points; "
                    f"{lam} has {lam.cardinality}"
                )
            entry = OracleEntry(planecells.compact_betti(lam), "builtin")
            self._entries[(lam, mc)] = entry
            return entry
        return None

    def to_json(self) -> dict:
        entries = []
        for (lam, mc), e in sorted(self._entries.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))):
            entries.append(
                {
                    "partition": lam.to_json(),
                    "class": mc.to_json(),
                    "betti": list(e.betti),
                    "provenance": e.provenance,
                }
            )
        return {"entries": entries}

    @classmethod
    def from_json(cls, data: dict, use_builtin: bool = True) -> "BettiOracle":
        oracle = cls(use_builtin=use_builtin)
        for e in data.get("entries", []):
            oracle.register(
                normalize(e["partition"]),
                ManifoldClass.from_json(e["class"]),
                e["betti"],
                e.get("provenance", "user"),
            )
        return oracle


def plane_oracle(lam: Partition, cap: int = PLANE_POINT_CAP) -> tuple[int, ...]:
    """Compactly supported Betti numbers of the plane stratum for lam."""
    if lam.cardinality > cap:
        raise OracleCapError(f"plane model capped at {cap} points; {lam} has {lam.cardinality}")
    return planecells.compact_betti(lam)


# ---------------------------------------------------------------------------
# filtration layers and first-page assembly


def filtration_report(lam: Partition) -> list[tuple[int, tuple[Partition, ...]]]:
    """Layers (p, col(lam, p)) for p = 0..weight-1.

    For lam with a part >= 2 the bottom layer is the single generic pattern
    1^k; for lam = 1^k every pattern is a collapse of lam and all layers are
    empty (the complement is empty).  Layers at p >= weight-1 are empty.
    """
    k = lam.weight
    layers = []
    for p in range(max(k, 1)):
        layers.append((p, tuple(sorted(col(lam, p)))))
    generic = normalize([1] * k)
    if lam != generic and k >= 1:
        assert layers[0][1] == (generic,)
    assert all(not members for p, members in layers if p >= max(k - 1, 0))
    return layers


@dataclass
class E1Table:
    """Assembled first page: cell (p, q) -> dimension with component lists."""

    lam: Partition
    mc: ManifoldClass
    cells: dict = field(default_factory=dict)        # (p, q) -> int
    components: dict = field(default_factory=dict)   # (p, q) -> [(partition, dim)]
    missing: list = field(default_factory=list)      # patterns with no oracle entry
    provenance: dict = field(default_factory=dict)   # partition -> str

    @property
    def complete(self) -> bool:
        return not self.missing

    def column_support(self) -> list[int]:
        return sorted({p for (p, q) in self.cells})

    def euler_characteristic(self) -> int:
        return sum((-1) ** (p + q) * d for (p, q), d in self.cells.items())

    def betti_upper_bounds(self) -> dict:
        """dim H_c^n <= sum over p+q = n of the first-page dimensions."""
        out: dict = {}
        for (p, q), d in self.cells.items():
            out[p + q] = out.get(p + q, 0) + d
        return out


def assemble_e1(lam: Partition, mc: ManifoldClass, oracle: BettiOracle) -> E1Table:
    """First page from stratum data: cell (p, q) sums layer-p strata in degree p+q.

    Layers follow :func:`filtration_report`; nonzero columns are confined to
    0 <= p <= weight-1 and rows to the stratum dimension bound.  Missing
    oracle entries mark the table incomplete rather than guessing.
    """
    table = E1Table(lam=lam, mc=mc)
    for p, members in filtration_report(lam):
        for mu in members:
            entry = oracle.lookup(mu, mc)
            if entry is None:
                table.missing.append(mu)
                continue
            table.provenance[mu] = entry.provenance
            for deg, b in enumerate(entry.betti):
                if b:
                    q = deg - p
                    key = (p, q)
                    table.cells[key] = table.cells.get(key, 0) + b
                    table.components.setdefault(key, []).append((mu, b))
    return table


# ---------------------------------------------------------------------------
# Euler consistency


@dataclass
class EulerReport:
    lam: Partition
    layer_sums: dict
    total: int | None
    reference: int | None
    consistent: bool | None
    note: str = ""


def euler_consistency(lam: Partition, mc: ManifoldClass, oracle: BettiOracle,
                      reference_betti) -> EulerReport:
    """Compare the layered Euler characteristic against a reference.

    The compactly supported Euler characteristic is additive over the
    layers, so the alternating sum over all strata must equal that of the
    reference space; ``reference_betti`` lists its compactly supported Betti
    numbers.  Incomplete oracle data yields an inconclusive report.
    """
    layer_sums: dict = {}
    incomplete = False
    for p, members in filtration_report(lam):
        total = 0
        for mu in members:
            entry = oracle.lookup(mu, mc)
            if entry is None:
                incomplete = True
                continue
            total += sum((-1) ** i * b for i, b in enumerate(entry.betti))
        if members:
            layer_sums[p] = total
    if incomplete:
        return EulerReport(lam, layer_sums, None, None, None, "oracle incomplete")
    total = sum(layer_sums.values())
    ref = sum((-1) ** i * int(b) for i, b in enumerate(reference_betti))
    return EulerReport(lam, layer_sums, total, ref, total == ref)


# ---------------------------------------------------------------------------
# range certificate


@dataclass
class CellCheck:
    p: int
    q: int
    dual_degree: int
    bound: Fraction
    strict: bool
    vacuous: bool
    ok: bool


@dataclass
class RangeCertificate:
    d: int
    k: int
    j: int
    case: str
    connectivity: int | None
    threshold: Fraction
    cells: list
    passed: bool
    first_failure: CellCheck | None


_CASES = ("high_dim", "surface_orientable", "surface_nonorientable", "connectivity")


def _case_class(d: int, case: str, a: int | None) -> ManifoldClass:
    if case == "high_dim":
        if d <= 2:
            raise ValueError("high_dim case needs dimension > 2")
        return ManifoldClass(dim=d, orientable=True, open_interior=True)
    if case == "surface_orientable":
        if d != 2:
            raise ValueError("surface case needs dimension 2")
        return ManifoldClass(dim=2, orientable=True, open_interior=True)
    if case == "surface_nonorientable":
        if d != 2:
            raise ValueError("surface case needs dimension 2")
        return ManifoldClass(dim=2, orientable=False, open_interior=True)
    if case == "connectivity":
        if a is None or a < 1:
            raise ValueError("connectivity case needs a >= 1")
        return ManifoldClass(dim=d, orientable=True, open_interior=True, connectivity=a)
    raise ValueError(f"unknown case {case!r}; expected one of {_CASES}")


def range_certificate(d: int, k: int, j: int, case: str, a: int | None = None,
                      threshold_offset: int = 0) -> RangeCertificate:
    """Check the degree arithmetic feeding the window comparison.

    For every integer cell (p, q) with 0 <= p <= k+j, q >= 0 and
    p + q >= d(j+k+1) - f (f the window bound for the case), the homological
    degree D = d(j+k+1-p) - (p+q) paired with the cell must lie in the
    layer-p stratum stability range: D <= k+j-2p in dimensions above two,
    strictly below for orientable surfaces, <= for non-orientable surfaces,
    and D < (a+1)(k+j-2p) in the high-connectivity case.  Cells with D < 0
    are vacuous: the stratum groups vanish there.  ``threshold_offset``
    lowers the window (for seeded-violation tests).
    """
    mc = _case_class(d, case, a)
    f = stability_range(mc, k, j)
    if case == "connectivity" and a is not None:
        f = min(Fraction(a + 1), Fraction(d, 2)) * (j + k) - 1
    s = j + k
    threshold = Fraction(d * (s + 1)) - f - threshold_offset
    strict = case == "surface_orientable" or case == "connectivity"
    cells = []
    passed = True
    first_failure = None
    top = d * (s + 1)
    for p in range(0, s + 1):
        for q in range(0, top - p + 1):
            if Fraction(p + q) < threshold:
                continue
            dual = d * (s + 1 - p) - (p + q)
            if case == "connectivity":
                bound = Fraction(a + 1) * (s - 2 * p)
            else:
                bound = Fraction(s - 2 * p)
            vacuous = dual < 0
            if vacuous:
                ok = True
            elif strict:
                ok = Fraction(dual) < bound
            else:
                ok = Fraction(dual) <= bound
            check = CellCheck(p, q, dual, bound, strict, vacuous, ok)
            cells.append(check)
            if not ok and first_failure is None:
                first_failure = check
                passed = False
    return RangeCertificate(
        d=d, k=k, j=j, case=case, connectivity=a, threshold=threshold,
        cells=cells, passed=passed, first_failure=first_failure,
    )
