"""Partitions, the merge (collapse) partial order and its layer sets.

A partition is a multiset of positive integers, stored weakly increasing.
Merging two parts into their sum is an *elementary collapse*; the reflexive
transitive closure of merging defines the partial order used throughout:
``mu <= lam`` iff the parts of ``lam`` can be grouped into blocks whose sums
are the parts of ``mu``.  The layer set ``col(lam, p)`` collects partitions of
the same weight with ``weight - p`` parts that are *not* collapses of
``lam``; it indexes the p-th layer of the stratification filtrations built in
:mod:`symcomp.strata`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache


class InvalidPartitionError(ValueError):
    """Raised for parts < 1 or unparsable partition input."""


class PartitionCapError(RuntimeError):
    """Raised when an enumeration would exceed the configured weight cap."""


DEFAULT_WEIGHT_CAP = 40


@dataclass(frozen=True, order=True)
class Partition:
    """Canonical partition: weakly increasing tuple of parts >= 1."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        for p in self.parts:
            if not isinstance(p, int) or p < 1:
                raise InvalidPartitionError(f"invalid part {p!r}: parts must be integers >= 1")
        if list(self.parts) != sorted(self.parts):
            raise InvalidPartitionError("parts must be weakly increasing; use normalize()")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def cardinality(self) -> int:
        return len(self.parts)

    def ones(self) -> int:
        return sum(1 for p in self.parts if p == 1)

    def multiplicities(self) -> dict[int, int]:
        """How many parts equal each value m, as {m: count}."""
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def __str__(self) -> str:
        return "+".join(str(p) for p in self.parts) if self.parts else "0"

    def __repr__(self) -> str:
        return f"Partition({self})"

    def to_json(self) -> list[int]:
        return list(self.parts)


EMPTY = Partition(())


def normalize(raw_parts) -> Partition:
    """Sort raw parts into canonical form; any part < 1 is rejected."""
    parts = []
    for p in raw_parts:
        if not isinstance(p, int) or isinstance(p, bool) or p < 1:
            raise InvalidPartitionError(f"invalid part {p!r}: parts must be integers >= 1")
        parts.append(p)
    return Partition(tuple(sorted(parts)))


def parse(text: str) -> Partition:
    """Parse "1+1+2" (or "0" for the empty partition)."""
    text = text.strip()
    if text in ("", "0"):
        return EMPTY
    try:
        parts = [int(t) for t in text.split("+")]
    except ValueError as exc:
        raise InvalidPartitionError(f"cannot parse partition {text!r}") from exc
    return normalize(parts)


def add_ones(lam: Partition, j: int) -> Partition:
    """Prepend j extra parts equal to 1."""
    if j < 0:
        raise InvalidPartitionError("cannot add a negative number of ones")
    return Partition((1,) * j + lam.parts)


def elementary_collapses(lam: Partition) -> frozenset[Partition]:
    """All partitions obtained by merging one unordered pair of parts."""
    out = set()
    parts = lam.parts
    n = len(parts)
    for i in range(n):
        for j in range(i + 1, n):
            merged = parts[:i] + parts[i + 1 : j] + parts[j + 1 :] + (parts[i] + parts[j],)
            out.add(normalize(merged))
    return frozenset(out)


def collapses_of(lam: Partition) -> frozenset[Partition]:
    """Reachability closure of elementary collapses (includes lam itself)."""
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for nu in elementary_collapses(mu):
                if nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return frozenset(seen)


def _grouping_exists(source: tuple[int, ...], targets: tuple[int, ...]) -> bool:
    """Can the source parts be split into blocks summing to the targets?

    Assigns the largest unplaced part to each distinct residual block
    capacity, memoized on the (parts, residual capacities) state.
    """

    @lru_cache(maxsize=None)
    def solve(remaining: tuple[int, ...], capacities: tuple[int, ...]) -> bool:
        if not remaining:
            return not capacities
        big = remaining[-1]
        rest = remaining[:-1]
        tried = set()
        for idx, cap in enumerate(capacities):
            if cap < big or cap in tried:
                continue
            tried.add(cap)
            left = capacities[:idx] + capacities[idx + 1 :]
            if cap > big:
                left = tuple(sorted(left + (cap - big,)))
            if solve(rest, left):
                return True
        return False

    return solve(source, targets)


def is_collapse(mu: Partition, lam: Partition) -> bool:
    """True iff mu <= lam, i.e. mu arises from lam by merging parts."""
    if mu.weight != lam.weight:
        return False
    if mu == lam:
        return True
    if mu.cardinality > lam.cardinality:
        return False
    return _grouping_exists(lam.parts, mu.parts)


def enumerate_partitions(k: int, cap: int = DEFAULT_WEIGHT_CAP) -> tuple[Partition, ...]:
    """All partitions of k in lexicographic order on part tuples."""
    if k < 0:
        raise InvalidPartitionError("weight must be non-negative")
    if k > cap:
        raise PartitionCapError(f"weight {k} exceeds the cap {cap}")
    return _enumerate_cached(k)


@lru_cache(maxsize=None)
def _enumerate_cached(k: int) -> tuple[Partition, ...]:
    out: list[Partition] = []

    def gen(rest: int, min_part: int, acc: tuple[int, ...]):
        if rest == 0:
            out.append(Partition(acc))
            return
        for a in range(min_part, rest + 1):
            gen(rest - a, a, acc + (a,))

    gen(k, 1, ())
    return tuple(out)


def partitions_with_cardinality(k: int, c: int, cap: int = DEFAULT_WEIGHT_CAP) -> tuple[Partition, ...]:
    """All partitions of k with exactly c parts, lexicographic order."""
    if k > cap:
        raise PartitionCapError(f"weight {k} exceeds the cap {cap}")
    if c == 0:
        return (EMPTY,) if k == 0 else ()
    if c < 0 or k <= 0:
        return ()
    out: list[Partition] = []

    def gen(rest: int, min_part: int, slots: int, acc: tuple[int, ...]):
        if slots == 0:
            if rest == 0:
                out.append(Partition(acc))
            return
        for a in range(min_part, rest // slots + 1):
            gen(rest - a, a, slots - 1, acc + (a,))

    gen(k, 1, c, ())
    return tuple(out)


def col(lam: Partition, p: int, cap: int = DEFAULT_WEIGHT_CAP) -> frozenset[Partition]:
    """Partitions of weight(lam) with weight - p parts that are not <= lam."""
    if p < 0:
        raise ValueError("layer index must be non-negative")
    k = lam.weight
    return frozenset(
        mu for mu in partitions_with_cardinality(k, k - p, cap) if not is_collapse(mu, lam)
    )


@dataclass(frozen=True)
class StabCollapseReport:
    """The layer stabilization map col_p(1^j lam) -> col_p(1^{j+1} lam)."""

    lam: Partition
    j: int
    p: int
    source: tuple[Partition, ...]
    target: tuple[Partition, ...]
    pairs: tuple[tuple[Partition, Partition], ...]
    injective: bool
    surjective: bool
    missed: tuple[Partition, ...]
    window_bound: Fraction = field(compare=False)

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    @property
    def in_window(self) -> bool:
        return Fraction(self.p) <= self.window_bound


def stab_collapse_map(lam: Partition, j: int, p: int,
                      cap: int = DEFAULT_WEIGHT_CAP) -> StabCollapseReport:
    """Map layer p of 1^j lam into layer p of 1^{j+1} lam by adding a 1.

    The map is always injective; it is a bijection whenever
    p <= (j + weight)/2, and any missed target has no part equal to 1.
    """
    source = tuple(sorted(col(add_ones(lam, j), p, cap)))
    target_set = col(add_ones(lam, j + 1), p, cap)
    target = tuple(sorted(target_set))
    pairs = []
    for mu in source:
        image = add_ones(mu, 1)
        if image not in target_set:
            raise AssertionError(f"stabilized layer member {image} escaped the target layer")
        pairs.append((mu, image))
    images = {img for _, img in pairs}
    missed = tuple(sorted(target_set - images))
    return StabCollapseReport(
        lam=lam,
        j=j,
        p=p,
        source=source,
        target=target,
        pairs=tuple(pairs),
        injective=len(images) == len(pairs),
        surjective=not missed,
        missed=missed,
        window_bound=Fraction(j + lam.weight, 2),
    )
