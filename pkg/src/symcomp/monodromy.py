"""Orientation sign calculus on strata of symmetric powers.

A loop in a stratum permutes the particles of each multiplicity among
themselves and moves every particle along some loop in the manifold.  All
the rank-one systems in play factor through finitely many signs: per
multiplicity m the permutation sign of the tracked permutation (weighted by
m or not), and per particle the orientation sign of its loop.  Two systems
arise, one remembering multiplicities and one forgetting them; they agree on
loops in which only odd-multiplicity particles move, which is the precise
statement checked by :func:`odd_move_agreement`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .partitions import Partition, normalize


def perm_sign(perm: tuple[int, ...]) -> int:
    """Sign of a permutation given as a 1-based image tuple."""
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {perm}")
    seen = [False] * n
    sign = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class LoopDatum:
    """A loop in a stratum, reduced to its sign-relevant data.

    ``perms[m]`` is the permutation of the particles of multiplicity m
    (1-based image tuple on 1..n_m); ``u[i]`` is the orientation sign of the
    i-th particle's loop, particles numbered 1..cardinality in canonical
    order (parts increasing); ``ambient_dim`` is the manifold dimension.
    """

    lam: Partition
    perms: tuple  # ((m, image tuple), ...) sorted by m
    u: tuple      # one sign per particle
    ambient_dim: int

    @classmethod
    def make(cls, lam: Partition, perms: dict, u, ambient_dim: int) -> "LoopDatum":
        mult = lam.multiplicities()
        norm = {}
        for m, count in mult.items():
            pi = tuple(perms.get(m, tuple(range(1, count + 1))))
            if sorted(pi) != list(range(1, count + 1)):
                raise ValueError(f"permutation for multiplicity {m} must act on 1..{count}")
            norm[m] = pi
        for m in perms:
            if m not in mult:
                raise ValueError(f"no particles of multiplicity {m} in {lam}")
        u = tuple(int(x) for x in u)
        if len(u) != lam.cardinality:
            raise ValueError("need one orientation sign per particle")
        if any(x not in (1, -1) for x in u):
            raise ValueError("orientation signs must be ±1")
        if ambient_dim < 2:
            raise ValueError("ambient dimension must be at least 2")
        return cls(lam, tuple(sorted(norm.items())), u, ambient_dim)

    def perm_of(self, m: int) -> tuple:
        for mm, pi in self.perms:
            if mm == m:
                return pi
        raise KeyError(m)

    def particle_multiplicities(self) -> tuple:
        return self.lam.parts

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "perms": {str(m): list(pi) for m, pi in self.perms},
            "u": list(self.u),
            "d": self.ambient_dim,
        }

    @classmethod
    def from_json(cls, data: dict) -> "LoopDatum":
        return cls.make(
            normalize(data["lambda"]),
            {int(m): tuple(pi) for m, pi in data.get("perms", {}).items()},
            data["u"],
            int(data["d"]),
        )


def s1(ld: LoopDatum) -> int:
    """Product over multiplicities of the permutation sign raised to m."""
    out = 1
    for m, pi in ld.perms:
        out *= perm_sign(pi) ** m
    return out


def s2(ld: LoopDatum) -> int:
    """Product over multiplicities of the plain permutation sign."""
    out = 1
    for _, pi in ld.perms:
        out *= perm_sign(pi)
    return out


def orientation_chars(ld: LoopDatum) -> tuple[int, int]:
    """(o1, o2): orientation signs with and without multiplicity weights.

    o1 multiplies each particle's sign with exponent its multiplicity
    (the loop class remembers how many points sit on the particle); o2
    multiplies the plain signs.
    """
    o1 = 1
    o2 = 1
    for mult, sign in zip(ld.lam.parts, ld.u):
        o1 *= sign**mult
        o2 *= sign
    return o1, o2


@dataclass(frozen=True)
class MonodromyValues:
    weighted: int    # o1 * s1^d
    unweighted: int  # o2 * s2^d
    tensor: int

    def agree(self) -> bool:
        return self.weighted == self.unweighted


def monodromy_pair(ld: LoopDatum) -> MonodromyValues:
    """Monodromy of the two orientation systems and of their tensor product."""
    o1, o2 = orientation_chars(ld)
    d = ld.ambient_dim
    w = o1 * s1(ld) ** d
    uw = o2 * s2(ld) ** d
    return MonodromyValues(weighted=w, unweighted=uw, tensor=w * uw)


@dataclass(frozen=True)
class AgreementVerdict:
    applicable: bool
    agrees: bool | None


def odd_move_agreement(ld: LoopDatum) -> AgreementVerdict:
    """Certify the two systems agree when only odd multiplicities move.

    Applicable when every even multiplicity has the identity permutation
    and trivial orientation signs on its particles; then the weighted and
    unweighted monodromy coincide.  Outside the precondition no claim is
    made (the values genuinely differ for an even-multiplicity swap in odd
    ambient dimension).
    """
    for m, pi in ld.perms:
        if m % 2 == 0 and pi != tuple(range(1, len(pi) + 1)):
            return AgreementVerdict(applicable=False, agrees=None)
    for mult, sign in zip(ld.lam.parts, ld.u):
        if mult % 2 == 0 and sign != 1:
            return AgreementVerdict(applicable=False, agrees=None)
    values = monodromy_pair(ld)
    return AgreementVerdict(applicable=True, agrees=values.agree())


def compose(a: LoopDatum, b: LoopDatum) -> LoopDatum:
    """Componentwise composition: permutations compose, signs multiply."""
    if a.lam != b.lam or a.ambient_dim != b.ambient_dim:
        raise ValueError("loop data must live on the same stratum")
    perms = {}
    for m, pa in a.perms:
        pb = b.perm_of(m)
        perms[m] = tuple(pa[pb[i] - 1] for i in range(len(pa)))
    u = tuple(x * y for x, y in zip(a.u, b.u))
    return LoopDatum.make(a.lam, perms, u, a.ambient_dim)
