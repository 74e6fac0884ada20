"""Chain-level transfers via coset sums and particle deletion.

The transfer out of a coinvariant space sums coset representatives and then
deletes coordinates.  Composites of adjacent transfers reproduce the
non-adjacent ones on the nose; the family satisfying the triangular algebra
below (Pascal-type relation, binomial composition, the (p-q) spectrum) is
the transfer divided by (p-q)!, an invertible rescaling over the rationals.
Both are exposed: :func:`transfer_map` is the raw coset-sum-then-delete map,
:func:`dold_transfer` the normalized one used to build
:class:`DoldSystem` instances.

The configuration model is a zero-dimensional stand-in: ordered injective
tuples on a finite site set.  It realizes the module algebra exactly.  A
fixed finite site set is closed-manifold-like: no site-level stabilization
exists, so stabilization maps for model systems are produced by exact
linear solving of the defining relation (:func:`fit_stabilization`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import comb, factorial

from .exactlin import (
    ChainComplex,
    CoinvariantComplex,
    GroupAction,
    QMatrix,
    QuotientBasis,
    coinvariant_data,
    rank,
    solve,
    vstack,
)

DEFAULT_COSET_CAP = 8


class CosetCapError(RuntimeError):
    """Raised when a coset enumeration would exceed the symmetric-group cap."""


class DoldFitError(RuntimeError):
    """No stabilization maps satisfy the defining relation for these transfers."""


# ---------------------------------------------------------------------------
# cosets


def coset_representatives(small: int, big: int, cap: int = DEFAULT_COSET_CAP) -> list[tuple]:
    """Representatives of the big!/small! cosets of the letter-fixing subgroup.

    The subgroup permutes letters 1..small and fixes small+1..big.  A coset
    is determined by where the tail values small+1..big sit; the canonical
    representative places the head values increasingly on the remaining
    letters.  Distinctness of the classes is verified.
    """
    if not 0 <= small <= big:
        raise ValueError("need 0 <= small <= big")
    if big > cap:
        raise CosetCapError(f"coset enumeration capped at symmetric groups of degree {cap}")
    letters = list(range(1, big + 1))
    reps = []
    seen = set()
    for tail_positions in permutations(letters, big - small):
        g_inv = {}
        for t, letter in enumerate(tail_positions):
            g_inv[small + 1 + t] = letter
        rest = sorted(set(letters) - set(tail_positions))
        for v, letter in zip(range(1, small + 1), rest):
            g_inv[v] = letter
        g = [0] * big
        for v, letter in g_inv.items():
            g[letter - 1] = v
        g = tuple(g)
        key = tuple(g_inv[v] for v in range(small + 1, big + 1))
        if key in seen:
            raise AssertionError("duplicate coset representative")
        seen.add(key)
        reps.append(g)
    if len(reps) != factorial(big) // factorial(small):
        raise AssertionError("coset count mismatch")
    return reps


# ---------------------------------------------------------------------------
# iota on coinvariants


@dataclass
class IotaMap:
    source: CoinvariantComplex
    target: CoinvariantComplex
    maps: dict


def _subgroup_action(action: GroupAction, small: int) -> GroupAction:
    """The letter-fixing subgroup's action, from the ambient generators.

    Requires the ambient action's elements to be named by permutations; the
    subgroup generators are the adjacent transpositions of the first
    ``small`` letters.
    """
    elems = {perm: mats for perm, mats in action.elements()}
    n = None
    for perm in elems:
        n = len(perm)
        break
    gens = []
    for i in range(1, small):
        perm = list(range(1, n + 1))
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
        perm = tuple(perm)
        gens.append((perm, elems[perm]))
    return GroupAction(gens)


def iota(c: ChainComplex, action: GroupAction, small: int, big: int,
         reps: list[tuple] | None = None, cap: int = DEFAULT_COSET_CAP) -> IotaMap:
    """Coset-sum map from big-group coinvariants to small-group coinvariants.

    The underlying assignment x -> sum of g·x over coset representatives is
    independent of the representative choice after passing to coinvariants
    (tested property), because changing a representative perturbs each
    summand by a subgroup translate.
    """
    elems = {perm: mats for perm, mats in action.elements()}
    if reps is None:
        reps = coset_representatives(small, big, cap)
    src = coinvariant_data(c, action, method="gendiff", check=False)
    if small > 1:
        sub_action = _subgroup_action(action, small)
        tgt = coinvariant_data(c, sub_action, method="gendiff", check=False)
    else:
        ident = {n: QMatrix.identity(c.dim(n)) for n in c.degrees}
        tgt = CoinvariantComplex(c, ident, ident)
    maps = {}
    for n in c.degrees:
        if c.dim(n) == 0:
            continue
        total = QMatrix.zeros(c.dim(n), c.dim(n))
        acc: dict = {}
        for g in reps:
            m = elems[g].get(n, QMatrix.identity(c.dim(n)))
            for key, v in m.entries.items():
                acc[key] = acc.get(key, 0) + v
        total = QMatrix(c.dim(n), c.dim(n), {k: v for k, v in acc.items() if v})
        maps[n] = tgt.proj[n] @ total @ src.sect[n]
    return IotaMap(source=src, target=tgt, maps=maps)


# ---------------------------------------------------------------------------
# the configuration model


class ConfigurationModel:
    """Ordered injective tuples on a finite site set, with deletions.

    ``k`` is the weight offset: level j of the tower uses tuples of length
    j + k.  Deleting the last coordinates is equivariant for the subgroup
    fixing the deleted letters, and deletions compose.
    """

    def __init__(self, n_sites: int, k: int = 0, cap: int = DEFAULT_COSET_CAP):
        if n_sites < 1:
            raise ValueError("need at least one site")
        self.n_sites = n_sites
        self.k = k
        self.cap = cap
        self._tuples: dict = {}

    def tuples(self, length: int) -> list[tuple]:
        if length not in self._tuples:
            self._tuples[length] = sorted(permutations(range(1, self.n_sites + 1), length))
        return self._tuples[length]

    def space(self, length: int) -> ChainComplex:
        return ChainComplex({0: len(self.tuples(length))}, {}, -1)

    def action(self, length: int) -> GroupAction:
        """The coordinate-permuting symmetric group on length letters."""
        basis = self.tuples(length)
        pos = {t: i for i, t in enumerate(basis)}
        gens = []
        for i in range(1, length):
            perm = list(range(1, length + 1))
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
            perm = tuple(perm)
            ent = {}
            for t, idx in pos.items():
                moved = tuple(t[perm[pos2] - 1] for pos2 in range(length))
                ent[(pos[moved], idx)] = 1
            gens.append((perm, {0: QMatrix(len(basis), len(basis), ent)}))
        return GroupAction(gens)

    def deletion(self, small_len: int, big_len: int) -> QMatrix:
        """Forget the last big_len - small_len coordinates."""
        if not 0 <= small_len <= big_len:
            raise ValueError("invalid deletion lengths")
        src = self.tuples(big_len)
        dst = self.tuples(small_len)
        pos = {t: i for i, t in enumerate(dst)}
        ent = {}
        for j, t in enumerate(src):
            ent[(pos[t[:small_len]], j)] = 1
        return QMatrix(len(dst), len(src), ent)

    def subset_space(self, length: int) -> CoinvariantComplex:
        """Full coinvariants of the tuple space: one class per site subset."""
        if length <= 1:
            c = self.space(length)
            ident = {0: QMatrix.identity(c.dim(0))}
            return CoinvariantComplex(c, ident, ident)
        return coinvariant_data(self.space(length), self.action(length), method="gendiff", check=False)


@dataclass
class TransferResult:
    matrix: QMatrix
    source: CoinvariantComplex
    target: CoinvariantComplex


def transfer_map(model: ConfigurationModel, i: int, j: int) -> TransferResult:
    """Coset sum followed by deletion, on degree-0 coinvariant spaces.

    Maps the full coinvariants at level j to those at level i (levels use
    tuple lengths i+k, j+k).  Composites of adjacent transfer maps equal the
    non-adjacent ones; see :func:`dold_transfer` for the normalized family.
    """
    if not 0 <= i <= j:
        raise ValueError("need 0 <= i <= j")
    big_len = j + model.k
    small_len = i + model.k
    c = model.space(big_len)
    if big_len <= 1:
        im = IotaMap(
            source=model.subset_space(big_len),
            target=model.subset_space(big_len),
            maps={0: QMatrix.identity(c.dim(0)).scale(
                Fraction(factorial(big_len) // factorial(small_len)))},
        )
    else:
        im = iota(c, model.action(big_len), small_len, big_len, cap=model.cap)
    dele = model.deletion(small_len, big_len)
    tgt = model.subset_space(small_len)
    # the deletion is equivariant for the letter-fixing subgroup, so it
    # descends to the small-subgroup coinvariants computed by iota
    mat = tgt.proj[0] @ dele @ im.target.sect[0] @ im.maps[0]
    return TransferResult(matrix=mat, source=im.source, target=tgt)


def dold_transfer(model: ConfigurationModel, q: int, p: int) -> QMatrix:
    """Transfer normalized by (p-q)!; the family closing the triangular algebra."""
    return transfer_map(model, q, p).matrix.scale(Fraction(1, factorial(p - q)))


# ---------------------------------------------------------------------------
# Dold systems


@dataclass
class DoldSystem:
    """Spaces B_0..B_P with stabilizations and a triangular transfer family.

    ``sigma[p]`` maps B_{p-1} -> B_p (sigma[0] has a zero-dimensional
    source); ``theta[(q, p)]`` maps B_p -> B_q for q <= p with
    theta[(p, p)] the identity.
    """

    dims: list[int]
    sigma: list[QMatrix]
    theta: dict

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def to_json(self) -> dict:
        out = {"dims": list(self.dims)}
        for p, m in enumerate(self.sigma):
            out[f"sigma_{p}"] = m.to_triplets()
        for (q, p), m in sorted(self.theta.items()):
            out[f"theta_{q}_{p}"] = m.to_triplets()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "DoldSystem":
        dims = [int(x) for x in data["dims"]]
        P = len(dims) - 1
        sigma = []
        for p in range(P + 1):
            prev = dims[p - 1] if p >= 1 else 0
            sigma.append(QMatrix.from_triplets(dims[p], prev, data.get(f"sigma_{p}", [])))
        theta = {}
        for q in range(P + 1):
            for p in range(q, P + 1):
                key = f"theta_{q}_{p}"
                if key in data:
                    theta[(q, p)] = QMatrix.from_triplets(dims[q], dims[p], data[key])
                elif q == p:
                    theta[(q, p)] = QMatrix.identity(dims[p])
        return cls(dims, sigma, theta)


def binomial_system(top: int) -> DoldSystem:
    """Rank-one system: theta is the binomial coefficient, sigma the identity."""
    dims = [1] * (top + 1)
    sigma = [QMatrix(1, 0)] + [QMatrix.identity(1) for _ in range(top)]
    theta = {
        (q, p): QMatrix(1, 1, {(0, 0): Fraction(comb(p, q))})
        for p in range(top + 1)
        for q in range(p + 1)
    }
    return DoldSystem(dims, sigma, theta)


def free_tower_system(new_dims: list[int]) -> DoldSystem:
    """B_p = ⊕_{r<=p} C_r with inclusion stabilizations and binomial weights.

    ``new_dims[r]`` is dim C_r.  theta[(q,p)] acts on the C_r summand by the
    scalar C(p-r, p-q); the Pascal recursion makes the defining relation
    hold, so this is the generic example with arbitrary dimensions.
    """
    top = len(new_dims) - 1
    dims = [sum(new_dims[: p + 1]) for p in range(top + 1)]
    sigma = [QMatrix(dims[0], 0)]
    for p in range(1, top + 1):
        sigma.append(
            QMatrix(dims[p], dims[p - 1], {(i, i): Fraction(1) for i in range(dims[p - 1])})
        )
    theta = {}
    offsets = []
    off = 0
    for r in range(top + 1):
        offsets.append(off)
        off += new_dims[r]
    for p in range(top + 1):
        for q in range(p + 1):
            ent = {}
            for r in range(q + 1):
                c = Fraction(comb(p - r, p - q))
                if c:
                    for t in range(new_dims[r]):
                        ent[(offsets[r] + t, offsets[r] + t)] = c
            theta[(q, p)] = QMatrix(dims[q], dims[p], ent)
    return DoldSystem(dims, sigma, theta)


def model_dold_system(n_sites: int, top: int, cap: int = DEFAULT_COSET_CAP) -> DoldSystem:
    """Dold system with B_p the level-p subset space and transfer thetas.

    The sites are closed-manifold-like, so sigma is not induced by any site
    map; it is fitted exactly from the defining relation.  Feasibility needs
    non-decreasing dimensions, i.e. top <= (n_sites+1)/2.
    """
    model = ConfigurationModel(n_sites, k=0, cap=cap)
    dims = [comb(n_sites, p) for p in range(top + 1)]
    theta = {}
    for p in range(top + 1):
        theta[(p, p)] = QMatrix.identity(dims[p])
        for q in range(p):
            theta[(q, p)] = dold_transfer(model, q, p)
    sigma = fit_stabilization(dims, theta)
    return DoldSystem(dims, sigma, theta)


def fit_stabilization(dims: list[int], theta: dict) -> list[QMatrix]:
    """Solve for stabilizations satisfying theta-sigma = theta + sigma-theta.

    Proceeds level by level: the relations for fixed p are linear in
    sigma_p given sigma_0..sigma_{p-1}.  Raises DoldFitError when the
    stacked system is inconsistent (as happens when dimensions decrease).
    """
    top = len(dims) - 1
    sigma: list[QMatrix] = [QMatrix(dims[0], 0)]
    for p in range(1, top + 1):
        blocks = []
        rhs_blocks = []
        for q in range(p):
            blocks.append(theta[(q, p)])
            r = theta[(q, p - 1)]
            if q >= 1:
                r = r + sigma[q] @ theta[(q - 1, p - 1)]
            rhs_blocks.append(r)
        stacked = vstack(blocks)
        rhs = vstack(rhs_blocks)
        cols = []
        for jcol in range(dims[p - 1]):
            x = solve(stacked, rhs.column(jcol))
            if x is None:
                raise DoldFitError(
                    f"no stabilization exists at level {p} for these transfers"
                )
            cols.append(x)
        sigma.append(QMatrix.from_cols(cols, dims[p]))
    return sigma


# ---------------------------------------------------------------------------
# verification


@dataclass
class DoldReport:
    checks: list = field(default_factory=list)  # (name, ok, detail)
    passed: bool = True

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append((name, bool(ok), detail))
        self.passed = self.passed and bool(ok)

    def failures(self):
        return [c for c in self.checks if not c[1]]


def _quotients_by_sigma(sys: DoldSystem) -> list[QuotientBasis]:
    out = []
    for q in range(sys.top + 1):
        total = [{i: Fraction(1)} for i in range(sys.dims[q])]
        sub = [c for c in sys.sigma[q].col_dicts() if c]
        out.append(QuotientBasis(sys.dims[q], total, sub))
    return out


def _stack_projected(sys: DoldSystem, quots, p: int) -> QMatrix:
    """⊕_q pi_q theta_{q,p} : B_p -> ⊕_q B_q/im(sigma_q)."""
    blocks = []
    for q in range(p + 1):
        qb = quots[q]
        cols = []
        for jcol in range(sys.dims[p]):
            vec = sys.theta[(q, p)].column(jcol)
            cols.append({i: v for i, v in enumerate(qb.coords(vec)) if v})
        blocks.append(QMatrix.from_cols(cols, qb.dim))
    return vstack(blocks)


def dold_verify(sys: DoldSystem) -> DoldReport:
    """All structural identities of the triangular transfer algebra.

    Checks the identity thetas, the defining relation, the binomial
    composition law, that the stacked projected transfers are an
    isomorphism, and that theta-after-sigma acts on the associated graded
    as multiplication by p-q on the q-th summand.
    """
    rep = DoldReport()
    P = sys.top
    for p in range(P + 1):
        expected_prev = sys.dims[p - 1] if p >= 1 else 0
        m = sys.sigma[p]
        rep.add(f"sigma_{p} shape", m.rows == sys.dims[p] and m.cols == expected_prev)
    for p in range(P + 1):
        rep.add(f"theta_{p}_{p} identity", sys.theta[(p, p)] == QMatrix.identity(sys.dims[p]))
    for p in range(1, P + 1):
        for q in range(p):
            lhs = sys.theta[(q, p)] @ sys.sigma[p]
            rhs = sys.theta[(q, p - 1)]
            if q >= 1:
                rhs = rhs + sys.sigma[q] @ sys.theta[(q - 1, p - 1)]
            rep.add(f"relation q={q} p={p}", lhs == rhs)
    for p in range(P + 1):
        for m in range(p + 1):
            for q in range(m + 1):
                lhs = sys.theta[(q, p)].scale(comb(p - q, p - m))
                rhs = sys.theta[(q, m)] @ sys.theta[(m, p)]
                rep.add(f"binomial q={q} m={m} p={p}", lhs == rhs)
    quots = _quotients_by_sigma(sys)
    stacked = {}
    for p in range(P + 1):
        phi = _stack_projected(sys, quots, p)
        stacked[p] = phi
        rep.add(
            f"graded decomposition at p={p}",
            phi.rows == sys.dims[p] and rank(phi) == sys.dims[p],
            f"rank {rank(phi)} of {sys.dims[p]}",
        )
    for p in range(1, P + 1):
        comp = sys.theta[(p - 1, p)] @ sys.sigma[p]
        for q in range(p):
            qb = quots[q]
            lead = sys.theta[(q, p - 1)]
            lhs_cols = []
            rhs_cols = []
            for jcol in range(sys.dims[p - 1]):
                lhs_cols.append(
                    {i: v for i, v in enumerate(qb.coords((lead @ comp).column(jcol))) if v}
                )
                rhs_cols.append(
                    {i: v for i, v in enumerate(qb.coords(lead.column(jcol))) if v}
                )
            lhs = QMatrix.from_cols(lhs_cols, qb.dim)
            rhs = QMatrix.from_cols(rhs_cols, qb.dim).scale(p - q)
            rep.add(f"spectrum (p-q)={p - q} at q={q} p={p}", lhs == rhs)
    return rep


@dataclass
class DoldConclusions:
    sigma_injective: dict
    theta_sigma_iso: dict
    theta_iso_where_sigma_iso: dict
    passed: bool


def dold_conclusions(sys: DoldSystem, report: DoldReport | None = None) -> DoldConclusions:
    """Rank certificates: injectivity of sigma, theta∘sigma iso, theta iso.

    Requires a passing verification report (one is computed when omitted).
    """
    if report is None:
        report = dold_verify(sys)
    if not report.passed:
        raise ValueError("dold_conclusions requires a passing verification report")
    sigma_inj = {}
    ts_iso = {}
    t_iso = {}
    ok = True
    for p in range(1, sys.top + 1):
        s = sys.sigma[p]
        sigma_inj[p] = rank(s) == s.cols
        ok = ok and sigma_inj[p]
        comp = sys.theta[(p - 1, p)] @ s
        ts_iso[p] = comp.rows == comp.cols == rank(comp)
        ok = ok and ts_iso[p]
        if sigma_inj[p] and s.rows == s.cols:
            th = sys.theta[(p - 1, p)]
            t_iso[p] = th.rows == th.cols and rank(th) == th.rows
            ok = ok and t_iso[p]
    return DoldConclusions(sigma_inj, ts_iso, t_iso, ok)
