"""Spectral sequences of filtered complexes, totalizations and flag sets.

Pages are computed by the direct subquotient formula: Z^r at column p
collects elements of the p-th filtration stage whose differential drops r
stages, and E^r divides by Z^{r-1} of the previous column plus differentials
arriving from column p+r-1.  A derived-couple evaluator is kept alongside as
an independent cross-check of the page dimensions.

Filtrations are increasing chains of basis-index subsets closed under the
differential, so every stage and quotient is a coordinate subspace and all
page computations reduce to exact kernel/rank calculations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactlin import (
    ChainComplex,
    InvalidComplexError,
    QMatrix,
    QuotientBasis,
    RowBasis,
    chain_map_check,
    homology_basis,
    induced_homology_map,
    kernel_basis,
    rank,
    solve,
)


class InvalidFiltrationError(ValueError):
    """A filtration step is not increasing, not d-closed, or malformed."""


# ---------------------------------------------------------------------------
# filtered complexes


def _normalize_step(step: dict) -> dict:
    return {int(n): frozenset(s) for n, s in step.items() if s}


class FilteredComplex:
    """A complex with an increasing, exhaustive filtration by basis indices.

    ``steps[p]`` maps degree -> frozenset of basis indices.  Steps are kept
    as given (validated); ``proper_steps`` is the normalized view used for
    page computation, with empty leading steps and repeated steps removed
    and a final full step appended when missing.
    """

    def __init__(self, complex: ChainComplex, steps, check: bool = True):
        self.complex = complex
        self.steps = [_normalize_step(s) for s in steps]
        if check:
            self.validate()
        full = {n: frozenset(range(complex.dim(n))) for n in complex.degrees if complex.dim(n)}
        proper = []
        prev: dict = {}
        for s in self.steps:
            if s and s != prev:
                proper.append(s)
                prev = s
        if not proper or proper[-1] != full:
            proper.append(full)
        self.proper_steps = proper

    def validate(self):
        c = self.complex
        e = c.direction
        prev: dict = {}
        for p, step in enumerate(self.steps):
            for n, idxs in step.items():
                if not all(0 <= i < c.dim(n) for i in idxs):
                    raise InvalidFiltrationError(f"step {p} has out-of-range indices at degree {n}")
                if not set(prev.get(n, frozenset())) <= set(idxs) and prev.get(n):
                    raise InvalidFiltrationError(f"step {p} is not increasing at degree {n}")
            for n in prev:
                if n not in step:
                    raise InvalidFiltrationError(f"step {p} dropped degree {n}")
            for n, idxs in step.items():
                m = c.boundary(n)
                for (i, j), v in m.entries.items():
                    if j in idxs and i not in step.get(n + e, frozenset()):
                        raise InvalidFiltrationError(
                            f"step {p} is not closed under the differential at degree {n}"
                        )
            prev = step

    @property
    def length(self) -> int:
        return len(self.proper_steps)

    def stage(self, p: int, n: int) -> frozenset:
        """Indices of the p-th proper stage in degree n (clamped outside)."""
        if p < 0:
            return frozenset()
        if p >= self.length:
            p = self.length - 1
        return self.proper_steps[p].get(n, frozenset())

    def to_json(self) -> dict:
        from .exactlin import complex_to_json

        return {
            "complex": complex_to_json(self.complex),
            "filtration": [
                {str(n): sorted(s) for n, s in step.items()} for step in self.steps
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FilteredComplex":
        from .exactlin import complex_from_json

        c = complex_from_json(data["complex"])
        steps = [
            {int(n): frozenset(idx) for n, idx in step.items()}
            for step in data["filtration"]
        ]
        return cls(c, steps)


def subcomplex_on(c: ChainComplex, index_sets: dict) -> tuple[ChainComplex, dict]:
    """Restrict to the span of the given indices; returns (complex, position maps)."""
    pos = {n: {i: t for t, i in enumerate(sorted(index_sets.get(n, ())))} for n in c.degrees}
    dims = {n: len(pos[n]) for n in c.degrees if pos[n]}
    d = {}
    for n in dims:
        m = c.boundary(n)
        e = c.direction
        ent = {}
        for (i, j), v in m.entries.items():
            if j in pos[n] and i in pos.get(n + e, {}):
                ent[(pos[n + e][i], pos[n][j])] = v
        d[n] = QMatrix(len(pos.get(n + e, {})), dims[n], ent)
    return ChainComplex(dims, d, c.direction), pos


# ---------------------------------------------------------------------------
# pages


@dataclass
class SpectralPages:
    """Bigraded page dimensions, differentials and the limiting page."""

    direction: int
    length: int
    pages: dict = field(default_factory=dict)   # r -> {(p, q): dim}
    diffs: dict = field(default_factory=dict)   # r -> {(p, q): QMatrix}
    einf: dict = field(default_factory=dict)    # (p, q) -> dim
    target: dict = field(default_factory=dict)  # n -> dim H^n(ambient)

    @property
    def r_stab(self) -> int:
        return self.length + 1

    def d_shift(self, r: int) -> tuple[int, int]:
        """Bidegree of d_r: (-r, r+1) cochain, (-r, r-1) chain."""
        return (-r, r + self.direction)

    def dim(self, r: int, p: int, q: int) -> int:
        r = min(r, self.r_stab)
        return self.pages.get(r, {}).get((p, q), 0)

    def einf_dim(self, p: int, q: int) -> int:
        return self.einf.get((p, q), 0)

    def converges(self) -> bool:
        """Sum of limiting dimensions along p+q = n matches the abutment."""
        totals: dict = {}
        for (p, q), d in self.einf.items():
            totals[p + q] = totals.get(p + q, 0) + d
        keys = set(totals) | set(self.target)
        return all(totals.get(n, 0) == self.target.get(n, 0) for n in keys)

    def squares_vanish(self) -> bool:
        """d_r ∘ d_r = 0 wherever consecutive differentials compose."""
        for r, mats in self.diffs.items():
            dp, dq = self.d_shift(r)
            for (p, q), m in mats.items():
                nxt = mats.get((p + dp, q + dq))
                if nxt is not None and not (nxt @ m).is_zero():
                    return False
        return True


class _PageEngine:
    """Shared Z^r / E^r bookkeeping over a fixed filtered complex."""

    def __init__(self, fc: FilteredComplex):
        self.fc = fc
        self.c = fc.complex
        self.e = fc.complex.direction
        self.P = fc.length - 1
        self._z: dict = {}
        self._cell: dict = {}

    def z_space(self, r: int, p: int, n: int) -> list:
        """Generators of {x in F_p, degree n : d x in F_{p-r}} in ambient coordinates."""
        if p < 0:
            return []
        # F_p saturates above P and below -1; clamp the stage indices
        # separately (p and p-r saturate independently).
        hi = min(p, self.P)
        lo = max(min(p - r, self.P), -1)
        key = (hi, lo, n)
        if key in self._z:
            return self._z[key]
        c, e = self.c, self.e
        cols = sorted(self.fc.stage(hi, n))
        if not cols:
            self._z[key] = []
            return []
        low = self.fc.stage(lo, n + e)
        out_rows = [i for i in range(c.dim(n + e)) if i not in low]
        if lo >= self.P or not out_rows:
            self._z[key] = [{j: 1} for j in cols]
            return self._z[key]
        m = c.boundary(n)
        rpos = {i: t for t, i in enumerate(out_rows)}
        cpos = {j: t for t, j in enumerate(cols)}
        ent = {}
        for (i, j), v in m.entries.items():
            if j in cpos and i in rpos:
                ent[(rpos[i], cpos[j])] = v
        mat = QMatrix(len(out_rows), len(cols), ent)
        kb = kernel_basis(mat)
        gens = []
        for col in kb.col_dicts():
            gens.append({cols[t]: v for t, v in col.items()})
        self._z[key] = gens
        return gens

    def cell(self, r: int, p: int, n: int) -> QuotientBasis:
        """E^r at column p, total degree n, as a subquotient with coordinates."""
        key = (r, p, n)
        if key in self._cell:
            return self._cell[key]
        c, e = self.c, self.e
        total = self.z_space(r, p, n)
        sub = list(self.z_space(r - 1, p - 1, n))
        m = c.boundary(n - e)
        for g in self.z_space(r - 1, p + r - 1, n - e):
            img = m.apply(g)
            if img:
                sub.append(img)
        qb = QuotientBasis(c.dim(n), total, sub)
        self._cell[key] = qb
        return qb

    def diff_matrix(self, r: int, p: int, n: int) -> QMatrix:
        """d_r out of (p, n) into (p - r, n + e) in cell coordinates."""
        src = self.cell(r, p, n)
        dst = self.cell(r, p - r, n + self.e)
        m = self.c.boundary(n)
        cols = []
        for rep in src.representatives():
            img = m.apply(rep)
            cols.append({i: v for i, v in enumerate(dst.coords(img)) if v})
        return QMatrix.from_cols(cols, dst.dim)


def compute_pages(fc: FilteredComplex, with_diffs: bool = True,
                  up_to: int | None = None) -> SpectralPages:
    """All pages E^1..E^stab of the filtration spectral sequence.

    The limiting page is reached at r = length + 1; its dimensions, summed
    along p + q = n, agree with the homology of the ambient complex
    (checked by :meth:`SpectralPages.converges`).
    """
    eng = _PageEngine(fc)
    c = fc.complex
    e = c.direction
    P = eng.P
    r_stab = P + 2 if up_to is None else up_to
    r_stab = max(r_stab, 2)
    out = SpectralPages(direction=e, length=fc.length, target=c.homology())
    for r in range(1, r_stab + 1):
        dims = {}
        mats = {}
        for p in range(0, P + 1):
            for n in c.degrees:
                q = n - p
                cell = eng.cell(r, p, n)
                if cell.dim:
                    dims[(p, q)] = cell.dim
        if with_diffs:
            for (p, q) in dims:
                n = p + q
                if eng.cell(r, p - r, n + e).dim and dims[(p, q)]:
                    mats[(p, q)] = eng.diff_matrix(r, p, n)
        out.pages[r] = dims
        if with_diffs:
            out.diffs[r] = mats
    out.einf = dict(out.pages[min(P + 1, r_stab)])
    return out


# ---------------------------------------------------------------------------
# the two-term long exact sequence


@dataclass
class ExactnessReport:
    ranks: dict
    exact: bool
    details: list


def two_step_les(fc: FilteredComplex) -> ExactnessReport:
    """Exactness of H(U) -> H(X) -> H(X/U) -> H(U) shifted, by exact ranks.

    Expects a filtration given by exactly two steps U ⊆ X (U may be empty or
    the whole complex); the connecting map is realized on representatives by
    lifting and applying the ambient differential.
    """
    if len(fc.steps) != 2:
        raise InvalidFiltrationError("two_step_les expects exactly two filtration steps")
    c = fc.complex
    e = c.direction
    u_idx = fc.steps[0]
    full = {n: frozenset(range(c.dim(n))) for n in c.degrees}
    if fc.steps[1] != {n: s for n, s in full.items() if s}:
        raise InvalidFiltrationError("second step must be the full complex")
    cu, upos = subcomplex_on(c, u_idx)
    comp_idx = {n: frozenset(set(full[n]) - set(u_idx.get(n, frozenset()))) for n in c.degrees}
    cq, qpos = subcomplex_on(c, comp_idx)

    incl = {}
    proj = {}
    for n in c.degrees:
        incl[n] = QMatrix(c.dim(n), cu.dim(n), {(i, t): 1 for i, t in upos[n].items()})
        proj[n] = QMatrix(cq.dim(n), c.dim(n), {(t, i): 1 for i, t in qpos[n].items()})
    hu = homology_basis(cu)
    hx = homology_basis(c)
    hq = homology_basis(cq)
    a = induced_homology_map(incl, cu, c, hu, hx)
    b = induced_homology_map(proj, c, cq, hx, hq)

    # connecting map: lift a quotient cycle, differentiate, read off in U
    delta = {}
    for n, basis in hq.items():
        tgt = hu.get(n + e)
        if tgt is None or basis.dim == 0:
            delta[n] = QMatrix.zeros(tgt.dim if tgt else 0, basis.dim)
            continue
        cols = []
        inv_q = {t: i for i, t in qpos[n].items()}
        for rep in basis.representatives():
            lift = {inv_q[t]: v for t, v in rep.items()}
            img = c.boundary(n).apply(lift)
            vec_u = {}
            for i, v in img.items():
                if i not in upos[n + e]:
                    raise InvalidComplexError("connecting image escaped the subcomplex")
                vec_u[upos[n + e][i]] = v
            cols.append({i: v for i, v in enumerate(tgt.coords(vec_u)) if v})
        delta[n] = QMatrix.from_cols(cols, tgt.dim)

    details = []
    exact = True
    ranks = {}
    degrees = sorted(set(hu) | set(hx) | set(hq))
    for n in degrees:
        au = hu.get(n)
        ax = hx.get(n)
        aq = hq.get(n)
        dim_u = au.dim if au else 0
        dim_x = ax.dim if ax else 0
        dim_q = aq.dim if aq else 0
        m_a = a.get(n, QMatrix.zeros(dim_x, dim_u))
        m_b = b.get(n, QMatrix.zeros(dim_q, dim_x))
        m_d = delta.get(n, QMatrix.zeros(hu[n + e].dim if n + e in hu else 0, dim_q))
        prev_d = delta.get(n - e, QMatrix.zeros(dim_u, hq[n - e].dim if n - e in hq else 0))
        ranks[n] = {"incl": rank(m_a), "proj": rank(m_b), "connecting": rank(m_d)}
        checks = [
            ("at H(U)", prev_d, m_a, dim_u),
            ("at H(X)", m_a, m_b, dim_x),
            ("at H(X/U)", m_b, m_d, dim_q),
        ]
        for name, first, second, middle in checks:
            composite_zero = (second @ first).is_zero()
            ok = composite_zero and rank(first) == middle - rank(second)
            exact = exact and ok
            details.append((n, name, ok))
    return ExactnessReport(ranks=ranks, exact=exact, details=details)


# ---------------------------------------------------------------------------
# comparison of spectral sequences


@dataclass
class PageMapReport:
    """Induced maps on every page plus surjectivity/injectivity windows."""

    cells: dict            # (r, p, q) -> (dim_src, dim_dst, rank)
    r_stab: int
    pages_src: SpectralPages
    pages_dst: SpectralPages

    def _window_ok(self, r: int, s, require_iso_from) -> bool:
        for (rr, p, q), (ds, dd, rk) in self.cells.items():
            if rr != r:
                continue
            t = p + q
            if t >= require_iso_from:
                if not (rk == ds == dd):
                    return False
            elif t >= s - 1:
                if rk != dd:
                    return False
        return True

    def hypothesis_at(self, s) -> bool:
        """On E^1: surjective for p+q >= s-1 and bijective for p+q >= s."""
        return self._window_ok(1, s, s)

    def conclusion_at(self, s) -> bool:
        """On the limiting page: same windows as the hypothesis."""
        return self._window_ok(self.r_stab, s, s)


def compare_pages(f: dict, fc_src: FilteredComplex, fc_dst: FilteredComplex) -> PageMapReport:
    """Induced page maps of a filtration-preserving chain map.

    Raises unless f is a chain map respecting both filtrations stepwise.
    The report exposes the window transfer: if the E^1 map is surjective for
    p+q >= s-1 and bijective for p+q >= s, the same holds on the limit page.
    """
    if not chain_map_check(f, fc_src.complex, fc_dst.complex):
        raise ValueError("compare_pages requires a chain map")
    if fc_src.length != fc_dst.length:
        raise InvalidFiltrationError("filtrations must have the same number of proper steps")
    for p in range(fc_src.length):
        for n in fc_src.complex.degrees:
            src_idx = fc_src.stage(p, n)
            tgt = fc_dst.stage(p, n)
            fn = f.get(n)
            if fn is None:
                continue
            for (i, j), v in fn.entries.items():
                if j in src_idx and i not in tgt:
                    raise InvalidFiltrationError("map does not preserve the filtration")

    src_eng = _PageEngine(fc_src)
    dst_eng = _PageEngine(fc_dst)
    pages_src = compute_pages(fc_src, with_diffs=False)
    pages_dst = compute_pages(fc_dst, with_diffs=False)
    r_stab = max(pages_src.r_stab, pages_dst.r_stab)
    cells = {}
    degrees = sorted(set(fc_src.complex.degrees) | set(fc_dst.complex.degrees))
    for r in range(1, r_stab + 1):
        for p in range(0, max(fc_src.length, fc_dst.length)):
            for n in degrees:
                q = n - p
                sc = src_eng.cell(r, p, n)
                dc = dst_eng.cell(r, p, n)
                if sc.dim == 0 and dc.dim == 0:
                    continue
                fn = f.get(n, QMatrix.zeros(fc_dst.complex.dim(n), fc_src.complex.dim(n)))
                cols = []
                for rep in sc.representatives():
                    img = fn.apply(rep)
                    cols.append({i: v for i, v in enumerate(dc.coords(img)) if v})
                mat = QMatrix.from_cols(cols, dc.dim)
                cells[(min(r, r_stab), p, q)] = (sc.dim, dc.dim, rank(mat))
    return PageMapReport(cells=cells, r_stab=r_stab, pages_src=pages_src, pages_dst=pages_dst)


# ---------------------------------------------------------------------------
# derived exact couple (cross-check mode)


def couple_pages(fc: FilteredComplex, r_max: int = 3) -> dict:
    """Page dimensions computed through iterated derived couples.

    Independent of the subquotient route in :func:`compute_pages`.  The
    couple starts from the homology of the stages (A) and of the stage
    quotients (E), with the inclusion map i, the projection map j of
    bidegree (0,0) and the connecting map k of bidegree (-1, 1-direction);
    all later pages are evaluated against these fixed initial matrices:
    d_r pulls k back along i for r-1 steps and applies j, which is the
    r-th derived couple's differential.  Returns {r: {(p, q): dim}}.
    """
    c = fc.complex
    e = c.direction
    P = fc.length - 1

    stage_data = []
    for p in range(P + 1):
        idx = {n: fc.stage(p, n) for n in c.degrees}
        sub, pos = subcomplex_on(c, idx)
        stage_data.append((sub, pos, homology_basis(sub)))
    quot_data = []
    for p in range(P + 1):
        prev = {n: fc.stage(p - 1, n) for n in c.degrees}
        idx = {n: frozenset(fc.stage(p, n) - prev[n]) for n in c.degrees}
        sub, pos = subcomplex_on(c, idx)
        quot_data.append((sub, pos, homology_basis(sub)))

    def hdim(data, p, n):
        if p < 0 or p > P:
            return 0
        hb = data[p][2].get(n)
        return hb.dim if hb else 0

    i_maps = {}
    j_maps = {}
    k_maps = {}
    for p in range(P + 1):
        subp, posp, hbp = stage_data[p]
        qp, qpos, hbq = quot_data[p]
        for n in c.degrees:
            if p >= 1:
                subm, posm, hbm = stage_data[p - 1]
                f = {}
                for m in c.degrees:
                    ent = {(posp[m][i], t): 1 for i, t in posm[m].items()}
                    f[m] = QMatrix(subp.dim(m), subm.dim(m), ent)
                i_maps[(p - 1, n)] = induced_homology_map(f, subm, subp, hbm, hbp).get(
                    n, QMatrix.zeros(hdim(stage_data, p, n), hdim(stage_data, p - 1, n))
                )
            f = {}
            for m in c.degrees:
                ent = {(qpos[m][i], t): 1 for i, t in posp[m].items() if i in qpos[m]}
                f[m] = QMatrix(qp.dim(m), subp.dim(m), ent)
            j_maps[(p, n)] = induced_homology_map(f, subp, qp, hbp, hbq).get(
                n, QMatrix.zeros(hdim(quot_data, p, n), hdim(stage_data, p, n))
            )
            # k: lift a quotient cycle, differentiate, read off in the lower stage
            tgt_dim = hdim(stage_data, p - 1, n + e)
            src_basis = hbq.get(n)
            if src_basis is None or src_basis.dim == 0 or p < 1:
                k_maps[(p, n)] = QMatrix.zeros(tgt_dim, src_basis.dim if src_basis else 0)
                continue
            subm, posm, hbm = stage_data[p - 1]
            tgt_basis = hbm.get(n + e)
            inv_q = {t: i for i, t in qpos[n].items()}
            cols = []
            for rep in src_basis.representatives():
                lift = {inv_q[t]: v for t, v in rep.items()}
                img = c.boundary(n).apply(lift)
                vec = {}
                for i, v in img.items():
                    if i not in posm[n + e]:
                        raise InvalidComplexError("connecting image escaped the lower stage")
                    vec[posm[n + e][i]] = v
                if tgt_basis is None:
                    cols.append({})
                else:
                    cols.append({i: v for i, v in enumerate(tgt_basis.coords(vec)) if v})
            k_maps[(p, n)] = QMatrix.from_cols(cols, tgt_dim)

    # page state per cell: E^r = span(Z)/span(B) over the initial E^1 basis
    e_state = {
        (p, n): ([{t: 1} for t in range(hdim(quot_data, p, n))], [])
        for p in range(P + 1)
        for n in c.degrees
    }

    def cell_qb(p, n):
        if p < 0 or p > P:
            return None
        z, b = e_state[(p, n)]
        return QuotientBasis(hdim(quot_data, p, n), z, b)

    def pull_back(vec, from_p, to_p, n):
        col = from_p
        while col > to_p:
            x = solve(i_maps[(col - 1, n)], vec)
            if x is None:
                raise InvalidComplexError("derived couple: vector has no i-preimage")
            vec = x
            col -= 1
        return vec

    out = {}
    for r in range(1, r_max + 1):
        cells = {(p, n): cell_qb(p, n) for p in range(P + 1) for n in c.degrees}
        dims = {}
        for (p, n), qb in cells.items():
            if qb.dim:
                dims[(p, n - p)] = qb.dim
        out[r] = dims
        if r == r_max:
            break

        # d_r = j ∘ i^{-(r-1)} ∘ k on class representatives
        dmats = {}
        for (p, n), qb in cells.items():
            tgt = cells.get((p - r, n + e))
            if qb.dim == 0 or tgt is None:
                continue
            cols = []
            for rep in qb.representatives():
                ka = k_maps[(p, n)].apply(rep)
                vec = pull_back(ka, p - 1, p - r, n + e)
                img = j_maps[(p - r, n + e)].apply(vec)
                cols.append({i: v for i, v in enumerate(tgt.coords(img)) if v})
            dmats[(p, n)] = QMatrix.from_cols(cols, tgt.dim)

        new_state = {}
        for (p, n), qb in cells.items():
            z, b = e_state[(p, n)]
            newz = list(b)
            newb = list(b)
            if qb.dim:
                reps = qb.representatives()
                m = dmats.get((p, n))
                if m is None:
                    newz.extend(reps)
                else:
                    for col in kernel_basis(m).col_dicts():
                        vec: dict = {}
                        for t, v in col.items():
                            for cidx, w in reps[t].items():
                                vec[cidx] = vec.get(cidx, 0) + v * w
                        vec = {a: v for a, v in vec.items() if v}
                        if vec:
                            newz.append(vec)
            src = cells.get((p + r, n - e))
            msrc = dmats.get((p + r, n - e))
            if src is not None and msrc is not None:
                reps_here = cells[(p, n)].representatives()
                for j2 in range(msrc.cols):
                    colv = msrc.column(j2)
                    vec = {}
                    for t, v in colv.items():
                        for cidx, w in reps_here[t].items():
                            vec[cidx] = vec.get(cidx, 0) + v * w
                    vec = {a: v for a, v in vec.items() if v}
                    if vec:
                        newb.append(vec)
                        newz.append(vec)
            new_state[(p, n)] = (newz, newb)
        e_state = new_state
    return out


# ---------------------------------------------------------------------------
# semisimplicial complexes, totalization, realization


class SemisimplicialComplex:
    """Levelwise chain complexes A_0..A_N with face maps and no degeneracies.

    ``faces[p][i]`` is the i-th face A_p -> A_{p-1} (0 <= i <= p), a chain
    map; the simplicial identities d_i d_j = d_{j-1} d_i (i < j) are
    verified.  An optional augmentation maps A_0 to an extra complex, with
    equal composites along the two faces of A_1.
    """

    def __init__(self, levels, faces, augmentation=None, check: bool = True):
        self.levels = list(levels)
        self.faces = {p: list(fs) for p, fs in faces.items()}
        self.augmentation = augmentation  # (complex, {degree: QMatrix}) or None
        if check:
            self.validate()

    @property
    def top(self) -> int:
        return len(self.levels) - 1

    def face(self, p: int, i: int) -> dict:
        return self.faces[p][i]

    def validate(self):
        for p in range(1, len(self.levels)):
            fs = self.faces.get(p, [])
            if len(fs) != p + 1:
                raise InvalidComplexError(f"level {p} must carry {p + 1} face maps")
            for i, f in enumerate(fs):
                if not chain_map_check(f, self.levels[p], self.levels[p - 1]):
                    raise InvalidComplexError(f"face {i} at level {p} is not a chain map")
        for p in range(2, len(self.levels)):
            for j in range(p + 1):
                for i in range(j):
                    left = _compose_maps(self.face(p - 1, i), self.face(p, j),
                                         self.levels[p], self.levels[p - 1], self.levels[p - 2])
                    right = _compose_maps(self.face(p - 1, j - 1), self.face(p, i),
                                          self.levels[p], self.levels[p - 1], self.levels[p - 2])
                    if left != right:
                        raise InvalidComplexError(
                            f"face identity fails at level {p}: d_{i} d_{j} != d_{j-1} d_{i}"
                        )
        if self.augmentation is not None:
            aug_c, aug_f = self.augmentation
            if not chain_map_check(aug_f, self.levels[0], aug_c):
                raise InvalidComplexError("augmentation is not a chain map")
            if len(self.levels) > 1:
                f0 = _compose_maps(aug_f, self.face(1, 0), self.levels[1], self.levels[0], aug_c)
                f1 = _compose_maps(aug_f, self.face(1, 1), self.levels[1], self.levels[0], aug_c)
                if f0 != f1:
                    raise InvalidComplexError("augmentation does not equalize the two faces")


def _compose_maps(g: dict, f: dict, src: ChainComplex, mid: ChainComplex,
                  dst: ChainComplex) -> dict:
    out = {}
    for n in src.degrees:
        fn = f.get(n, QMatrix.zeros(mid.dim(n), src.dim(n)))
        gn = g.get(n, QMatrix.zeros(dst.dim(n), mid.dim(n)))
        m = gn @ fn
        if not m.is_zero():
            out[n] = m
    return out


def _alternating_face_sum(ss: SemisimplicialComplex, p: int) -> dict:
    """The chain map sum_i (-1)^i d_i : A_p -> A_{p-1}."""
    src = ss.levels[p]
    dst = ss.levels[p - 1]
    out = {}
    for n in src.degrees:
        acc = QMatrix.zeros(dst.dim(n), src.dim(n))
        for i in range(p + 1):
            fi = ss.face(p, i).get(n)
            if fi is not None:
                acc = acc + fi.scale((-1) ** i)
        if not acc.is_zero():
            out[n] = acc
    return out


def totalize(ss: SemisimplicialComplex, include_augmentation: bool = False):
    """Total complex of the levels: T_n = ⊕_p (A_p)_{n-p}.

    The differential is the internal one plus (-1)^q times the alternating
    face sum on internal degree q.  Returns (complex, basis) where basis[n]
    is the ordered list of (level, index-at-level) pairs.
    """
    levels = list(enumerate(ss.levels))
    lowest = 0
    horiz = {p: _alternating_face_sum(ss, p) for p in range(1, len(ss.levels))}
    if include_augmentation:
        if ss.augmentation is None:
            raise InvalidComplexError("no augmentation to include")
        aug_c, aug_f = ss.augmentation
        levels = [(-1, aug_c)] + [(p, c) for p, c in levels]
        horiz[0] = aug_f
        lowest = -1

    basis: dict = {}
    for p, c in levels:
        for q in c.degrees:
            for t in range(c.dim(q)):
                basis.setdefault(p + q, []).append((p, t))
    pos = {n: {pt: s for s, pt in enumerate(items)} for n, items in basis.items()}
    dims = {n: len(items) for n, items in basis.items()}
    level_by_p = dict(levels)
    d = {}
    for n, items in basis.items():
        ent = {}
        for s, (p, t) in enumerate(items):
            q = n - p
            c = level_by_p[p]
            for (i, j), v in c.boundary(q).entries.items():
                if j == t:
                    ent[(pos[n - 1][(p, i)], s)] = ent.get((pos[n - 1][(p, i)], s), 0) + v
            if p > lowest:
                hq = horiz.get(p, {}).get(q)
                if hq is not None:
                    sign = (-1) ** q
                    for (i, j), v in hq.entries.items():
                        if j == t:
                            key = (pos[n - 1][(p - 1, i)], s)
                            ent[key] = ent.get(key, 0) + sign * v
        m = QMatrix(dims.get(n - 1, 0), dims[n], {k: v for k, v in ent.items() if v})
        if not m.is_zero():
            d[n] = m
    return ChainComplex(dims, d, -1), basis


def realization_ss(ss: SemisimplicialComplex) -> SpectralPages:
    """Spectral sequence of the level filtration of the total complex.

    First page at (p, q) is H_q(A_p); the first differential is induced by
    the alternating face sum.
    """
    total, basis = totalize(ss)
    steps = []
    for top in range(len(ss.levels)):
        step = {}
        for n, items in basis.items():
            idx = frozenset(s for s, (p, t) in enumerate(items) if p <= top)
            if idx:
                step[n] = idx
        steps.append(step)
    return compute_pages(FilteredComplex(total, steps))


def augmentation_cone(ss: SemisimplicialComplex) -> ChainComplex:
    """Complex whose acyclicity certifies the augmentation as a quasi-iso."""
    total, _ = totalize(ss, include_augmentation=True)
    return total


# ---------------------------------------------------------------------------
# flag semisimplicial sets


class FlagSetError(ValueError):
    """The edge data is not a symmetric, irreflexive relation."""


def _flag_simplices(vertices, edges, dim: int):
    """Ordered (dim+1)-tuples of distinct, pairwise adjacent vertices."""
    vertices = sorted(vertices)
    adj = {v: set() for v in vertices}
    for a, b in edges:
        if a == b:
            raise FlagSetError("edges must join distinct vertices")
        if a not in adj or b not in adj:
            raise FlagSetError("edge endpoint outside the vertex set")
        adj[a].add(b)
        adj[b].add(a)
    levels = [[(v,) for v in vertices]]
    for p in range(1, dim + 1):
        nxt = []
        for tup in levels[p - 1]:
            for v in vertices:
                if v not in tup and all(v in adj[u] for u in tup):
                    nxt.append(tup + (v,))
        levels.append(sorted(nxt))
    return levels, adj


def flag_chain_complex(vertices, edges, dim: int) -> ChainComplex:
    """Augmented chain complex of the flag set through the given dimension."""
    levels, _ = _flag_simplices(vertices, edges, dim)
    pos = [{s: t for t, s in enumerate(lv)} for lv in levels]
    dims = {-1: 1}
    d = {0: QMatrix(1, len(levels[0]), {(0, j): 1 for j in range(len(levels[0]))})}
    for p, lv in enumerate(levels):
        if not lv:
            continue
        dims[p] = len(lv)
        if p == 0:
            continue
        ent = {}
        for j, tup in enumerate(lv):
            for i in range(p + 1):
                face = tup[:i] + tup[i + 1 :]
                ent[(pos[p - 1][face], j)] = (-1) ** i
        d[p] = QMatrix(len(levels[p - 1]), len(lv), ent)
    return ChainComplex(dims, d, -1)


@dataclass
class FlagReport:
    simplex_counts: list
    domination_holds: bool
    dominating_vertex: object
    reduced_betti: dict
    contractible_through: int | None


def flag_set_check(vertices, edges, truncation: int) -> FlagReport:
    """Build the flag set to the truncation level and test the cone criterion.

    ``domination_holds`` records whether every subset of the (finite) vertex
    set admits a vertex adjacent to all its members — the finite shadow of
    the criterion guaranteeing weak contractibility.  When some vertex is
    adjacent to all others, the reduced homology of the realization is
    verified to vanish through degree truncation - 1.
    """
    levels, adj = _flag_simplices(vertices, edges, truncation)
    vertices = sorted(vertices)
    # proper subsets only: no vertex is adjacent to itself, so the full
    # subset can never be dominated inside a finite vertex set
    domination = True
    for mask in range(1, 2 ** len(vertices) - 1):
        subset = [v for t, v in enumerate(vertices) if mask >> t & 1]
        if not any(all(v in adj[u] for u in subset) for v in vertices):
            domination = False
            break
    hub = None
    for v in vertices:
        if all(v in adj[u] for u in vertices if u != v) and len(vertices) > 1:
            hub = v
            break
    betti = {}
    cc = flag_chain_complex(vertices, edges, truncation)
    hom = cc.homology()
    for q in range(0, truncation):
        betti[q] = hom.get(q, 0)
    # vanishing is reported as observed, never inferred: a vertex adjacent to
    # all others does not dominate collections containing it, so a hub alone
    # does not force contractibility (two parallel ordered edges already
    # bound a circle)
    contractible_through = (
        truncation - 1 if all(betti.get(q, 0) == 0 for q in range(truncation)) else None
    )
    return FlagReport(
        simplex_counts=[len(lv) for lv in levels],
        domination_holds=domination,
        dominating_vertex=hub,
        reduced_betti=betti,
        contractible_through=contractible_through,
    )
