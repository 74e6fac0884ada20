"""Exact rational sparse linear algebra, chain complexes and coinvariants.

Everything here is exact: scalars are ``fractions.Fraction`` and elimination
is fraction-free over the integers (see ``symcomp._kernel``), so ranks,
homology dimensions and induced maps are never subject to rounding.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd, lcm

from . import _kernel

Q = Fraction


class InvalidComplexError(ValueError):
    """Boundary maps fail shape or composition requirements."""


class InvalidActionError(ValueError):
    """A group action fails equivariance or consistency requirements."""


def rat_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rat_parse(s) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# sparse matrices


class QMatrix:
    """Immutable sparse matrix over the rationals; no explicit zero entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        clean = {}
        if entries:
            for (i, j), v in entries.items() if isinstance(entries, dict) else entries:
                v = Fraction(v)
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ValueError(f"entry ({i},{j}) outside {rows}x{cols} matrix")
                if v:
                    clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, *a):
        raise AttributeError("QMatrix is immutable")

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_rows(cls, row_dicts, cols):
        ent = {}
        for i, row in enumerate(row_dicts):
            for j, v in row.items():
                if v:
                    ent[(i, j)] = Fraction(v)
        return cls(len(row_dicts), cols, ent)

    @classmethod
    def from_cols(cls, col_dicts, rows):
        ent = {}
        for j, col in enumerate(col_dicts):
            for i, v in col.items():
                if v:
                    ent[(i, j)] = Fraction(v)
        return cls(rows, len(col_dicts), ent)

    @classmethod
    def from_dense(cls, lists):
        rows = len(lists)
        cols = len(lists[0]) if rows else 0
        return cls(rows, cols, {(i, j): v for i, r in enumerate(lists) for j, v in enumerate(r)})

    def row_dicts(self):
        out = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def col_dicts(self):
        out = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def column(self, j):
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def transpose(self):
        return QMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, QMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix sum")
        ent = dict(self.entries)
        for k, v in other.entries.items():
            w = ent.get(k, 0) + v
            if w:
                ent[k] = w
            else:
                ent.pop(k, None)
        return QMatrix(self.rows, self.cols, ent)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return QMatrix.zeros(self.rows, self.cols)
        return QMatrix(self.rows, self.cols, {k: c * v for k, v in self.entries.items()})

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        other_rows = [dict() for _ in range(other.rows)]
        for (i, j), v in other.entries.items():
            other_rows[i][j] = v
        acc: dict = {}
        for (i, k), v in self.entries.items():
            for j, w in other_rows[k].items():
                key = (i, j)
                acc[key] = acc.get(key, 0) + v * w
        return QMatrix(self.rows, other.cols, acc)

    def apply(self, vec: dict) -> dict:
        """Apply to a sparse column vector {index: value}."""
        out: dict = {}
        for (i, j), v in self.entries.items():
            w = vec.get(j)
            if w:
                out[i] = out.get(i, 0) + v * w
        return {i: v for i, v in out.items() if v}

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def to_triplets(self):
        return sorted((i, j, rat_str(v)) for (i, j), v in self.entries.items())

    @classmethod
    def from_triplets(cls, rows, cols, triplets):
        return cls(rows, cols, {(i, j): rat_parse(v) for i, j, v in triplets})


def hstack(mats):
    rows = mats[0].rows
    ent = {}
    off = 0
    for m in mats:
        if m.rows != rows:
            raise ValueError("row mismatch in hstack")
        for (i, j), v in m.entries.items():
            ent[(i, j + off)] = v
        off += m.cols
    return QMatrix(rows, off, ent)


def vstack(mats):
    cols = mats[0].cols
    ent = {}
    off = 0
    for m in mats:
        if m.cols != cols:
            raise ValueError("column mismatch in vstack")
        for (i, j), v in m.entries.items():
            ent[(i + off, j)] = v
        off += m.rows
    return QMatrix(off, cols, ent)


# ---------------------------------------------------------------------------
# elimination


def _integer_row(row: dict) -> tuple[list, list]:
    denom = 1
    for v in row.values():
        denom = lcm(denom, Fraction(v).denominator)
    cols = sorted(row)
    vals = []
    keep = []
    for c in cols:
        v = Fraction(row[c])
        n = v.numerator * (denom // v.denominator)
        if n:
            keep.append(c)
            vals.append(n)
    return keep, vals


def _echelon_rows(row_dicts):
    """Kernel echelon on rational row dicts; returns (pivots, integer rows)."""
    rows = [_integer_row(r) for r in row_dicts]
    return _kernel.echelon([r for r in rows if r[0]], 0)


def _back_eliminate(piv_cols, piv_rows):
    """Turn kernel echelon output into canonical RREF rows (Fraction dicts)."""
    rows = []
    for cols, vals in piv_rows:
        lead = Fraction(vals[0])
        rows.append({c: Fraction(v) / lead for c, v in zip(cols, vals)})
    for i in range(len(rows) - 1, -1, -1):
        for j in range(i + 1, len(rows)):
            pc = piv_cols[j]
            e = rows[i].get(pc)
            if e:
                rj = rows[j]
                ri = rows[i]
                for c, v in rj.items():
                    w = ri.get(c, 0) - e * v
                    if w:
                        ri[c] = w
                    else:
                        ri.pop(c, None)
    return rows


def rank(m: QMatrix) -> int:
    """Exact rank over the rationals."""
    pivots, _ = _echelon_rows(m.row_dicts())
    return len(pivots)


def rref(m: QMatrix) -> tuple[list, list]:
    """Reduced row echelon form: (pivot columns, canonical rows as dicts)."""
    piv, rows = _echelon_rows(m.row_dicts())
    return piv, _back_eliminate(piv, rows)


def kernel_basis(m: QMatrix) -> QMatrix:
    """Matrix whose columns form the canonical basis of the null space."""
    piv, rows = rref(m)
    piv_set = set(piv)
    free = [c for c in range(m.cols) if c not in piv_set]
    cols = []
    for f in free:
        vec = {f: Fraction(1)}
        for p, row in zip(piv, rows):
            e = row.get(f)
            if e:
                vec[p] = -e
        cols.append(vec)
    return QMatrix.from_cols(cols, m.cols)


def image_basis(m: QMatrix) -> QMatrix:
    """Matrix whose columns form the canonical basis of the column space."""
    _, rows = rref(m.transpose())
    return QMatrix.from_cols(rows, m.rows)


def solve(m: QMatrix, rhs: dict) -> dict | None:
    """One exact solution of m x = rhs, or None if inconsistent."""
    aug_rows = m.row_dicts()
    b = m.cols
    for i, v in rhs.items():
        if v:
            aug_rows[i][b] = Fraction(v)
    piv, rows = _echelon_rows(aug_rows)
    if b in piv:
        return None
    rows = _back_eliminate(piv, rows)
    x = {}
    for p, row in zip(piv, rows):
        v = row.get(b)
        if v:
            x[p] = v
    return x


def solve_matrix(m: QMatrix, rhs: QMatrix) -> QMatrix | None:
    """Solve m X = rhs column by column; None if any column is inconsistent."""
    cols = []
    for j in range(rhs.cols):
        x = solve(m, rhs.column(j))
        if x is None:
            return None
        cols.append(x)
    return QMatrix.from_cols(cols, m.cols)


# ---------------------------------------------------------------------------
# row spaces and subquotients


class RowBasis:
    """A subspace kept as canonical RREF rows (dicts col -> Fraction)."""

    __slots__ = ("ambient", "pivots", "rows")

    def __init__(self, ambient: int, pivots=None, rows=None):
        self.ambient = ambient
        self.pivots = list(pivots or [])
        self.rows = list(rows or [])

    @classmethod
    def from_vectors(cls, ambient: int, vectors) -> "RowBasis":
        piv, rows = _echelon_rows(list(vectors))
        return cls(ambient, piv, _back_eliminate(piv, rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> tuple[dict, list]:
        """Reduce vec modulo the subspace; returns (residual, coefficients)."""
        residual = {c: Fraction(v) for c, v in vec.items() if v}
        coeffs = []
        for p, row in zip(self.pivots, self.rows):
            e = residual.get(p)
            if e:
                coeffs.append(e)
                for c, v in row.items():
                    w = residual.get(c, 0) - e * v
                    if w:
                        residual[c] = w
                    else:
                        residual.pop(c, None)
            else:
                coeffs.append(Fraction(0))
        return residual, coeffs

    def contains(self, vec: dict) -> bool:
        residual, _ = self.reduce(vec)
        return not residual

    def basis_matrix(self) -> QMatrix:
        return QMatrix.from_cols(self.rows, self.ambient)


class QuotientBasis:
    """Subquotient span(total)/span(sub) with explicit coordinates.

    Representatives are the canonical rows of the complement; ``coords``
    raises if the vector does not lie in span(total) + span(sub).
    """

    __slots__ = ("ambient", "sub", "comp")

    def __init__(self, ambient: int, total_vectors, sub_vectors):
        self.ambient = ambient
        self.sub = RowBasis.from_vectors(ambient, sub_vectors)
        residuals = []
        for v in total_vectors:
            r, _ = self.sub.reduce(v)
            if r:
                residuals.append(r)
        self.comp = RowBasis.from_vectors(ambient, residuals)

    @property
    def dim(self) -> int:
        return self.comp.dim

    def representatives(self) -> list:
        return [dict(r) for r in self.comp.rows]

    def coords(self, vec: dict) -> list:
        residual, _ = self.sub.reduce(vec)
        residual, coeffs = self.comp.reduce(residual)
        if residual:
            raise ValueError("vector not contained in the subquotient's total space")
        return coeffs


# ---------------------------------------------------------------------------
# chain complexes


class ChainComplex:
    """Finite complex of rational vector spaces.

    ``direction=-1`` is homological (d: C_n -> C_{n-1}); ``direction=+1`` is
    the cochain convention.  Differentials are keyed by source degree; missing
    keys are zero maps.
    """

    __slots__ = ("dims", "d", "direction")

    def __init__(self, dims: dict, d: dict, direction: int = -1, check: bool = True):
        if direction not in (-1, 1):
            raise InvalidComplexError("direction must be -1 or +1")
        self.dims = {n: int(k) for n, k in dims.items() if k}
        self.d = {}
        for n, m in d.items():
            if m is not None and not m.is_zero():
                self.d[n] = m
        self.direction = direction
        if check:
            self.validate()

    def validate(self):
        for n, m in self.d.items():
            if m.cols != self.dim(n) or m.rows != self.dim(n + self.direction):
                raise InvalidComplexError(
                    f"differential at degree {n} has shape {m.rows}x{m.cols}, "
                    f"expected {self.dim(n + self.direction)}x{self.dim(n)}"
                )
        for n in self.d:
            nxt = self.d.get(n + self.direction)
            if nxt is not None and not (nxt @ self.d[n]).is_zero():
                raise InvalidComplexError(f"d∘d is nonzero out of degree {n}")

    @property
    def degrees(self):
        if not self.dims:
            return []
        lo = min(self.dims)
        hi = max(self.dims)
        return list(range(lo, hi + 1))

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def boundary(self, n: int) -> QMatrix:
        m = self.d.get(n)
        if m is None:
            return QMatrix.zeros(self.dim(n + self.direction), self.dim(n))
        return m

    def homology(self) -> dict:
        """Betti numbers per degree: dim - rank(out) - rank(in)."""
        out = {}
        for n in self.degrees:
            if self.dim(n) == 0:
                continue
            b = self.dim(n) - rank(self.boundary(n)) - rank(self.boundary(n - self.direction))
            out[n] = b
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * k for n, k in self.dims.items())


def zero_complex(direction: int = -1) -> ChainComplex:
    return ChainComplex({}, {}, direction)


def chain_map_check(f: dict, src: ChainComplex, dst: ChainComplex) -> bool:
    """True iff the degreewise matrices commute with the differentials."""
    if src.direction != dst.direction:
        raise ValueError("chain map between complexes of different direction")
    e = src.direction
    degrees = set(src.degrees) | set(dst.degrees)
    for n in degrees:
        fn = f.get(n, QMatrix.zeros(dst.dim(n), src.dim(n)))
        fnext = f.get(n + e, QMatrix.zeros(dst.dim(n + e), src.dim(n + e)))
        if fn.rows != dst.dim(n) or fn.cols != src.dim(n):
            raise ValueError(f"component at degree {n} has wrong shape")
        if fnext @ src.boundary(n) != dst.boundary(n) @ fn:
            return False
    return True


def mapping_cone(f: dict, src: ChainComplex, dst: ChainComplex) -> ChainComplex:
    """Cone of a chain map; acyclic iff f is a quasi-isomorphism.

    Cone_n = dst_n ⊕ src_{n+e} with D(y, x) = (d y + f x, -d x), where e is
    the common direction.
    """
    if not chain_map_check(f, src, dst):
        raise ValueError("mapping_cone requires a chain map")
    e = src.direction
    dims = {}
    for n in set(dst.degrees) | {m - e for m in src.degrees}:
        total = dst.dim(n) + src.dim(n + e)
        if total:
            dims[n] = total
    d = {}
    for n in dims:
        rows = dst.dim(n + e) + src.dim(n + 2 * e)
        cols = dims[n]
        ent = {}
        for (i, j), v in dst.boundary(n).entries.items():
            ent[(i, j)] = v
        fn = f.get(n + e, QMatrix.zeros(dst.dim(n + e), src.dim(n + e)))
        for (i, j), v in fn.entries.items():
            ent[(i, j + dst.dim(n))] = v
        for (i, j), v in src.boundary(n + e).entries.items():
            ent[(i + dst.dim(n + e), j + dst.dim(n))] = -v
        if ent:
            d[n] = QMatrix(rows, cols, ent)
    return ChainComplex(dims, d, e)


def homology_basis(c: ChainComplex) -> dict:
    """Per-degree QuotientBasis cycles/boundaries with coordinates."""
    out = {}
    for n in c.degrees:
        if c.dim(n) == 0:
            continue
        cycles = kernel_basis(c.boundary(n)).col_dicts()
        boundaries = c.boundary(n - c.direction).col_dicts() if c.dim(n - c.direction) else []
        out[n] = QuotientBasis(c.dim(n), cycles, boundaries)
    return out


def induced_homology_map(f: dict, src: ChainComplex, dst: ChainComplex,
                         hb_src=None, hb_dst=None) -> dict:
    """Matrices induced on homology by a chain map."""
    if not chain_map_check(f, src, dst):
        raise ValueError("induced_homology_map requires a chain map")
    hb_src = hb_src or homology_basis(src)
    hb_dst = hb_dst or homology_basis(dst)
    out = {}
    for n in set(hb_src) | set(hb_dst):
        hs = hb_src.get(n)
        hd = hb_dst.get(n)
        sdim = hs.dim if hs else 0
        ddim = hd.dim if hd else 0
        if sdim == 0 or ddim == 0:
            out[n] = QMatrix.zeros(ddim, sdim)
            continue
        fn = f.get(n, QMatrix.zeros(dst.dim(n), src.dim(n)))
        cols = []
        for rep in hs.representatives():
            img = fn.apply(rep)
            cols.append({i: v for i, v in enumerate(hd.coords(img)) if v})
        out[n] = QMatrix.from_cols(cols, ddim)
    return out


# ---------------------------------------------------------------------------
# group actions and coinvariants

DEFAULT_ORDER_CAP = factorial(10)


def perm_matrix(perm: tuple, signs=None) -> QMatrix:
    """Matrix of a permutation given by 1-based images; optional signs."""
    n = len(perm)
    ent = {}
    for j in range(n):
        s = 1 if signs is None else signs[j]
        ent[(perm[j] - 1, j)] = Fraction(s)
    return QMatrix(n, n, ent)


def compose_perms(p: tuple, q: tuple) -> tuple:
    """(p∘q)(i) = p(q(i)), images 1-based."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def invert_perm(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v - 1] = i + 1
    return tuple(inv)


class GroupAction:
    """A finite group acting degreewise on a complex.

    Generators are given as (permutation, matrices-per-degree); the
    permutation (1-based image tuple) names the element inside a symmetric
    group and may be None for anonymous generators.  Expansion from
    generators stops at ``order_cap``.
    """

    def __init__(self, generators, order_cap: int = DEFAULT_ORDER_CAP):
        self.generators = []
        for perm, mats in generators:
            self.generators.append((tuple(perm) if perm is not None else None, dict(mats)))
        self.order_cap = order_cap
        self._elements = None

    @property
    def degrees(self):
        degs = set()
        for _, mats in self.generators:
            degs.update(mats)
        return sorted(degs)

    def generator_matrices(self, n: int):
        out = []
        for _, mats in self.generators:
            m = mats.get(n)
            if m is not None:
                out.append(m)
        return out

    def _key(self, perm, mats):
        if perm is not None:
            return perm
        return tuple((n, frozenset(m.entries.items())) for n, m in sorted(mats.items()))

    def elements(self):
        """All group elements as (perm-or-None, matrices) via closure.

        Raises InvalidActionError if two generator words describing the same
        permutation disagree on matrices (the assignment must respect group
        relations), or if the closure exceeds the order cap.
        """
        if self._elements is not None:
            return self._elements
        degs = self.degrees
        ident_mats = {}
        for n in degs:
            size = None
            for _, mats in self.generators:
                if n in mats:
                    size = mats[n].cols
                    break
            ident_mats[n] = QMatrix.identity(size)
        id_perm = None
        for perm, _ in self.generators:
            if perm is not None:
                id_perm = tuple(range(1, len(perm) + 1))
                break
        seen = {}
        start = (id_perm, ident_mats)
        seen[self._key(*start)] = start
        frontier = [start]
        while frontier:
            nxt = []
            for perm, mats in frontier:
                for gperm, gmats in self.generators:
                    if (perm is None) != (gperm is None):
                        raise InvalidActionError("mixed named and anonymous generators")
                    nperm = compose_perms(gperm, perm) if perm is not None else None
                    nmats = {n: gmats[n] @ mats[n] for n in degs}
                    key = self._key(nperm, nmats)
                    prior = seen.get(key)
                    if prior is None:
                        if len(seen) >= self.order_cap:
                            raise InvalidActionError("group closure exceeds the order cap")
                        seen[key] = (nperm, nmats)
                        nxt.append((nperm, nmats))
                    elif nperm is not None and prior[1] != nmats:
                        raise InvalidActionError(
                            "action does not respect group relations: same permutation, "
                            "different matrices"
                        )
            frontier = nxt
        self._elements = list(seen.values())
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def validate(self, c: ChainComplex):
        """Check entry constraints, invertibility and equivariance."""
        for perm, mats in self.generators:
            for n, m in mats.items():
                if m.rows != c.dim(n) or m.cols != c.dim(n):
                    raise InvalidActionError(f"action matrix at degree {n} has wrong shape")
                for v in m.entries.values():
                    if v not in (1, -1):
                        raise InvalidActionError("action matrix entries must be 0 or ±1")
                if rank(m) != m.cols:
                    raise InvalidActionError("action matrix is not invertible")
        for perm, mats in self.generators:
            for n in c.degrees:
                gn = mats.get(n, QMatrix.identity(c.dim(n)))
                gnext = mats.get(n + c.direction, QMatrix.identity(c.dim(n + c.direction)))
                if gnext @ c.boundary(n) != c.boundary(n) @ gn:
                    raise InvalidActionError(f"generator does not commute with d at degree {n}")


def symmetric_action(n_letters: int, mats_for_transposition, degrees=None) -> GroupAction:
    """Action of the symmetric group generated by adjacent transpositions.

    ``mats_for_transposition(i)`` returns the per-degree matrices of the
    transposition (i, i+1), 1-based.
    """
    gens = []
    for i in range(1, n_letters):
        perm = list(range(1, n_letters + 1))
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
        gens.append((tuple(perm), mats_for_transposition(i)))
    return GroupAction(gens)


class CoinvariantComplex:
    """Quotient complex together with projection and section matrices."""

    __slots__ = ("complex", "proj", "sect")

    def __init__(self, complex: ChainComplex, proj: dict, sect: dict):
        self.complex = complex
        self.proj = proj
        self.sect = sect


def coinvariant_data(c: ChainComplex, action: GroupAction, method: str = "auto",
                     check: bool = True) -> CoinvariantComplex:
    """Degreewise quotient by the span of g·x - x, with induced boundary.

    ``method`` is "average" (image of the averaging idempotent, valid over Q),
    "gendiff" (quotient by generator differences) or "auto" (averaging while
    the group order stays below the expansion cap).
    """
    if check:
        action.validate(c)
    if method == "auto":
        try:
            order = action.order()
            method = "average" if order <= action.order_cap else "gendiff"
        except InvalidActionError:
            method = "gendiff"

    proj = {}
    sect = {}
    dims = {}
    for n in c.degrees:
        dn = c.dim(n)
        if dn == 0:
            continue
        if method == "average":
            elems = action.elements()
            acc: dict = {}
            for _, mats in elems:
                m = mats.get(n)
                if m is None:
                    for i in range(dn):
                        acc[(i, i)] = acc.get((i, i), 0) + 1
                else:
                    for key, v in m.entries.items():
                        acc[key] = acc.get(key, 0) + v
            scale = Fraction(1, len(elems))
            avg_cols = [dict() for _ in range(dn)]
            for (i, j), v in acc.items():
                if v:
                    avg_cols[j][i] = v * scale
            basis = RowBasis.from_vectors(dn, [col for col in avg_cols if col])
            cols = []
            for j in range(dn):
                residual, coeffs = basis.reduce(avg_cols[j])
                if residual:
                    raise InvalidActionError("averaging image basis failed to close")
                cols.append({i: v for i, v in enumerate(coeffs) if v})
            proj[n] = QMatrix.from_cols(cols, basis.dim)
            sect[n] = basis.basis_matrix()
            dims[n] = basis.dim
        else:
            diffs = []
            for g in action.generator_matrices(n):
                delta = g - QMatrix.identity(dn)
                diffs.extend(d for d in delta.col_dicts() if d)
            qb = QuotientBasis(dn, [{i: Fraction(1)} for i in range(dn)], diffs)
            reps = qb.representatives()
            cols = []
            for j in range(dn):
                cols.append({i: v for i, v in enumerate(qb.coords({j: Fraction(1)})) if v})
            proj[n] = QMatrix.from_cols(cols, qb.dim)
            sect[n] = QMatrix.from_cols(reps, dn)
            dims[n] = qb.dim

    d = {}
    for n in dims:
        m = n + c.direction
        if dims.get(m):
            d[n] = proj[m] @ c.boundary(n) @ sect[n]
    quotient = ChainComplex(dims, d, c.direction)
    return CoinvariantComplex(quotient, proj, sect)


def coinvariants(c: ChainComplex, action: GroupAction, method: str = "auto") -> ChainComplex:
    """The coinvariant complex (see ``coinvariant_data`` for the maps)."""
    return coinvariant_data(c, action, method).complex


# ---------------------------------------------------------------------------
# serialization


def complex_to_json(c: ChainComplex) -> dict:
    degs = c.degrees
    return {
        "direction": c.direction,
        "degrees": degs,
        "dims": [c.dim(n) for n in degs],
        "boundaries": {
            str(n): c.boundary(n).to_triplets() for n in degs if not c.boundary(n).is_zero()
        },
    }


def complex_from_json(data: dict) -> ChainComplex:
    degs = list(data["degrees"])
    dims = {int(n): int(k) for n, k in zip(degs, data["dims"])}
    direction = int(data.get("direction", -1))
    d = {}
    for n_str, trips in data.get("boundaries", {}).items():
        n = int(n_str)
        d[n] = QMatrix.from_triplets(
            dims.get(n + direction, 0), dims.get(n, 0), trips
        )
    return ChainComplex(dims, d, direction)
