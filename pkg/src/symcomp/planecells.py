"""Cell model for configuration spaces of labeled points in the plane.

A configuration of n distinct labeled points is stratified by the pattern of
its coordinates: group the points by equal x-coordinate, order the groups
left to right, and order each group bottom to top by y.  A stratum is thus a
sequence of blocks, each block an ordered tuple of labels, partitioning
{1..n}; with m blocks it is an open cell of dimension n + m (m free x
values, n free y values).  These cells assemble the one-point
compactification, so the homology of the resulting complex in degree q is
the compactly supported Betti number b_c^q of the open configuration space.

A boundary face arises when two adjacent x-groups collide; the limiting
y-orders interleave, one face per riffle shuffle of the two blocks.  With
cells oriented by their sorted coordinate frames the incidence number is the
shuffle sign times an alternating positional sign, and relabeling the points
permutes cells without signs, so the symmetric group acts by plain
permutation matrices.  Quotients by label groups are computed through
coinvariants; since the action is free on cells this is the cell complex of
the quotient configuration space.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from .exactlin import ChainComplex, GroupAction, QMatrix, coinvariants
from .partitions import Partition


def cells(n: int) -> dict[int, list]:
    """All cells keyed by dimension; each cell is a tuple of label tuples."""
    out: dict[int, list] = {}
    for w in permutations(range(1, n + 1)):
        for mask in range(2 ** (n - 1)):
            blocks = []
            start = 0
            for cut in range(1, n):
                if mask >> (cut - 1) & 1:
                    blocks.append(w[start:cut])
                    start = cut
            blocks.append(w[start:])
            cell = tuple(blocks)
            out.setdefault(n + len(blocks), []).append(cell)
    for d in out:
        out[d].sort()
    return out


def _shuffles(a: tuple, b: tuple):
    """Riffle shuffles of two tuples with the inversion sign against a·b."""
    la, lb = len(a), len(b)
    for positions in combinations(range(la + lb), la):
        pos_a = set(positions)
        merged = []
        ia = ib = 0
        inversions = 0
        b_seen = 0
        for t in range(la + lb):
            if t in pos_a:
                merged.append(a[ia])
                ia += 1
                inversions += b_seen
            else:
                merged.append(b[ib])
                ib += 1
                b_seen += 1
        yield tuple(merged), (-1) ** inversions


def boundary(cell: tuple) -> list:
    """Signed codimension-one faces: merge each adjacent pair of blocks."""
    out = []
    m = len(cell)
    for t in range(m - 1):
        sign_pos = (-1) ** t
        for merged, sign_shuffle in _shuffles(cell[t], cell[t + 1]):
            face = cell[:t] + (merged,) + cell[t + 2 :]
            out.append((sign_pos * sign_shuffle, face))
    return out


@lru_cache(maxsize=None)
def configuration_complex(n: int) -> tuple[ChainComplex, dict]:
    """Chain complex of the compactified configuration space of n points.

    Returns (complex, positions) where positions[dim] maps a cell to its
    basis index.  Homology in degree q is b_c^q of the ordered configuration
    space; nonzero only for n+1 <= q <= 2n (q = 2 for n = 1).
    """
    by_dim = cells(n)
    pos = {d: {cell: i for i, cell in enumerate(lst)} for d, lst in by_dim.items()}
    dims = {d: len(lst) for d, lst in by_dim.items()}
    d_mats = {}
    for d, lst in by_dim.items():
        if d - 1 not in pos:
            continue
        target = pos[d - 1]
        ent: dict = {}
        for j, cell in enumerate(lst):
            for coef, face in boundary(cell):
                key = (target[face], j)
                ent[key] = ent.get(key, 0) + coef
        mat = QMatrix(dims[d - 1], len(lst), {k: v for k, v in ent.items() if v})
        if not mat.is_zero():
            d_mats[d] = mat
    return ChainComplex(dims, d_mats, -1), pos


def relabel(cell: tuple, perm: tuple) -> tuple:
    """Apply a relabeling (1-based image tuple) entrywise; order is geometric."""
    return tuple(tuple(perm[x - 1] for x in block) for block in cell)


def label_action(n: int, transpositions) -> GroupAction:
    """Group action generated by the given transpositions (i, i+1 pairs)."""
    complex_, pos = configuration_complex(n)
    gens = []
    for i in transpositions:
        perm = list(range(1, n + 1))
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
        perm = tuple(perm)
        mats = {}
        for d, table in pos.items():
            ent = {}
            for cell, j in table.items():
                ent[(table[relabel(cell, perm)], j)] = 1
            mats[d] = QMatrix(len(table), len(table), ent)
        gens.append((perm, mats))
    return GroupAction(gens)


def young_labels(lam: Partition) -> list[list[int]]:
    """Label groups of equal multiplicity, labels 1..n assigned part by part.

    Parts are taken in increasing order, so equal parts occupy consecutive
    labels; the label groups are the orbits the coloring identifies.
    """
    groups = []
    start = 1
    parts = lam.parts
    i = 0
    while i < len(parts):
        j = i
        while j < len(parts) and parts[j] == parts[i]:
            j += 1
        groups.append(list(range(start, start + (j - i))))
        start += j - i
        i = j
    return groups


def colored_complex(lam: Partition, method: str = "auto") -> ChainComplex:
    """Cell complex of the colored configuration space for the pattern lam.

    Points share a color exactly when they carry the same multiplicity;
    the quotient by the color-preserving relabelings is computed as
    coinvariants of the label action.
    """
    n = lam.cardinality
    complex_, _ = configuration_complex(n)
    transpositions = []
    for group in young_labels(lam):
        transpositions.extend(range(group[0], group[-1]))
    if not transpositions:
        return complex_
    action = label_action(n, transpositions)
    return coinvariants(complex_, action, method=method)


@lru_cache(maxsize=None)
def compact_betti(lam: Partition) -> tuple[int, ...]:
    """Compactly supported Betti numbers b_c^0..b_c^{2n} of the stratum.

    Entry q is the rank of degree-q compactly supported cohomology of the
    space of configurations colored by the multiplicity pattern lam.
    """
    n = lam.cardinality
    if n == 0:
        return (1,)
    hom = colored_complex(lam).homology()
    return tuple(hom.get(q, 0) for q in range(2 * n + 1))
