"""Seeded random instances used by the property suites and the CLI battery.

Every generator takes an explicit ``random.Random`` so runs are replayable;
the CLI logs the seed with each report.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exactlin import (
    ChainComplex,
    GroupAction,
    QMatrix,
    kernel_basis,
    perm_matrix,
)
from .spectral import FilteredComplex

_COEFFS = [1, -1, 2, -2, Fraction(1, 2)]


def random_qmatrix(rng: random.Random, rows: int, cols: int, density: float = 0.4) -> QMatrix:
    ent = {}
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                ent[(i, j)] = Fraction(rng.choice(_COEFFS))
    return QMatrix(rows, cols, ent)


def random_chain_complex(rng: random.Random, max_dim: int = 6, degrees: int = 3,
                         direction: int = -1) -> ChainComplex:
    """Random complex built from a disjoint pairing, then a base change.

    Each basis element is matched at most once (as source or target), which
    makes d∘d = 0 automatic; homology dimensions equal the unmatched counts
    before the change of basis.
    """
    fc = random_filtered_complex(rng, max_dim=max_dim, degrees=degrees, steps=1,
                                 direction=direction)
    return fc.complex


def random_filtered_complex(rng: random.Random, max_dim: int = 8, degrees: int = 3,
                            steps: int = 4, direction: int = -1,
                            mixes: int = 30) -> FilteredComplex:
    """Random filtered complex whose stages are coordinate subspaces.

    Basis elements carry levels; the differential pairing and the base
    changes both respect levels, so the level sets stay d-closed.
    """
    degs = list(range(degrees + 1))
    dims = {n: rng.randint(1, max_dim) for n in degs}
    level = {n: sorted(rng.randrange(steps) for _ in range(dims[n])) for n in degs}
    used = {n: set() for n in degs}
    d: dict = {}
    e = direction
    for n in degs:
        if n + e not in dims:
            continue
        ent = {}
        for j in range(dims[n]):
            if j in used[n]:
                continue
            cands = [
                i
                for i in range(dims[n + e])
                if i not in used[n + e] and level[n + e][i] <= level[n][j]
            ]
            if cands and rng.random() < 0.7:
                i = rng.choice(cands)
                used[n].add(j)
                used[n + e].add(i)
                ent[(i, j)] = Fraction(rng.choice([1, -1, 2]))
        if ent:
            d[n] = QMatrix(dims[n + e], dims[n], ent)
    c = ChainComplex(dims, d, e)

    for _ in range(mixes):
        n = rng.choice(degs)
        if dims[n] < 2:
            continue
        i, j = rng.sample(range(dims[n]), 2)
        if level[n][i] > level[n][j]:
            i, j = j, i
        coef = Fraction(rng.choice([1, -1, 2]))
        # e_j -> e_j + coef * e_i keeps every level set invariant
        fwd = {(a, a): Fraction(1) for a in range(dims[n])}
        bwd = dict(fwd)
        fwd[(i, j)] = coef
        bwd[(i, j)] = -coef
        E = QMatrix(dims[n], dims[n], fwd)
        Einv = QMatrix(dims[n], dims[n], bwd)
        dd = dict(c.d)
        if n in dd:
            dd[n] = dd[n] @ E
        incoming = n - e
        if incoming in dd:
            dd[incoming] = Einv @ dd[incoming]
        c = ChainComplex(dims, dd, e, check=False)
    c.validate()

    stepsets = []
    for s in range(steps):
        stepsets.append(
            {n: frozenset(i for i in range(dims[n]) if level[n][i] <= s) for n in degs}
        )
    return FilteredComplex(c, stepsets)


def random_equivariant_complex(rng: random.Random, n_letters: int, degrees: int = 2,
                               copies: int = 3) -> tuple[ChainComplex, GroupAction]:
    """A complex of permutation modules with equivariant differentials.

    Each degree carries ``copies`` copies of the natural permutation module
    of the symmetric group.  Blocks of the differential are a·I + b·J (J the
    all-ones matrix), which is the full equivariant endomorphism space; the
    block support at degree n runs from a source set of copies to a target
    set chosen disjoint from the next source set, so d∘d = 0 holds block by
    block.
    """
    block = n_letters
    dims = {n: block * copies for n in range(degrees + 1)}

    def equivariant_block(a, b):
        ent = {}
        for t in range(block):
            ent[(t, t)] = a
        for s in range(block):
            for t in range(block):
                ent[(s, t)] = ent.get((s, t), 0) + b
        return {k: v for k, v in ent.items() if v}

    # per degree: disjoint (sources, targets) among the copy indices
    roles = {}
    for n in range(degrees + 1):
        idx = list(range(copies))
        rng.shuffle(idx)
        cut = rng.randint(1, copies - 1)
        roles[n] = (set(idx[:cut]), set(idx[cut:]))

    d: dict = {}
    for n in range(1, degrees + 1):
        sources, _ = roles[n]
        _, targets = roles[n - 1]
        ent = {}
        for bj in sources:
            for bi in targets:
                a = Fraction(rng.choice([0, 1, -1, 2]))
                b = Fraction(rng.choice([0, 0, 1, -1]))
                for (i, j), v in equivariant_block(a, b).items():
                    ent[(bi * block + i, bj * block + j)] = v
        d[n] = QMatrix(block * copies, block * copies, ent)
    c = ChainComplex(dims, d, -1, check=False)
    c.validate()

    def mats_for(i):
        perm = list(range(1, n_letters + 1))
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
        single = perm_matrix(tuple(perm))
        ent = {}
        for b in range(copies):
            for (r, s), v in single.entries.items():
                ent[(b * block + r, b * block + s)] = v
        big = QMatrix(block * copies, block * copies, ent)
        return {n: big for n in range(degrees + 1)}

    gens = []
    for i in range(1, n_letters):
        perm = list(range(1, n_letters + 1))
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
        gens.append((tuple(perm), mats_for(i)))
    return c, GroupAction(gens)


def comparison_instance(rng: random.Random, s: int, steps: int = 3,
                        junk_at: int | None = None):
    """A filtration-preserving map satisfying the page-window hypothesis.

    Returns (f, fc_src, fc_dst): fc_src is fc_dst extended by extra basis
    elements concentrated in total degrees <= junk_at (default s-2), and f
    is the projection killing them, so the first-page map is bijective in
    all total degrees above the junk and generally not below.
    """
    junk_at = s - 2 if junk_at is None else junk_at
    base = random_filtered_complex(rng, max_dim=5, degrees=3, steps=steps)
    c = base.complex
    e = c.direction

    extra = {}
    for n in c.degrees:
        extra[n] = rng.randint(1, 2) if n <= junk_at else 0
    dims = {n: c.dim(n) + extra.get(n, 0) for n in c.degrees}
    d = {}
    for n in c.degrees:
        ent = dict(c.boundary(n).entries)
        d[n] = QMatrix(c.dim(n + e) + extra.get(n + e, 0), dims[n], ent)
    big = ChainComplex(dims, d, e, check=False)
    big.validate()

    steps_src = []
    for p in range(base.length):
        step = {}
        for n in c.degrees:
            idx = set(base.stage(p, n))
            idx.update(range(c.dim(n), dims[n]))  # junk enters at every stage
            if idx:
                step[n] = frozenset(idx)
        steps_src.append(step)
    fc_src = FilteredComplex(big, steps_src)
    fc_dst = FilteredComplex(c, [
        {n: base.stage(p, n) for n in c.degrees} for p in range(base.length)
    ])
    f = {
        n: QMatrix(c.dim(n), dims[n], {(i, i): Fraction(1) for i in range(c.dim(n))})
        for n in c.degrees
    }
    return f, fc_src, fc_dst
