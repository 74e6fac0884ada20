"""Matrices, complexes, homology and coinvariants."""

import itertools
import random
from fractions import Fraction

import pytest

from symcomp.exactlin import (
    ChainComplex,
    GroupAction,
    InvalidActionError,
    InvalidComplexError,
    QMatrix,
    QuotientBasis,
    chain_map_check,
    coinvariant_data,
    coinvariants,
    complex_from_json,
    complex_to_json,
    compose_perms,
    homology_basis,
    image_basis,
    induced_homology_map,
    kernel_basis,
    mapping_cone,
    perm_matrix,
    rank,
    solve,
)


def circle_complex():
    d1 = QMatrix.from_dense([[-1, 0, 1], [1, -1, 0], [0, 1, -1]])
    return ChainComplex({0: 3, 1: 3}, {1: d1}, -1)


def sphere_complex():
    verts = list(range(4))
    edges = list(itertools.combinations(verts, 2))
    tris = list(itertools.combinations(verts, 3))
    d1 = {}
    for j, (a, b) in enumerate(edges):
        d1[(a, j)] = Fraction(-1)
        d1[(b, j)] = Fraction(1)
    d2 = {}
    for j, t in enumerate(tris):
        for i in range(3):
            face = t[:i] + t[i + 1 :]
            d2[(edges.index(face), j)] = Fraction((-1) ** i)
    return ChainComplex({0: 4, 1: 6, 2: 4}, {1: QMatrix(4, 6, d1), 2: QMatrix(6, 4, d2)}, -1)


def test_matrix_basics():
    assert rank(QMatrix.identity(3)) == 3
    z = QMatrix.zeros(2, 5)
    assert rank(z) == 0
    assert kernel_basis(z).cols == 5
    with pytest.raises(ValueError):
        QMatrix(2, 2, {(2, 0): 1})


def test_rank_transpose_agreement():
    rng = random.Random(2)
    for _ in range(15):
        ent = {
            (i, j): Fraction(rng.randint(-4, 4))
            for i in range(20)
            for j in range(20)
            if rng.random() < 0.15
        }
        m = QMatrix(20, 20, ent)
        assert rank(m) == rank(m.transpose())


def test_kernel_and_image():
    rng = random.Random(9)
    for _ in range(20):
        rows, cols = rng.randint(1, 9), rng.randint(1, 9)
        ent = {
            (i, j): Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            for i in range(rows)
            for j in range(cols)
            if rng.random() < 0.5
        }
        m = QMatrix(rows, cols, ent)
        kb = kernel_basis(m)
        assert (m @ kb).is_zero()
        assert rank(m) + kb.cols == cols
        ib = image_basis(m)
        assert ib.cols == rank(m)
        x = solve(m, m.column(0) if cols else {})
        assert x is not None


def test_circle_and_sphere_homology():
    assert circle_complex().homology() == {0: 1, 1: 1}
    assert sphere_complex().homology() == {0: 1, 1: 0, 2: 1}


def test_cone_is_acyclic():
    for c in (circle_complex(), sphere_complex()):
        ident = {n: QMatrix.identity(c.dim(n)) for n in c.degrees}
        cone = mapping_cone(ident, c, c)
        assert all(b == 0 for b in cone.homology().values())


def test_euler_characteristic_matches_homology():
    rng = random.Random(4)
    from symcomp.randgen import random_chain_complex

    for _ in range(15):
        c = random_chain_complex(rng, max_dim=6, degrees=3)
        hom = c.homology()
        assert c.euler_characteristic() == sum((-1) ** n * b for n, b in hom.items())


def test_invalid_complex_rejected():
    d1 = QMatrix.from_dense([[1, 0], [0, 1]])
    with pytest.raises(InvalidComplexError):
        ChainComplex({0: 2, 1: 2, 2: 2}, {1: d1, 2: d1}, -1)


def test_chain_map_check():
    c = circle_complex()
    ident = {n: QMatrix.identity(3) for n in (0, 1)}
    assert chain_map_check(ident, c, c)
    zero = {n: QMatrix.zeros(3, 3) for n in (0, 1)}
    assert chain_map_check(zero, c, c)
    bad = {0: QMatrix.identity(3), 1: QMatrix.from_dense([[1, 1, 0], [0, 1, 0], [0, 0, 1]])}
    assert not chain_map_check(bad, c, c)


def test_homology_invariant_under_integer_basis_change():
    c = sphere_complex()
    # conjugate by an invertible integer matrix in degree 1
    u_ent = {(i, i): Fraction(1) for i in range(6)}
    u_ent[(0, 3)] = Fraction(2)
    u_ent[(2, 4)] = Fraction(-1)
    u = QMatrix(6, 6, u_ent)
    uinv_ent = {(i, i): Fraction(1) for i in range(6)}
    uinv_ent[(0, 3)] = Fraction(-2)
    uinv_ent[(2, 4)] = Fraction(1)
    uinv = QMatrix(6, 6, uinv_ent)
    assert (u @ uinv) == QMatrix.identity(6)
    d = dict(c.d)
    d[1] = c.boundary(1) @ u
    d[2] = uinv @ c.boundary(2)
    c2 = ChainComplex(c.dims, d, -1)
    assert c2.homology() == c.homology()


# ---------------------------------------------------------------------------
# group actions and coinvariants


def regular_rep_action(n):
    perms = sorted(itertools.permutations(range(1, n + 1)))
    idx = {p: i for i, p in enumerate(perms)}

    def act(g):
        ent = {}
        for p in perms:
            ent[(idx[compose_perms(g, p)], idx[p])] = Fraction(1)
        return QMatrix(len(perms), len(perms), ent)

    gens = []
    for i in range(1, n):
        g = list(range(1, n + 1))
        g[i - 1], g[i] = g[i], g[i - 1]
        gens.append((tuple(g), {0: act(tuple(g))}))
    return GroupAction(gens), len(perms)


def test_sign_representation_coinvariants_vanish():
    act = GroupAction([((2, 1), {0: QMatrix.from_dense([[-1]])})])
    c = ChainComplex({0: 1}, {}, -1)
    for method in ("average", "gendiff"):
        assert coinvariants(c, act, method=method).dims == {}


def test_regular_representation_coinvariants():
    act, size = regular_rep_action(3)
    c = ChainComplex({0: size}, {}, -1)
    assert act.order() == 6
    for method in ("average", "gendiff"):
        cc = coinvariants(c, act, method=method)
        assert cc.dim(0) == 1


def test_methods_agree_on_random_equivariant():
    from symcomp.randgen import random_equivariant_complex

    rng = random.Random(6)
    for _ in range(6):
        c, act = random_equivariant_complex(rng, n_letters=3)
        h_avg = coinvariants(c, act, method="average").homology()
        h_gd = coinvariants(c, act, method="gendiff").homology()
        degrees = set(h_avg) | set(h_gd)
        assert all(h_avg.get(n, 0) == h_gd.get(n, 0) for n in degrees)


def test_signed_orbit_counting():
    # order-4 signed swap: g e0 = e1, g e1 = -e0, so g^2 = -1 reverses the
    # sign on the whole orbit and the orbit contributes no class; the plain
    # swap and the symmetric signed swap each contribute one class
    twisted = GroupAction(
        [(None, {0: QMatrix(2, 2, {(1, 0): Fraction(1), (0, 1): Fraction(-1)})})]
    )
    symmetric = GroupAction(
        [(None, {0: QMatrix(2, 2, {(0, 1): Fraction(-1), (1, 0): Fraction(-1)})})]
    )
    plain = GroupAction(
        [((2, 1), {0: QMatrix(2, 2, {(0, 1): Fraction(1), (1, 0): Fraction(1)})})]
    )
    c = ChainComplex({0: 2}, {}, -1)
    assert twisted.order() == 4
    assert coinvariants(c, twisted).dim(0) == 0
    assert coinvariants(c, symmetric).dim(0) == 1
    assert coinvariants(c, plain).dim(0) == 1


def test_coinvariants_idempotent():
    # trivial residual action on the quotient: applying again changes nothing
    act, size = regular_rep_action(3)
    c = ChainComplex({0: size}, {}, -1)
    cc = coinvariants(c, act)
    trivial = GroupAction([((1, 2), {0: QMatrix.identity(cc.dim(0))})])
    again = coinvariants(cc, trivial)
    assert again.dims == cc.dims


def test_action_validation():
    c = circle_complex()
    bad_entries = GroupAction([((2, 1), {0: QMatrix.from_dense(
        [[2, 0, 0], [0, 1, 0], [0, 0, 1]]), 1: QMatrix.identity(3)})])
    with pytest.raises(InvalidActionError):
        bad_entries.validate(c)
    # relation violation: same permutation twice with different matrices
    m1 = perm_matrix((2, 1, 3))
    m2 = perm_matrix((1, 3, 2))
    bad_relations = GroupAction([((2, 1), {0: m1}), ((2, 1), {0: m2})])
    with pytest.raises(InvalidActionError):
        bad_relations.elements()


def test_coinvariant_projection_section_consistency():
    act, size = regular_rep_action(3)
    c = ChainComplex({0: size}, {}, -1)
    for method in ("average", "gendiff"):
        data = coinvariant_data(c, act, method=method)
        p = data.proj[0]
        s = data.sect[0]
        assert (p @ s) == QMatrix.identity(data.complex.dim(0))


def test_complex_json_roundtrip():
    c = sphere_complex()
    again = complex_from_json(complex_to_json(c))
    assert again.dims == c.dims
    assert again.direction == c.direction
    assert all(again.boundary(n) == c.boundary(n) for n in c.degrees)


def test_quotient_basis_rejects_outside_vectors():
    qb = QuotientBasis(3, [{0: Fraction(1)}], [{1: Fraction(1)}])
    with pytest.raises(ValueError):
        qb.coords({2: Fraction(1)})
