"""Partitions, the merge order, layer sets and their stabilization."""

import itertools
from fractions import Fraction

import pytest

from symcomp.partitions import (
    EMPTY,
    InvalidPartitionError,
    Partition,
    PartitionCapError,
    add_ones,
    col,
    collapses_of,
    elementary_collapses,
    enumerate_partitions,
    is_collapse,
    normalize,
    parse,
    partitions_with_cardinality,
    stab_collapse_map,
)


def P(text):
    return parse(text)


def test_normalize_and_parse():
    assert normalize([3, 1]) == P("1+3")
    assert normalize([1, 1, 2]) == P("1+1+2")
    with pytest.raises(InvalidPartitionError):
        normalize([0, 2])
    with pytest.raises(InvalidPartitionError):
        parse("1+0+2")
    assert parse("0") == EMPTY
    assert str(P("1+1+2")) == "1+1+2"


def test_weight_cardinality_multiplicities():
    lam = P("1+1+2+4")
    assert lam.weight == 8
    assert lam.cardinality == 4
    assert lam.ones() == 2
    assert lam.multiplicities() == {1: 2, 2: 1, 4: 1}


def test_add_ones():
    assert add_ones(P("1+3"), 2) == P("1+1+1+3")
    lam = P("2+5")
    assert add_ones(lam, 0) == lam
    assert add_ones(P("2"), 1) == P("1+2")
    assert add_ones(EMPTY, 3) == P("1+1+1")
    with pytest.raises(InvalidPartitionError):
        add_ones(lam, -1)


def test_elementary_collapses():
    # derived by enumerating unordered pairs and merging
    assert elementary_collapses(P("1+1+2")) == frozenset({P("2+2"), P("1+3")})
    assert elementary_collapses(P("1+3")) == frozenset({P("4")})
    assert elementary_collapses(P("4")) == frozenset()


def test_elementary_collapse_drops_cardinality_by_one():
    for k in range(2, 9):
        for lam in enumerate_partitions(k):
            for mu in elementary_collapses(lam):
                assert mu.cardinality == lam.cardinality - 1
                assert mu.weight == lam.weight


def test_is_collapse_examples():
    assert is_collapse(P("1+2+2+4"), P("1+1+1+2+4"))
    lam = P("2+3+4")
    assert is_collapse(lam, lam)
    assert not is_collapse(P("1+1+1+1"), P("1+3"))


def test_is_collapse_against_reachability():
    # exhaustive cross-check against the collapse-graph closure
    for k in range(1, 9):
        parts = enumerate_partitions(k)
        for lam in parts:
            reach = collapses_of(lam)
            for mu in parts:
                assert is_collapse(mu, lam) == (mu in reach), (mu, lam)


def test_enumeration_counts_and_order():
    # independent count: compositions collapsed to multisets
    for k in range(0, 9):
        brute = set()
        def go(rest, acc):
            if rest == 0:
                brute.add(tuple(sorted(acc)))
                return
            for a in range(1, rest + 1):
                go(rest - a, acc + [a])
        go(k, [])
        out = enumerate_partitions(k)
        assert len(out) == len(brute)
        assert [p.parts for p in out] == sorted(p.parts for p in out)
    assert enumerate_partitions(0) == (EMPTY,)
    assert enumerate_partitions(1) == (P("1"),)
    assert len(enumerate_partitions(4)) == 5


def test_enumeration_cap():
    with pytest.raises(PartitionCapError):
        enumerate_partitions(41)
    with pytest.raises(PartitionCapError):
        enumerate_partitions(9, cap=8)


def test_partitions_with_cardinality():
    for k in range(0, 8):
        for c in range(0, k + 2):
            want = [p for p in enumerate_partitions(k) if p.cardinality == c]
            assert list(partitions_with_cardinality(k, c)) == want


def test_col_table_for_1_plus_3():
    lam = P("1+3")
    assert col(lam, 0) == frozenset({P("1+1+1+1")})
    assert col(lam, 1) == frozenset({P("1+1+2")})
    assert col(lam, 2) == frozenset({P("2+2")})
    assert P("1+3") not in col(lam, 2)
    for p in range(3, 7):
        assert col(lam, p) == frozenset()


def test_col_membership_properties():
    for k in range(1, 8):
        for lam in enumerate_partitions(k):
            reach = collapses_of(lam)
            for p in range(0, k + 1):
                members = col(lam, p)
                assert members.isdisjoint(reach)
                assert all(m.cardinality == k - p for m in members)
                assert all(m.weight == k for m in members)


def test_col_of_generic_pattern_is_empty():
    # every coarser pattern is a merge of the all-ones pattern
    for k in range(1, 7):
        ones = normalize([1] * k)
        for p in range(0, k + 1):
            assert col(ones, p) == frozenset()


def test_col_of_single_part():
    # everything except the single part itself survives
    for k in range(2, 7):
        single = Partition((k,))
        seen = set()
        for p in range(0, k):
            seen |= col(single, p)
        assert seen == set(enumerate_partitions(k)) - {single}


def test_stab_map_example_bijective():
    rep = stab_collapse_map(P("1+3"), 0, 1)
    assert [str(m) for m in rep.source] == ["1+1+2"]
    assert [str(m) for m in rep.target] == ["1+1+1+2"]
    assert rep.bijective


def test_stab_map_example_missed_has_no_ones():
    rep = stab_collapse_map(P("3"), 0, 2)
    assert rep.source == ()
    assert [str(m) for m in rep.target] == ["2+2"]
    assert not rep.surjective
    assert all(m.ones() == 0 for m in rep.missed)
    assert not rep.in_window  # p = 2 > (0+3)/2
    assert rep.window_bound == Fraction(3, 2)


def test_stab_map_layer_zero_always_bijective():
    for k in range(1, 6):
        for lam in enumerate_partitions(k):
            if lam == normalize([1] * k):
                continue
            rep = stab_collapse_map(lam, 2, 0)
            assert rep.bijective
            assert [m.parts for m in rep.source] == [(1,) * (k + 2)]


def test_stab_map_window_property():
    # in-window layers are bijections; beyond, misses are 1-free; always injective
    for k in range(1, 6):
        for lam in enumerate_partitions(k):
            for j in range(0, 6):
                for p in range(0, k + j + 1):
                    rep = stab_collapse_map(lam, j, p)
                    assert rep.injective
                    if rep.in_window:
                        assert rep.bijective, (lam, j, p)
                    for m in rep.missed:
                        assert m.ones() == 0


def test_ones_floor_in_next_layer():
    # members of layer p at weight w have at least w - 2p parts equal to 1
    for k in range(1, 6):
        for lam in enumerate_partitions(k):
            for j in range(0, 6):
                target = add_ones(lam, j + 1)
                w = target.weight
                for p in range(0, w + 1):
                    for m in col(target, p):
                        assert m.ones() >= w - 2 * p


def test_immutability_and_hash():
    lam = P("1+2")
    with pytest.raises(Exception):
        lam.parts = (2, 2)
    assert len({P("1+2"), normalize([2, 1]), P("3")}) == 2
