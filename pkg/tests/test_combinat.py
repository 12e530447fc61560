from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from opcat.OpCombinat import (
    FiniteMap,
    adjacentTransposition,
    adjacentWord,
    allPerms,
    composePerms,
    countSurjections,
    cycleType,
    distributeWord,
    enumerateFunctions,
    enumerateSurjections,
    fibreOrders,
    fibreSplits,
    identityPerm,
    invertPerm,
    permSign,
    risingFactorial,
    setPartitions,
    shuffles,
    stirling1,
    stirling2,
)

perms = st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.permutations(list(range(1, n + 1))).map(tuple)
)


@given(perms)
def test_inverse_composes_to_identity(p):
    assert composePerms(p, invertPerm(p)) == identityPerm(len(p))
    assert composePerms(invertPerm(p), p) == identityPerm(len(p))


@given(perms)
def test_adjacent_word_rebuilds_the_permutation(p):
    n = len(p)
    rebuilt = identityPerm(n)
    for i in adjacentWord(p):
        rebuilt = composePerms(adjacentTransposition(n, i), rebuilt)
    assert rebuilt == p
    assert permSign(p) == (-1) ** len(adjacentWord(p))


@given(perms, perms)
def test_sign_is_multiplicative(p, q):
    if len(p) != len(q):
        return
    assert permSign(composePerms(p, q)) == permSign(p) * permSign(q)


def test_cycle_types():
    assert cycleType((1, 2, 3)) == (1, 1, 1)
    assert cycleType((2, 3, 1)) == (3,)
    assert cycleType((2, 1, 3)) == (2, 1)
    assert cycleType(()) == ()


def test_stirling_numbers():
    assert [stirling2(4, k) for k in range(5)] == [0, 1, 7, 6, 1]
    assert [stirling1(4, k) for k in range(5)] == [0, 6, 11, 6, 1]
    assert sum(stirling1(5, k) for k in range(6)) == factorial(5)


@pytest.mark.parametrize("m, n", [(0, 0), (1, 1), (3, 2), (4, 2), (4, 3), (2, 3)])
def test_surjection_count_matches_enumeration(m, n):
    assert countSurjections(m, n) == len(enumerateSurjections(m, n))
    assert countSurjections(m, n) == factorial(n) * stirling2(m, n)


@pytest.mark.parametrize("m, n", [(0, 2), (2, 2), (3, 2), (2, 3)])
def test_ordered_fibres_count_rising_factorial(m, n):
    total = sum(1 for f in enumerateFunctions(m, n) for _ in fibreOrders(f))
    assert total == risingFactorial(n, m)


@given(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6))
def test_set_partitions_are_counted_by_stirling(d, k):
    partitions = setPartitions(d, k)
    assert len(partitions) == stirling2(d, k)
    for blocks in partitions:
        assert sorted(x for block in blocks for x in block) == list(range(1, d + 1))
        assert [block[0] for block in blocks] == sorted(block[0] for block in blocks)


@given(st.lists(st.integers(min_value=1, max_value=9), min_size=1, max_size=6, unique=True))
def test_fibre_splits(fibre):
    splits = fibreSplits(fibre)
    assert len(splits) == 2 ** (len(fibre) - 1) - 1
    for A, B, sign in splits:
        assert A[0] == fibre[0]
        assert sorted(A + B) == sorted(fibre)
        assert sign in (1, -1)


def test_fibre_split_signs_of_three_letters():
    signs = {(A, B): sign for A, B, sign in fibreSplits((1, 2, 3))}
    assert signs == {((1,), (2, 3)): 1, ((1, 3), (2,)): -1, ((1, 2), (3,)): 1}


def test_shuffles():
    assert len(shuffles(2, 2)) == comb(4, 2)
    assert (1, 3, 2, 4) in shuffles(2, 2)


def test_distribute_word():
    pieces = list(distributeWord((1, 2), 2))
    assert len(pieces) == 4
    assert ((1,), (2,)) in pieces and ((2,), (1,)) in pieces
    assert list(distributeWord((), 0)) == [()]
    assert list(distributeWord((1,), 0)) == []


def test_distribute_word_counts_every_assignment():
    pieces = list(distributeWord((1, 2, 3), 3))
    assert len(pieces) == 27
    assert len(set(pieces)) == 27
    assert ((3,), (), (1, 2)) in pieces
    assert list(distributeWord((1, 2), 1)) == [((1, 2),)]


def test_finite_maps():
    f = FiniteMap(3, 2, (2, 1, 2))
    assert f.fibres() == ((2,), (1, 3))
    assert f.fibreSizes() == (1, 2)
    assert f.isSurjective
    g = FiniteMap(2, 2, (2, 1))
    assert g.compose(f).images == (1, 2, 1)
    with pytest.raises(ValueError):
        FiniteMap(2, 2, (1, 3))


def test_all_perms():
    assert len(allPerms(4)) == 24
    assert allPerms(0) == [()]
