from math import factorial

import pytest
from hypothesis import given, strategies as st

from opcat.OpCombinat import composePerms, countSurjections, risingFactorial
from opcat.OpExactLin import DimensionMismatchError, rank
from opcat.OpOperads import ASSU, COM, COMU, LIE, UNIT, OperadError
from opcat.OpPropCat import (
    HomFamily,
    bimoduleTensor,
    catlieSpan,
    catlieSubspace,
    compose,
    composeKeys,
    composeTokens,
    factorizeCatlieBasis,
    homSpace,
    identityKey,
    keyObjects,
    lieElementOf,
    pbwCheck,
    permKey,
    symmetricGroupTable,
)

objects = st.integers(min_value=0, max_value=3)


def test_assu_grid():
    # dims assu 3 3
    assert [homSpace(ASSU, 2, n).dim for n in range(4)] == [0, 2, 6, 12]
    assert [homSpace(ASSU, 0, n).dim for n in range(4)] == [1, 1, 1, 1]


@pytest.mark.parametrize("m, n", [(m, n) for m in range(5) for n in range(5)])
def test_hom_dimensions(m, n):
    assert homSpace(ASSU, m, n).dim == risingFactorial(n, m)
    assert homSpace(COMU, m, n).dim == n ** m
    assert homSpace(COM, m, n).dim == countSurjections(m, n)
    assert homSpace(UNIT, m, n).dim == (factorial(m) if m == n else 0)


def test_lie_hom_dimensions():
    assert [homSpace(LIE, 3, n).dim for n in range(4)] == [0, 2, 6, 6]
    assert homSpace(LIE, 1, 2).dim == 0


def test_negative_objects():
    with pytest.raises(DimensionMismatchError):
        homSpace(ASSU, -1, 0)


def test_permutation_keys_compose_like_permutations():
    p, q = (2, 3, 1), (2, 1, 3)
    assert composeKeys(permKey(p), permKey(q)) == permKey(composePerms(p, q))


def test_composition_concatenates_fibres():
    g = ((2, 1),)
    f = ((1, 3), (2,))
    assert composeKeys(g, f) == ((2, 1, 3),)
    assert composeKeys(g, f, COMU) == ((1, 2, 3),)
    with pytest.raises(DimensionMismatchError):
        composeKeys(g, ((1,),))


@given(objects, objects, objects, objects, st.data())
def test_composition_is_associative(a, b, c, d, data):
    f = homSpace(ASSU, a, b).basis
    g = homSpace(ASSU, b, c).basis
    h = homSpace(ASSU, c, d).basis
    if not (f and g and h):
        return
    f, g, h = ({data.draw(st.sampled_from(basis)): 1} for basis in (f, g, h))
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)
    assert compose({identityKey(d): 1}, h) == h
    assert compose(h, {identityKey(c): 1}) == h


def test_key_objects():
    assert keyObjects(((2, 1), (), (3,))) == (3, 3)


@pytest.mark.parametrize("operad", [UNIT, COM, LIE])
def test_endomorphisms_are_group_algebras(operad):
    assert all(symmetricGroupTable(operad, m) for m in range(1, 4))


def test_lie_morphisms_span_inside_assu():
    inclusion = catlieSubspace(3, 1)
    assert rank(inclusion) == homSpace(LIE, 3, 1).dim
    composite = compose(lieElementOf(((1, 2),)), lieElementOf(((1,), (2, 3))))
    assert catlieSpan(3, 1).contains(homSpace(ASSU, 3, 1).vector(composite))


@pytest.mark.parametrize("m, n", [(m, n) for m in range(4) for n in range(4)])
def test_pbw_isomorphism(m, n):
    result = pbwCheck(m, n)
    assert result["passed"], result


def test_commutative_tensor_product_counts_orbits():
    # Cat ComU (x)_S Cat ComU has basis indexed by composable pairs up to relabelling
    tensorSlice = bimoduleTensor(HomFamily(COMU), HomFamily(COMU), 2, 1)
    assert tensorSlice.dim == 3


def test_twisted_orbit_with_odd_stabilizer_is_dropped():
    # swapping the two letters of the fibre of ((1, 2),) is odd, while ((), ()) is fixed
    twisted = HomFamily(COM, twist=True)
    assert twisted.rightAct(((1, 2),), (2, 1)) == {((1, 2),): -1}
    tensorSlice = bimoduleTensor(twisted, HomFamily(COMU), 0, 1, middle=[1, 2])
    assert len(tensorSlice.freeBasis) == 2
    assert tensorSlice.dim == 1
    assert tensorSlice.basis == [(1, ((1,),), ((),))]
    assert (2, ((1, 2),), ((), ())) not in tensorSlice.basis
    assert tensorSlice.projection.shape() == (1, 2)


def test_twisted_family_rejects_lie():
    with pytest.raises(OperadError):
        HomFamily(LIE, twist=True)


@pytest.mark.parametrize("key", [((1, 2),), ((1, 3, 2),), ((1,), (2, 3)), ((2, 3), (1,)), ((1, 3), (2, 4))])
def test_generator_factorization_recomposes(key):
    m = keyObjects(key)[0]
    tokens = factorizeCatlieBasis(key)
    assert composeTokens(tokens, m) == lieElementOf(key)
    assert composeTokens(factorizeCatlieBasis(key, lastFirst=True), m) == lieElementOf(key)
    assert factorizeCatlieBasis(key, reverse=True) == list(reversed(tokens))
