from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from opcat.OpExactLin import (
    DimensionMismatchError,
    SparseMat,
    Subspace,
    cokernel,
    fullSpace,
    homologyDimension,
    identity,
    image,
    inducedQuotientMap,
    kernelBasis,
    kron,
    quotientMap,
    quotientSection,
    rank,
    solveInBasis,
    subspacesEqual,
    toScalar,
    zeroSpace,
)

entries = st.integers(min_value=-3, max_value=3)


@st.composite
def denseMatrices(draw, maxRows=5, maxCols=5):
    rows = draw(st.integers(min_value=1, max_value=maxRows))
    cols = draw(st.integers(min_value=1, max_value=maxCols))
    return draw(st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows))


def test_scalars_are_exact():
    assert toScalar("3/4") == Fraction(3, 4)
    assert toScalar("4/2") == 2
    assert isinstance(toScalar(Fraction(6, 3)), int)
    with pytest.raises(TypeError):
        toScalar(0.5)
    with pytest.raises(TypeError):
        toScalar(True)


def test_entries_outside_the_shape_are_rejected():
    with pytest.raises(DimensionMismatchError):
        SparseMat(2, 2, {(2, 0): 1})
    with pytest.raises(DimensionMismatchError):
        SparseMat.fromDense([[1, 2], [3]])


def test_zero_entries_are_not_stored():
    m = SparseMat(2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, 0)])
    assert m.isZero()
    assert m.nnz() == 0


def test_product_and_transpose():
    a = SparseMat.fromDense([[1, 2], [0, 1]])
    b = SparseMat.fromDense([[0, 1], [1, 0]])
    assert (a @ b).toDense() == [[2, 1], [1, 0]]
    assert a.transpose().toDense() == [[1, 0], [2, 1]]
    assert (a - a).isZero()
    assert (a @ identity(2)) == a


def test_rank_and_kernel_of_small_matrices():
    assert rank(SparseMat.fromDense([[1, 2], [2, 4]])) == 1
    assert rank(SparseMat.fromDense([[1, 0, 0], [0, 1, 0]])) == 2
    assert rank(SparseMat(3, 0)) == 0
    kernel = kernelBasis(SparseMat.fromDense([[2, 2, 2], [3, 3, 3]]))
    assert kernel.dim == 2


def test_fractions_survive_elimination():
    m = SparseMat.fromDense([[Fraction(1, 2), Fraction(1, 3)], [3, 2]])
    assert rank(m) == 1


@given(denseMatrices())
def test_rank_nullity(dense):
    m = SparseMat.fromDense(dense)
    assert rank(m) + kernelBasis(m).dim == m.cols
    assert rank(m) == rank(m.transpose())


@given(denseMatrices())
def test_kernel_vectors_are_killed(dense):
    m = SparseMat.fromDense(dense)
    for vector in kernelBasis(m).basis:
        assert not m.apply(vector)


@given(denseMatrices())
def test_quotient_by_image_is_a_cokernel(dense):
    m = SparseMat.fromDense(dense)
    q = cokernel(m)
    assert q.rows == m.rows - rank(m)
    assert (q @ m).isZero()


@given(denseMatrices())
def test_quotient_section_is_a_right_inverse(dense):
    m = SparseMat.fromDense(dense)
    relations = image(m)
    q = quotientMap(m.rows, relations)
    s = quotientSection(m.rows, relations)
    assert q @ s == identity(q.rows)


def test_maps_induced_on_quotients():
    # k^2 modulo e_0 - e_1 is a line on which the swap acts trivially
    relations = Subspace(2, [{0: 1, 1: -1}])
    q = quotientMap(2, relations)
    s = quotientSection(2, relations)
    swap = SparseMat.fromDense([[0, 1], [1, 0]])
    assert inducedQuotientMap(q, swap, s).toDense() == [[1]]
    assert inducedQuotientMap(q, identity(2).scale(2), s).toDense() == [[2]]


def test_subspace_membership_and_coordinates():
    space = Subspace(3, [{0: 1, 1: 1}, {1: 1, 2: 1}])
    assert space.dim == 2
    assert space.contains({0: 1, 2: -1})
    assert not space.contains({0: 1})
    coordinates = solveInBasis(space, {0: 2, 1: 3, 2: 1})
    rebuilt = {}
    for c, vector in zip(coordinates, space.basis):
        for index, value in vector.items():
            rebuilt[index] = rebuilt.get(index, 0) + c * value
    assert {k: v for k, v in rebuilt.items() if v} == {0: 2, 1: 3, 2: 1}
    assert solveInBasis(space, {0: 1}) is None


def test_subspaces_equal_by_span():
    a = Subspace(2, [{0: 1}, {1: 1}])
    assert subspacesEqual(a, fullSpace(2))
    assert not subspacesEqual(zeroSpace(2), fullSpace(2))
    with pytest.raises(DimensionMismatchError):
        subspacesEqual(zeroSpace(2), zeroSpace(3))


def test_homology_dimension_of_a_short_complex():
    incoming = SparseMat.fromDense([[1], [0]])
    outgoing = SparseMat.fromDense([[0, 1]])
    assert (outgoing @ incoming).isZero()
    assert homologyDimension(incoming, outgoing, 2) == 0
    assert homologyDimension(None, None, 3) == 3


def test_kron_shape_and_entries():
    a = SparseMat.fromDense([[1, 2]])
    b = SparseMat.fromDense([[0], [1]])
    product = kron(a, b)
    assert product.shape() == (2, 2)
    assert product.toDense() == [[0, 0], [1, 2]]
