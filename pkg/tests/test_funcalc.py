from math import factorial

import pytest

from opcat.OpExactLin import SparseMat
from opcat.OpFunCalc import (
    FunctorError,
    FunctorHandle,
    abelianTensorPower,
    assFunctor,
    blockProjectionHom,
    constantFunctor,
    crossEffect,
    crossEffectDiagonal,
    diagonalFoldHom,
    filtrationCheck,
    invariantsDimension,
    layerSesCheck,
    pdExactnessCheck,
    pdValue,
    polyDegree,
    treValue,
)
from opcat.OpGrAction import FreeGroupHom
from opcat.OpInduction import InducedFunctor
from opcat.OpLieModules import quotientModule, regularModule, signModule, unitModule


def test_handles_check_matrix_shapes():
    broken = FunctorHandle(lambda t: t, lambda phi: SparseMat(1, 1), name="broken")
    with pytest.raises(FunctorError):
        broken.mapMatrix(FreeGroupHom.identity(2))


def test_block_homomorphisms():
    kill = blockProjectionHom(2, 1, 1)
    assert kill.words == [(), (1,)]
    fold = diagonalFoldHom(2, 2)
    assert fold.words == [(1,), (2,), (1,), (2,)]


def test_cross_effects_of_the_abelianization_dual():
    F = abelianTensorPower(1)
    assert treValue(F, 1).dim == 1
    assert treValue(F, 2).dim == 0


def test_cross_effect_of_assu_is_regular():
    top = treValue(assFunctor(2), 2)
    assert top.dim == 2
    assert top.characterTable() == {(1, 1): 2, (2,): 0}
    assert crossEffect(assFunctor(2), 3).dim == 0


def test_cross_effect_of_a_tensor_square_at_higher_rank():
    assert crossEffectDiagonal(abelianTensorPower(2), 2, 2).dim == 8


@pytest.mark.parametrize("d", [1, 2, 3])
def test_induced_regular_top_cross_effect(d):
    F = InducedFunctor(regularModule(d))
    top = treValue(F, d)
    assert top.dim == factorial(d)
    assert treValue(F, d + 1).dim == 0


def test_polynomial_degrees(splitting):
    assert polyDegree(constantFunctor(), 2) == 0
    assert polyDegree(InducedFunctor(unitModule()), 2) == 0
    assert polyDegree(InducedFunctor(regularModule(2)), 3) == 2
    assert polyDegree(InducedFunctor(splitting["P2"]), 3) == 2
    assert polyDegree(assFunctor(2), 3) == 2
    assert polyDegree(assFunctor(3), 1) is None


def test_degree_hidden_from_rank_one():
    # Lambda^3 of the abelianization dual: every cross-effect below the third vanishes at rank 1
    F = InducedFunctor(signModule(3))
    assert [F.value(t) for t in range(5)] == [0, 0, 0, 1, 4]
    assert [treValue(F, d).dim for d in (1, 2, 3)] == [0, 0, 1]
    assert polyDegree(F, 3) == 3
    assert polyDegree(F, 2) is None
    assert polyDegree(F, 3, maxRank=6) == 3


def test_polynomial_subfunctors():
    assert pdValue(assFunctor(2), 1, 1).dim == 1
    assert pdValue(abelianTensorPower(2), 1, 1).dim == 0
    assert pdValue(assFunctor(2), 2, 2).dim == 6
    assert pdValue(assFunctor(2), -1, 2).dim == 0


def test_invariants_of_the_top_layer():
    top = treValue(assFunctor(2), 2)
    # ((k^t)^(x)2 (x) k[S_2])^{S_2} has dimension t^2
    assert invariantsDimension(3, top) == 9


@pytest.mark.parametrize("d, t", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)])
def test_top_layer_sequence(d, t):
    assert layerSesCheck(assFunctor(d), d, t)


@pytest.mark.parametrize("t", [1, 2])
def test_polynomial_filtration_increases(t):
    assert filtrationCheck(assFunctor(2), 2, t)
    assert filtrationCheck(abelianTensorPower(2), 2, t)


def test_polynomial_parts_are_exact_on_the_splitting(splitting):
    P2 = splitting["P2"]
    quotient = quotientModule(P2, splitting["extensionSpaces"])
    for d in range(3):
        assert pdExactnessCheck(
            InducedFunctor(splitting["E"]), InducedFunctor(P2), InducedFunctor(quotient), d, 1
        )
