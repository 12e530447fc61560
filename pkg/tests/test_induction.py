from math import comb, factorial

import pytest

from opcat.OpExactLin import Subspace, identity, subspacesEqual
from opcat.OpFunCalc import assFunctor
from opcat.OpGrAction import FreeGroupHom, foldHom, inversionHom, killHom
from opcat.OpInduction import (
    EnvelopingAlgebra,
    InducedFunctor,
    InducedValue,
    InvariantViolationError,
    abelianPowerCheck,
    gammaCheck,
    homFromProjectives,
    homsWithin,
    induceMap,
    induceValue,
    inducedCrossEffect,
    inducedPolyDegree,
    inductionExactnessCheck,
    pbwDimension,
    phiUgCompare,
    phiUgDetails,
    tensorCompatibilityCheck,
    yonedaCheck,
)
from opcat.OpLieModules import (
    LIE_PRESETS,
    lieAlgebraModule,
    quotientModule,
    regularModule,
    representableModule,
    signModule,
    unitModule,
)
from opcat.OpOperads import ASSU, LIE
from opcat.OpPropCat import compose, homSpace, lieElementOf


@pytest.mark.parametrize("t", [0, 1, 2, 3])
def test_induced_regular_one_is_the_abelianization_dual(t):
    assert induceValue(regularModule(1), t).dim == t


@pytest.mark.parametrize("d, t", [(2, 1), (2, 2), (2, 3), (3, 2)])
def test_induced_regular_is_a_tensor_power(d, t):
    assert InducedValue(regularModule(d), t).dim == t ** d


@pytest.mark.parametrize("N, t", [(1, 2), (2, 2), (3, 2), (2, 3)])
def test_induced_abelian_line_is_a_truncated_symmetric_algebra(N, t):
    M = lieAlgebraModule(LIE_PRESETS["abelian1"](), N)
    expected = sum(comb(t + m - 1, m) for m in range(N + 1))
    assert pbwDimension(M, t) == expected
    assert InducedValue(M, t).dim == expected


def test_unit_induces_the_constant_functor():
    for t in range(3):
        assert InducedValue(unitModule(), t).dim == 1


def test_sign_module_induces_exterior_square():
    assert InducedValue(signModule(2), 3).dim == comb(3, 2)


def test_induced_maps_on_the_abelianization_dual():
    M = regularModule(1)
    fold = induceMap(M, foldHom(1, 1)).matrix
    assert fold.toDense() == [[1], [1]]
    inversion = induceMap(M, inversionHom(1, 1)).matrix
    assert inversion == identity(1).scale(-1)
    assert induceMap(M, killHom(1, 1)).matrix.isZero()


def test_induced_maps_compose_contravariantly():
    functor = InducedFunctor(representableModule(2, 2))
    phi = FreeGroupHom(2, 2, [(1, 2), (-2,)])
    psi = FreeGroupHom(2, 2, [(2,), (1, 1)])
    composite = functor.mapMatrix(phi.compose(psi))
    assert composite == functor.mapMatrix(psi) @ functor.mapMatrix(phi)


def test_induction_is_exact_on_the_splitting(splitting):
    P2 = splitting["P2"]
    quotient = quotientModule(P2, splitting["extensionSpaces"])
    for t in range(3):
        assert inductionExactnessCheck(splitting["E"], P2, quotient, t)


@pytest.mark.parametrize("d", [1, 2])
def test_regular_modules_induce_tensor_powers_naturally(d):
    assert abelianPowerCheck(d, 2)


@pytest.mark.parametrize("n", [1, 2])
def test_representables_induce_assu(n):
    assert yonedaCheck(n, 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_natural_transformations_from_assu(n):
    primitives = homFromProjectives(assFunctor(n), n)
    assert primitives.dim == factorial(n)
    table = primitives.characterTable()
    assert table[(1,) * n] == factorial(n)
    assert all(value == 0 for shape, value in table.items() if shape != (1,) * n)


def test_natural_transformations_into_induced_p2():
    # Hom(AssU(1, -), induce(P_2)) = P_2(1)
    functor = InducedFunctor(representableModule(2, 2))
    assert homFromProjectives(functor, 1).dim == 1


@pytest.mark.parametrize("d", [1, 2])
def test_top_cross_effect_recovers_the_module(d):
    assert gammaCheck(regularModule(d), d)


def test_top_cross_effect_of_p2(splitting):
    assert gammaCheck(splitting["P2"], 2)


def test_convolution_goes_to_tensor_products():
    assert tensorCompatibilityCheck(regularModule(1), regularModule(1), 2)
    assert tensorCompatibilityCheck(unitModule(), representableModule(2, 2), 1)


def test_generating_homs_within_a_rank():
    assert all(phi.sourceRank <= 2 and phi.targetRank <= 2 for _, phi in homsWithin(2))


def test_negative_rank_is_rejected():
    with pytest.raises(InvariantViolationError):
        InducedValue(unitModule(), -1)


def test_enveloping_algebra_normal_order():
    algebra = EnvelopingAlgebra(LIE_PRESETS["sl2"]())
    e, f, h = 0, 1, 2
    # f e = e f - h
    assert algebra.normalOrder((f, e)) == {(e, f): 1, (h,): -1}
    assert algebra.antipode((e,)) == {(e,): -1}
    assert algebra.multiply({(e,): 1}, {(): 1}) == {(e,): 1}


@pytest.mark.parametrize("preset", ["abelian1", "heisenberg", "sl2"])
def test_lie_algebra_modules_induce_enveloping_algebras(preset):
    details = phiUgDetails(LIE_PRESETS[preset](), 2, 1)
    assert details["inducedDim"] == details["pbwDim"]
    assert details["passed"], details


def test_enveloping_comparison_at_rank_two():
    assert phiUgCompare(LIE_PRESETS["abelian2"](), 2, 2)
    assert phiUgCompare(LIE_PRESETS["heisenberg"](), 1, 2)


@pytest.mark.parametrize(
    "M",
    [signModule(2), representableModule(2, 2), lieAlgebraModule(LIE_PRESETS["heisenberg"](), 2)],
    ids=lambda M: M.name,
)
def test_generator_relations_span_all_relations(M):
    value = InducedValue(M, 2)
    full = []
    for z in range(M.truncation + 1):
        for target in range(z + 1):
            for lam in homSpace(LIE, z, target).basis:
                action = M.morphismMatrix(lam)
                for b in homSpace(ASSU, target, 2).basis:
                    for v in range(M.dim(z)):
                        relation = value.freeVector(z, compose({b: 1}, lieElementOf(lam)), {v: 1})
                        for w, c in value.freeVector(target, {b: 1}, action.column(v)).items():
                            relation[w] = relation.get(w, 0) - c
                        full.append({k: c for k, c in relation.items() if c})
    assert subspacesEqual(Subspace(value.freeDim, full), value.relations)


def test_cross_effects_of_induced_modules():
    top = inducedCrossEffect(regularModule(2), 2)
    assert top.dim == 2
    assert top.character((2, 1)) == 0
    assert inducedCrossEffect(signModule(3), 2).dim == 0
    assert inducedPolyDegree(regularModule(2), 3) == 2
    assert inducedPolyDegree(signModule(3), 3) == 3
    assert inducedPolyDegree(signModule(3), 2) is None
