import pytest

from opcat.OpExactLin import SparseMat, fullSpace, identity
from opcat.OpLieModules import (
    LIE_PRESETS,
    InvalidRepresentationError,
    LieModule,
    ModuleElem,
    RelationViolationError,
    checkLieStructure,
    checkRepresentation,
    convolution,
    convolutionProjectiveQuotient,
    directSum,
    homBasis,
    homDimension,
    isValid,
    lieAlgebraModule,
    quotientModule,
    regularModule,
    representableModule,
    signModule,
    symmetricGroupModule,
    trivialModule,
    unitModule,
    validate,
)
from opcat.OpOperads import LIE
from opcat.OpPropCat import homSpace


def test_shape_errors():
    with pytest.raises(InvalidRepresentationError):
        LieModule(1, [1])
    with pytest.raises(InvalidRepresentationError):
        LieModule(2, [0, 1, 1], {2: [SparseMat(2, 2)]})
    with pytest.raises(InvalidRepresentationError):
        LieModule(2, [0, 0, 2])


def test_symmetric_group_relations():
    assert checkRepresentation([[[0, 1], [1, 0]]], 2, 2) == []
    assert checkRepresentation([[[1, 1], [0, 1]]], 2, 2) == ["arity 2: s_1^2 != 1"]
    with pytest.raises(InvalidRepresentationError):
        symmetricGroupModule(2, [[[2]]])


@pytest.mark.parametrize(
    "module",
    [unitModule(), trivialModule(2), signModule(3), regularModule(1), regularModule(3)],
    ids=lambda module: module.name,
)
def test_extensions_by_zero_are_modules(module):
    assert validate(module) == []


def test_representables_are_modules():
    for n in (1, 2):
        P = representableModule(n, 3)
        assert P.dims == [homSpace(LIE, n, t).dim for t in range(4)]
        assert isValid(P)


def test_alpha_must_be_antisymmetric():
    # alpha_1 on the regular module of S_2 must factor through the sign
    alpha = {1: SparseMat.fromDense([[1, 0]])}
    module = LieModule(2, [0, 1, 2], {2: [[[0, 1], [1, 0]]]}, alpha)
    violations = validate(module)
    assert any(v.startswith("antisymmetry") for v in violations)


def test_lie_structure_constants():
    assert checkLieStructure(LIE_PRESETS["sl2"]()) == []
    assert checkLieStructure(LIE_PRESETS["heisenberg"]()) == []
    broken = [[[1]]]
    assert checkLieStructure(broken)
    with pytest.raises(RelationViolationError):
        lieAlgebraModule(broken, 2)


@pytest.mark.parametrize("preset", sorted(LIE_PRESETS))
def test_lie_algebra_modules_are_modules(preset):
    M = lieAlgebraModule(LIE_PRESETS[preset](), 3, preset)
    r = len(LIE_PRESETS[preset]())
    assert M.dims == [r ** n for n in range(4)]
    assert validate(M) == []


def test_element_action_brackets_tensors():
    M = lieAlgebraModule(LIE_PRESETS["sl2"](), 2)
    # e (x) f in arity 2 goes to [e, f] = h
    e, f = 0, 1
    v = ModuleElem(M, 2, {e * 3 + f: 1})
    assert v.act(((1, 2),)).vector == {2: 1}
    assert v.act(((1,), (2,))).vector == {e * 3 + f: 1}
    with pytest.raises(InvalidRepresentationError):
        v.act(((1,),))


def test_element_matrix_of_a_bracket():
    P = representableModule(2, 2)
    matrix = P.elementMatrix({((1, 2),): 1}, 2, 1)
    assert matrix.toDense() == [[1, -1]]
    assert P.elementMatrix({((1, 2),): 2}, 2, 1).toDense() == [[2, -2]]


def test_direct_sum_and_homs():
    sign, trivial = signModule(2), trivialModule(2)
    total = directSum(sign, trivial)
    assert total.dims == [0, 0, 2]
    assert homDimension(total, total) == 2
    assert homDimension(sign, trivial) == 0
    maps = homBasis(sign, total)
    assert len(maps) == 1 and maps[0].isNatural()


def test_representable_corepresents_the_value():
    # Hom(P_n, M) = M(n)
    M = lieAlgebraModule(LIE_PRESETS["abelian2"](), 2)
    assert homDimension(representableModule(1, 2), M) == M.dim(1)
    assert homDimension(representableModule(2, 2), M) == M.dim(2)


def test_convolution_of_the_unit():
    P = representableModule(1, 2)
    assert convolution(unitModule(), P).dims == P.dims
    product = convolution(regularModule(1), regularModule(1))
    assert product.dims == [0, 0, 2]
    assert isValid(product)


def test_projective_convolution_quotient():
    quotient = convolutionProjectiveQuotient(1, 1)
    assert quotient.isNatural()
    assert quotient.isSurjective()
    assert quotient.kernelDims() == {0: 0, 1: 1, 2: 0}


def test_projective_splitting(splitting):
    assert splitting["P2"].dims == [0, 1, 2]
    assert splitting["E"].dims == [0, 1, 1]
    assert splitting["trivial"].dims == [0, 0, 1]
    assert directSum(splitting["E"], splitting["trivial"]).dims == splitting["P2"].dims
    assert isValid(splitting["E"])
    assert homDimension(splitting["sign"], splitting["E"]) == 0
    assert not splitting["splits"]


def test_extension_has_sign_on_top(splitting):
    top = quotientModule(splitting["E"], {1: fullSpace(1)})
    assert top.dims == [0, 0, 1]
    assert top.symMatrix(2, 1) == identity(1).scale(-1)


def test_module_dictionaries():
    sl2 = lieAlgebraModule(LIE_PRESETS["sl2"](), 2, "sl2")
    rebuilt = LieModule.fromDict(sl2.toDict())
    assert rebuilt.name == "sl2"
    assert rebuilt.dims == sl2.dims
    assert rebuilt.alphaMatrix(1) == sl2.alphaMatrix(1)
    assert rebuilt.symMatrix(2, 1) == sl2.symMatrix(2, 1)
    with pytest.raises(InvalidRepresentationError):
        LieModule.fromDict({"truncation": 1, "dims": [1]})
