from math import factorial

import pytest
from hypothesis import given, strategies as st

from opcat.OpOperads import (
    ASSU,
    COM,
    COMU,
    LIE,
    UNIT,
    OperadError,
    checkOperad,
    expandBracket,
    expandLeftNormed,
    generatorElement,
    isLieElement,
    lieBasis,
    lieBasisWords,
    lieCoordinates,
    operadCompose,
    suspensionSignAction,
)


def test_unknown_operad():
    with pytest.raises(OperadError):
        checkOperad("pois")


def test_bracket_expansion():
    assert expandBracket((1, 2)) == {(1, 2): 1, (2, 1): -1}
    assert expandBracket(((1, 2), 3)) == expandLeftNormed((1, 2, 3))
    with pytest.raises(OperadError):
        expandBracket((1, 1))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_lie_basis_has_factorial_size(n):
    assert len(lieBasis(n)) == factorial(n - 1)
    assert all(word[0] == 1 for word in lieBasisWords(range(1, n + 1)))


def test_lie_basis_of_arity_zero_is_empty():
    assert lieBasis(0) == []


def test_jacobi_identity_in_coordinates():
    total = {}
    for tree in (((1, 2), 3), ((2, 3), 1), ((3, 1), 2)):
        for word, c in expandBracket(tree).items():
            total[word] = total.get(word, 0) + c
    assert not {word: c for word, c in total.items() if c}


def test_coordinates_of_a_rotated_bracket():
    # [[x2, x3], x1] = [[x1, x3], x2] - [[x1, x2], x3]
    coordinates = lieCoordinates(expandBracket(((2, 3), 1)))
    assert coordinates == {(1, 3, 2): 1, (1, 2, 3): -1}


@given(st.permutations([1, 2, 3, 4]))
def test_relabelled_brackets_stay_lie(letters):
    elem = expandLeftNormed(tuple(letters))
    assert isLieElement(elem)


def test_words_are_not_lie_elements():
    assert not isLieElement({(1, 2): 1})
    assert isLieElement({})


def test_substitution_in_ass():
    outer = {(2, 1): 1}
    inners = [{(1, 2): 1}, {(1,): 1}]
    assert operadCompose(ASSU, outer, inners) == {(3, 1, 2): 1}


def test_substitution_in_com_sorts_words():
    assert operadCompose(COM, {(1, 2): 1}, [{(1,): 1}, {(1, 2): 1}]) == {(1, 2, 3): 1}


def test_substitution_of_brackets_stays_in_lie():
    bracket = expandLeftNormed((1, 2))
    composite = operadCompose(LIE, bracket, [bracket, {(1,): 1}])
    assert composite == expandLeftNormed((1, 2, 3))


def test_reduced_operads_have_no_arity_zero_inputs():
    with pytest.raises(OperadError):
        operadCompose(COM, {(1,): 1}, [{(): 1}])
    assert operadCompose(COMU, {(1,): 1}, [{(): 1}]) == {(): 1}


def test_unit_operad_generators():
    assert generatorElement(UNIT, 1) == {(1,): 1}
    assert generatorElement(UNIT, 2) == {}
    assert generatorElement(LIE, 2) == {(1, 2): 1, (2, 1): -1}


def test_suspension_signs():
    assert suspensionSignAction((1, 2, 3), [2, 1]) == 1
    assert suspensionSignAction((2, 1), [2]) == -1
    assert suspensionSignAction((2, 3, 1), [3]) == 1
    assert suspensionSignAction((2, 1, 4, 3), [2, 2]) == 1
    assert suspensionSignAction((1, 3, 2), [1, 2]) == -1
    with pytest.raises(OperadError):
        suspensionSignAction((2, 1), [1, 1])
    with pytest.raises(OperadError):
        suspensionSignAction((1, 2), [1])
