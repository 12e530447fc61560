#    opcat is a workbench for operadic categories and their Koszul resolutions
#
#    This file is part of opcat.
#
#        opcat is free software: you can redistribute it and/or modify
#        it under the terms of the GNU General Public License as published by
#        the Free Software Foundation, either version 3 of the License, or
#        (at your option) any later version.
#
#        opcat is distributed in the hope that it will be useful,
#        but WITHOUT ANY WARRANTY; without even the implied warranty of
#        MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
#        GNU General Public License for more details.
#
#        You should have received a copy of the GNU General Public License
#        along with opcat. If not, see <http://www.gnu.org/licenses/>.

"""
    The operads Unit, Lie, Com, ComU and AssU: arity spaces, composition and
    the suspension sign.

    Elements are dictionaries {word: coefficient} where a word is a tuple of
    distinct letters. Lie elements live inside the multilinear associative
    span through their commutator expansion; Com and ComU elements use the
    increasing word as canonical key.
"""

import logging
from functools import lru_cache
from itertools import permutations

try:
    from opcat.OpExactLin import OpcatException, addToVector
    from opcat.OpCombinat import permSign
except ModuleNotFoundError:
    from OpExactLin import OpcatException, addToVector
    from OpCombinat import permSign

UNIT = "unit"
LIE = "lie"
COM = "com"
COMU = "comu"
ASSU = "assu"
OPERADS = (UNIT, LIE, COM, COMU, ASSU)
REDUCED = (UNIT, LIE, COM)
COMMUTATIVE = (COM, COMU)

log = logging.getLogger("opcat.OpOperads")


class OperadError(OpcatException):
    """
    Raised on arity mismatches, non multilinear input or elements outside an operad
    """


def checkOperad(operad: str):
    if operad not in OPERADS:
        raise OperadError(f"Unknown operad {operad!r}, expected one of {', '.join(OPERADS)}")


def cleanElem(elem: dict) -> dict:
    return {word: c for word, c in elem.items() if c}


def addElems(first: dict, second: dict, factor=1) -> dict:
    result = dict(first)
    for word, c in second.items():
        addToVector(result, word, factor * c)
    return result


def multiplyElems(first: dict, second: dict) -> dict:
    """
    Concatenation product of two linear combinations of words
    """
    result = {}
    for u, a in first.items():
        for v, b in second.items():
            addToVector(result, u + v, a * b)
    return result


def commutator(first: dict, second: dict) -> dict:
    return addElems(multiplyElems(first, second), multiplyElems(second, first), -1)


def _treeLetters(tree) -> list:
    if isinstance(tree, int):
        return [tree]
    if isinstance(tree, (tuple, list)) and len(tree) == 2:
        return _treeLetters(tree[0]) + _treeLetters(tree[1])
    raise OperadError(f"Bad bracket expression {tree!r}")


def expandBracket(tree) -> dict:
    """
    Commutator expansion of a binary bracket expression

    @param tree: a letter (int) or a pair (left, right) of bracket expressions
    @return: the LieElem as {word: coefficient}
    """
    letters = _treeLetters(tree)
    if len(set(letters)) != len(letters):
        raise OperadError(f"Repeated letter in {tree!r}: not multilinear")

    def expand(node):
        if isinstance(node, int):
            return {(node,): 1}
        return commutator(expand(node[0]), expand(node[1]))

    return expand(tree)


@lru_cache(maxsize=None)
def _leftNormedItems(word: tuple) -> tuple:
    elem = {(word[0],): 1}
    for letter in word[1:]:
        single = {(letter,): 1}
        elem = commutator(elem, single)
    return tuple(sorted(elem.items()))


def expandLeftNormed(word) -> dict:
    """
    Expansion of the left-normed bracket read off a word
    """
    return dict(_leftNormedItems(tuple(word)))


def lieBasisWords(letters) -> list:
    """
    Words indexing the left-normed basis on a set of letters: the minimum first,
    the remaining letters in every order (lexicographic)
    """
    letters = sorted(letters)
    if not letters:
        return []
    first, rest = letters[0], letters[1:]
    return [(first,) + tail for tail in permutations(rest)]


@lru_cache(maxsize=None)
def _lieBasisItems(n: int) -> tuple:
    return tuple(_leftNormedItems(word) for word in lieBasisWords(range(1, n + 1)))


def lieBasis(n: int) -> list:
    """
    Left-normed basis [x_1, x_s(2), ..., x_s(n)] of Lie(n) as associative expansions

    @param n: arity
    @return: list of (n-1)! LieElems, empty for n = 0
    """
    if n < 0:
        raise OperadError(f"Negative arity {n}")
    if n == 0:
        return []
    return [dict(items) for items in _lieBasisItems(n)]


def lieCoordinates(elem: dict) -> dict:
    """
    Coordinates of a Lie element in the left-normed basis of its letters

    The expansion of the basis element of word w is the only one containing
    w among words starting with the smallest letter, so coordinates are read
    off those words.

    @return: {basis word: coefficient}
    """
    if not elem:
        return {}
    first = min(next(iter(elem)))
    return {word: c for word, c in elem.items() if word[0] == first and c}


def isLieElement(elem: dict) -> bool:
    """
    Membership in the Lie subspace of the multilinear associative span
    """
    rebuilt = {}
    for word, c in lieCoordinates(elem).items():
        for w, a in _leftNormedItems(word):
            addToVector(rebuilt, w, c * a)
    return rebuilt == cleanElem(elem)


def elemArity(elem: dict):
    if not elem:
        return None
    return len(next(iter(elem)))


def _canonical(operad: str, word: tuple) -> tuple:
    if operad in COMMUTATIVE:
        return tuple(sorted(word))
    return word


def generatorElement(operad: str, n: int) -> dict:
    """
    A distinguished element of arity n: the bracket chain for Lie, the
    increasing word otherwise
    """
    checkOperad(operad)
    if operad == LIE:
        return expandLeftNormed(tuple(range(1, n + 1))) if n else {}
    if operad == UNIT and n != 1:
        return {}
    if operad == COM and n == 0:
        return {}
    return {tuple(range(1, n + 1)): 1}


def operadCompose(operad: str, outer: dict, inners: list, innerArities: list = None) -> dict:
    """
    Operadic composition by substitution of the inner elements into the
    letters of the outer one, letters of the i-th inner being shifted past
    the arities of the previous inners

    @param operad: operad of the result; for LIE the result is checked to stay Lie
    @param outer: element of arity n
    @param inners: n elements
    @param innerArities: arities of the inners, needed only when some inner is zero
    @return: element of arity sum of the inner arities
    """
    checkOperad(operad)
    arity = elemArity(outer)
    if arity is not None and arity != len(inners):
        raise OperadError(f"Outer arity {arity} but {len(inners)} inner elements")
    arities = []
    for i, inner in enumerate(inners):
        innerArity = elemArity(inner)
        if innerArity is None:
            if innerArities is None:
                return {}
            innerArity = innerArities[i]
        if operad in REDUCED and innerArity == 0:
            raise OperadError(f"Arity 0 input for the reduced operad {operad}")
        if operad == UNIT and innerArity != 1:
            raise OperadError("The unit operad only has arity 1")
        arities.append(innerArity)
    if not outer or any(not inner for inner in inners):
        return {}
    offsets = [sum(arities[:i]) for i in range(len(arities))]
    shifted = [
        {tuple(letter + offsets[i] for letter in word): c for word, c in inner.items()}
        for i, inner in enumerate(inners)
    ]
    result = {}
    for word, c in outer.items():
        partial = {(): c}
        for letter in word:
            partial = multiplyElems(partial, shifted[letter - 1])
        for w, a in partial.items():
            addToVector(result, _canonical(operad, w), a)
    if operad == LIE and not isLieElement(result):
        raise OperadError("Composite left the Lie subspace")
    return result


def suspensionSignAction(p: tuple, fibreSizes: list) -> int:
    """
    Sign of a permutation of within-fibre positions in the suspension twist

    @param p: permutation of the concatenated fibre positions preserving each fibre
    @param fibreSizes: sizes of the consecutive fibres
    @return: product over fibres of the sign of the induced permutation
    """
    sign = 1
    start = 0
    for size in fibreSizes:
        block = p[start:start + size]
        if sorted(block) != list(range(start + 1, start + size + 1)):
            raise OperadError(f"Permutation {p} does not preserve the fibre {start + 1}..{start + size}")
        sign *= permSign(tuple(x - start for x in block))
        start += size
    if start != len(p):
        raise OperadError(f"Fibre sizes {fibreSizes} do not add up to {len(p)}")
    return sign
