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
    Hom-spaces of the categories associated to the operads, their composition,
    the tensor product over the symmetric groups and the PBW comparison.

    A basis element (key) of Cat O(m, n) is the tuple of its n fibre words,
    which partition {1..m}:
      - AssU: every function with every order on its fibres;
      - ComU: every function, fibres increasing;
      - Com: surjections, fibres increasing;
      - Lie: surjections, each fibre a left-normed bracket word (minimum first);
      - Unit: bijections.
    Lie elements are handled in AssU coordinates, so a single composition
    engine serves every operad.
"""

import logging
from collections import deque
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial

try:
    from opcat.OpExactLin import (
        DimensionMismatchError,
        SparseMat,
        Subspace,
        addToVector,
        quotientMap,
        quotientSection,
        rank,
    )
    from opcat.OpCombinat import (
        adjacentTransposition,
        enumerateFunctions,
        enumerateSurjections,
        fibreOrders,
        inversionCount,
        invertPerm,
        allPerms,
    )
    from opcat.OpOperads import (
        ASSU,
        COM,
        COMMUTATIVE,
        COMU,
        LIE,
        UNIT,
        OperadError,
        checkOperad,
        expandLeftNormed,
        lieBasisWords,
        lieCoordinates,
    )
except ModuleNotFoundError:
    from OpExactLin import (
        DimensionMismatchError,
        SparseMat,
        Subspace,
        addToVector,
        quotientMap,
        quotientSection,
        rank,
    )
    from OpCombinat import (
        adjacentTransposition,
        enumerateFunctions,
        enumerateSurjections,
        fibreOrders,
        inversionCount,
        invertPerm,
        allPerms,
    )
    from OpOperads import (
        ASSU,
        COM,
        COMMUTATIVE,
        COMU,
        LIE,
        UNIT,
        OperadError,
        checkOperad,
        expandLeftNormed,
        lieBasisWords,
        lieCoordinates,
    )

log = logging.getLogger("opcat.OpPropCat")


def keyObjects(key: tuple) -> tuple:
    """
    @return: (source, target) of a basis key
    """
    return sum(len(word) for word in key), len(key)


def permKey(sigma: tuple) -> tuple:
    """
    Basis key of the permutation sigma seen as a morphism m -> m (fibre j is sigma^-1(j))
    """
    return tuple((x,) for x in invertPerm(sigma))


def identityKey(m: int) -> tuple:
    return tuple((x,) for x in range(1, m + 1))


def _functionKey(f) -> tuple:
    return f.fibres()


def _enumerateBasis(operad: str, m: int, n: int) -> list:
    if operad == ASSU:
        return [tuple(orders) for f in enumerateFunctions(m, n) for orders in fibreOrders(f)]
    if operad == COMU:
        return [_functionKey(f) for f in enumerateFunctions(m, n)]
    if operad == COM:
        return [_functionKey(f) for f in enumerateSurjections(m, n)]
    if operad == UNIT:
        if m != n:
            return []
        return [_functionKey(f) for f in enumerateSurjections(m, n)]
    return [
        tuple(words)
        for f in enumerateSurjections(m, n)
        for words in product(*(lieBasisWords(fibre) for fibre in f.fibres()))
    ]


class HomSpace:
    """
    The hom-space Cat O(m, n) with its enumerated basis
    """

    def __init__(self, operad: str, m: int, n: int):
        checkOperad(operad)
        if m < 0 or n < 0:
            raise DimensionMismatchError(f"Negative objects ({m}, {n})")
        self.operad = operad
        self.m = m
        self.n = n
        self.basis = _enumerateBasis(operad, m, n)
        self.index = {key: i for i, key in enumerate(self.basis)}
        self.dim = len(self.basis)

    def vector(self, elem: dict) -> dict:
        """
        Coordinates of an element given as {key: coefficient}
        """
        try:
            return {self.index[key]: c for key, c in elem.items() if c}
        except KeyError as error:
            raise OperadError(f"{error.args[0]} is not a basis key of {self}") from None

    def element(self, vector: dict) -> dict:
        return {self.basis[i]: c for i, c in vector.items() if c}

    def __contains__(self, key):
        return key in self.index

    def __repr__(self):
        return f"Cat {self.operad}({self.m},{self.n})"


@lru_cache(maxsize=None)
def homSpace(operad: str, m: int, n: int) -> HomSpace:
    """
    Cached hom-space Cat O(m, n)

    @param operad: one of the operad ids of OpOperads
    @param m: source object
    @param n: target object
    @return: HomSpace with a deterministic basis
    """
    space = HomSpace(operad, m, n)
    log.debug("%r has dimension %d", space, space.dim)
    return space


def composeKeys(gKey: tuple, fKey: tuple, operad: str = ASSU) -> tuple:
    """
    Composite g o f of two basis keys

    The fibre of k is the concatenation of the f-fibres of the letters of the
    g-fibre of k, in the order of the g-fibre.
    """
    if sum(len(word) for word in gKey) != len(fKey):
        raise DimensionMismatchError(
            f"Cannot compose {keyObjects(gKey)} after {keyObjects(fKey)}: middle objects differ"
        )
    fibres = tuple(tuple(x for j in word for x in fKey[j - 1]) for word in gKey)
    if operad in COMMUTATIVE:
        return tuple(tuple(sorted(word)) for word in fibres)
    return fibres


def compose(g: dict, f: dict, operad: str = ASSU) -> dict:
    """
    Bilinear composite g o f of two elements {key: coefficient}

    Lie elements are expected in AssU coordinates and compose as such.
    """
    result = {}
    for gKey, a in g.items():
        for fKey, b in f.items():
            addToVector(result, composeKeys(gKey, fKey, operad), a * b)
    return result


def lieElementOf(key: tuple) -> dict:
    """
    AssU coordinates of the Lie basis morphism with the given left-normed fibres
    """
    result = {(): 1}
    for word in key:
        expansion = expandLeftNormed(word)
        extended = {}
        for prefix, a in result.items():
            for w, b in expansion.items():
                extended[prefix + (w,)] = a * b
        result = extended
    return result


def lieKeyCoordinates(fibreElems: list) -> dict:
    """
    Lie basis coordinates of a product of per-fibre Lie elements

    @param fibreElems: one LieElem (AssU words on the fibre letters) per fibre
    @return: {Lie key: coefficient}
    """
    result = {(): 1}
    for elem in fibreElems:
        coordinates = lieCoordinates(elem)
        extended = {}
        for prefix, a in result.items():
            for word, b in coordinates.items():
                extended[prefix + (word,)] = a * b
        result = extended
    return result


def catlieCoordinates(elem: dict) -> dict:
    """
    Lie basis coordinates of an element of Cat Lie(m, n) given in AssU coordinates

    The coefficient of a Lie key is the AssU coefficient of the same key,
    since no other basis expansion contains that tuple of minimum-first words.
    """
    return {
        key: c for key, c in elem.items() if c and all(word and word[0] == min(word) for word in key)
    }


def catlieSubspace(m: int, n: int) -> SparseMat:
    """
    Inclusion of Cat Lie(m, n) into Cat AssU(m, n)

    @return: SparseMat whose columns are the expansions of the Lie basis morphisms
    """
    target = homSpace(ASSU, m, n)
    columns = [target.vector(lieElementOf(key)) for key in homSpace(LIE, m, n).basis]
    return SparseMat.fromColumns(target.dim, columns)


def catlieSpan(m: int, n: int) -> Subspace:
    return Subspace(homSpace(ASSU, m, n).dim, list(catlieSubspace(m, n).columnVectors().values()))


def _relabelSign(key: tuple, sigma: tuple) -> int:
    inverse = invertPerm(sigma)
    parity = 0
    for word in key:
        parity += inversionCount([inverse[x - 1] for x in sorted(word)])
    return -1 if parity % 2 else 1


def _fibreKoszulSign(key: tuple, sigma: tuple) -> int:
    inverse = invertPerm(sigma)
    odd = [j for j in inverse if (len(key[j - 1]) - 1) % 2]
    parity = inversionCount(odd)
    return -1 if parity % 2 else 1


class HomFamily:
    """
    The Sigma-bimodule (a, b) -> Cat O(a, b), optionally twisted by the
    operadic suspension: fibre letters are odd and a fibre of size k has parity k - 1
    """

    def __init__(self, operad: str, twist: bool = False):
        checkOperad(operad)
        if twist and operad == LIE:
            raise OperadError("The suspension twist is only carried on monomial families")
        self.operad = operad
        self.twist = twist
        self.monomialRight = operad != LIE

    def basis(self, a: int, b: int) -> list:
        return homSpace(self.operad, a, b).basis

    def rightAct(self, key: tuple, sigma: tuple) -> dict:
        """
        Precomposition key o sigma by a permutation of the source
        """
        if self.operad == LIE:
            inverse = invertPerm(sigma)
            fibreElems = [expandLeftNormed(tuple(inverse[x - 1] for x in word)) for word in key]
            return lieKeyCoordinates(fibreElems)
        sign = _relabelSign(key, sigma) if self.twist else 1
        return {composeKeys(key, permKey(sigma), self.operad): sign}

    def leftAct(self, sigma: tuple, key: tuple) -> dict:
        """
        Postcomposition sigma o key by a permutation of the target
        """
        sign = _fibreKoszulSign(key, sigma) if self.twist else 1
        return {composeKeys(permKey(sigma), key, self.operad): sign}

    def __repr__(self):
        return f"HomFamily({self.operad}{', twisted' if self.twist else ''})"


class BimoduleTensorSlice:
    """
    The slice (m, n) of B1 (x)_Sigma B2 = sum over t of B1(t, n) (x)_{S_t} B2(m, t)

    freeBasis lists the triples (t, b1, b2) of the free sum, basis the triples
    chosen as representatives of the quotient basis. projection maps the free
    sum onto the quotient and section sends each quotient basis vector to its
    representative.
    """

    def __init__(self, left, right, m, n, freeBasis, basis, projection, section):
        self.left = left
        self.right = right
        self.m = m
        self.n = n
        self.freeBasis = freeBasis
        self.basis = basis
        self.projection = projection
        self.section = section

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"({self.left} (x) {self.right})({self.m},{self.n}) dim {self.dim}"


def _monomial(action: dict):
    if len(action) != 1:
        return None
    (key, sign), = action.items()
    return key, sign


def bimoduleTensor(B1: HomFamily, B2: HomFamily, m: int, n: int, middle=None) -> BimoduleTensorSlice:
    """
    Coinvariants of the free sum under the relations (b1 . s) (x) b2 = b1 (x) (s . b2)

    When both actions permute basis vectors up to sign the quotient is read
    off orbits of adjacent transpositions: an orbit reaching a vector with two
    different signs is zero. Otherwise the relation subspace is divided out.

    @param B1: left factor, acted on from the right
    @param B2: right factor, acted on from the left
    @param m: source object
    @param n: target object
    @param middle: middle objects to sum over, by default 0..m
    @return: BimoduleTensorSlice
    """
    if middle is None:
        middle = range(0, m + 1)
    freeBasis = []
    for t in middle:
        for b1 in B1.basis(t, n):
            for b2 in B2.basis(m, t):
                freeBasis.append((t, b1, b2))
    position = {triple: i for i, triple in enumerate(freeBasis)}
    freeDim = len(freeBasis)

    if B1.monomialRight:
        seen = {}
        basis = []
        rowsData = []
        killedCount = 0
        for start in freeBasis:
            if start in seen:
                continue
            t = start[0]
            orbit = {start: 1}
            queue = deque([start])
            killed = False
            while queue:
                current = queue.popleft()
                _, b1, b2 = current
                for i in range(1, t):
                    s = adjacentTransposition(t, i)
                    c1, e1 = _monomial(B1.rightAct(b1, s))
                    c2, e2 = _monomial(B2.leftAct(s, b2))
                    neighbour = (t, c1, c2)
                    sign = orbit[current] * e1 * e2
                    if neighbour in orbit:
                        if orbit[neighbour] != sign:
                            killed = True
                    else:
                        orbit[neighbour] = sign
                        queue.append(neighbour)
            for member in orbit:
                seen[member] = True
            if killed:
                killedCount += 1
                continue
            basis.append(start)
            rowsData.append({position[member]: sign for member, sign in orbit.items()})
        projection = SparseMat.fromRows(freeDim, rowsData)
        section = SparseMat(freeDim, len(basis))
        for i, rep in enumerate(basis):
            section.data[position[rep]] = {i: 1}
        log.debug("%d orbits, %d killed by a sign", len(basis) + killedCount, killedCount)
        return BimoduleTensorSlice(B1, B2, m, n, freeBasis, basis, projection, section)

    relations = []
    for t, b1, b2 in freeBasis:
        for i in range(1, t):
            s = adjacentTransposition(t, i)
            vector = {}
            for c1, a in B1.rightAct(b1, s).items():
                addToVector(vector, position[(t, c1, b2)], a)
            for c2, a in B2.leftAct(s, b2).items():
                addToVector(vector, position[(t, b1, c2)], -a)
            if vector:
                relations.append(vector)
    relationSpace = Subspace(freeDim, relations)
    projection = quotientMap(freeDim, relationSpace)
    section = quotientSection(freeDim, relationSpace)
    basis = [freeBasis[c] for c in sorted(section.data)]
    log.debug("free sum of dimension %d, %d relations independent", freeDim, relationSpace.dim)
    return BimoduleTensorSlice(B1, B2, m, n, freeBasis, basis, projection, section)


def symmetrizer(key: tuple) -> dict:
    """
    Normalized symmetrizer: a ComU key goes to the average of all orders on its fibres
    """
    weight = Fraction(1)
    for word in key:
        weight /= factorial(len(word))
    result = {}
    for orders in product(*(_orders(word) for word in key)):
        addToVector(result, tuple(orders), weight)
    return result


def _orders(word: tuple) -> list:
    return [tuple(word[i - 1] for i in p) for p in allPerms(len(word))]


def pbwMap(m: int, n: int):
    """
    The composite Cat ComU (x)_Sigma Cat Lie -> Cat AssU on the slice (m, n),
    sending c (x) l to symmetrizer(c) o l

    @return: (BimoduleTensorSlice, SparseMat from the slice to Cat AssU(m, n))
    """
    tensorSlice = bimoduleTensor(HomFamily(COMU), HomFamily(LIE), m, n)
    target = homSpace(ASSU, m, n)
    columns = []
    for t, c, l in tensorSlice.basis:
        columns.append(target.vector(compose(symmetrizer(c), lieElementOf(l))))
    return tensorSlice, SparseMat.fromColumns(target.dim, columns)


def pbwCheck(m: int, n: int) -> dict:
    """
    @return: dictionary with the slice dimension, the AssU dimension, the rank
        of the PBW map and whether it is an isomorphism
    """
    tensorSlice, matrix = pbwMap(m, n)
    target = homSpace(ASSU, m, n).dim
    r = rank(matrix)
    return {
        "m": m,
        "n": n,
        "tensorDim": tensorSlice.dim,
        "assDim": target,
        "rank": r,
        "passed": r == tensorSlice.dim == target,
    }


def alphaElement(r: int) -> dict:
    """
    alpha_r: r + 1 -> r, bracketing the last two inputs, in AssU coordinates
    """
    if r < 1:
        raise OperadError(f"alpha_{r} does not exist")
    head = tuple((x,) for x in range(1, r))
    return {head + ((r, r + 1),): 1, head + ((r + 1, r),): -1}


def tokenElement(token) -> dict:
    kind, value = token
    if kind == "alpha":
        return alphaElement(value)
    if kind == "perm":
        return {permKey(value): 1}
    raise OperadError(f"Unknown generator {token!r}")


def composeTokens(tokens: list, m: int) -> dict:
    """
    Composite of generators listed in application order, starting at object m
    """
    current = {identityKey(m): 1}
    for token in tokens:
        current = compose(tokenElement(token), current)
    return current


def _checkLieKey(key: tuple) -> int:
    m, _ = keyObjects(key)
    letters = sorted(x for word in key for x in word)
    if letters != list(range(1, m + 1)) or any(not word for word in key):
        raise OperadError(f"{key} is not a surjection with nonempty fibres")
    for word in key:
        if word[0] != min(word):
            raise OperadError(f"Fibre {word} is not a left-normed basis word")
    return m


def factorizeCatlieBasis(key: tuple, reverse: bool = False, lastFirst: bool = False) -> list:
    """
    Writes a Lie basis morphism as a composite of permutations and alpha generators

    Each fibre is built bracket by bracket: the slot holding the bracket built
    so far and the slot of the next letter are moved to the last two positions
    and alpha joins them. A final permutation puts the fibres in place.

    @param key: Lie basis key
    @param reverse: list the generators in composition order (last applied first)
    @param lastFirst: build the fibres starting from the last one
    @return: list of ("perm", images) and ("alpha", r) tokens in application order
    """
    m = _checkLieKey(key)
    slots = [(j,) for j in range(1, m + 1)]
    tokens = []
    for word in (reversed(key) if lastFirst else key):
        prefix = (word[0],)
        for letter in word[1:]:
            r = len(slots)
            a = slots.index(prefix)
            b = slots.index((letter,))
            order = [i for i in range(r) if i not in (a, b)] + [a, b]
            if order != list(range(r)):
                tokens.append(("perm", invertPerm(tuple(o + 1 for o in order))))
                slots = [slots[o] for o in order]
            tokens.append(("alpha", r - 1))
            slots = slots[:r - 2] + [slots[r - 2] + slots[r - 1]]
            prefix = prefix + (letter,)
    order = [slots.index(word) for word in key]
    if order != list(range(len(order))):
        tokens.append(("perm", invertPerm(tuple(o + 1 for o in order))))
    if composeTokens(tokens, m) != lieElementOf(key):
        raise OperadError(f"Factorization of {key} does not compose back")
    return list(reversed(tokens)) if reverse else tokens


def symmetricGroupTable(operad: str, m: int) -> bool:
    """
    True iff composition on Cat O(m, m) reproduces the multiplication of S_m
    """
    space = homSpace(operad, m, m)
    perms = allPerms(m)
    if space.dim != len(perms):
        return False
    engine = ASSU if operad == LIE else operad
    for p in perms:
        for q in perms:
            product_ = compose({permKey(p): 1}, {permKey(q): 1}, engine)
            expected = {permKey(tuple(p[i - 1] for i in q)): 1}
            if product_ != expected:
                return False
    return True
