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
    Koszul complexes of the Com/Lie pair and the minimal resolutions built
    from them.

    Terms of the resolution of the d-th tensor power of the abelianization
    dual are written in a graded model: a basis element at rank t is a tuple
    of t words in symbols y_B, B running over the blocks of a set partition
    of {1..d}. The symbol y_B has parity |B| + 1 and the differential splits
    one block,

        D(y_B) = sum over B = A + A', min B in A, of -e(A, A') (-1)^|A| [y_A, y_A']

    with e the unshuffle sign and graded brackets, extended as an odd
    derivation. The Com-side resolution of k[S_m] is the transpose of the
    Chevalley-Eilenberg merge complex of the free Lie algebra.
"""

import logging
from fractions import Fraction
from itertools import product
from math import factorial

try:
    from opcat.OpExactLin import (
        OpcatException,
        SparseMat,
        identity,
        rank,
        zeroMatrix,
    )
    from opcat.OpCombinat import (
        allPerms,
        enumerateSurjections,
        fibreSplits,
        inversionCount,
        setPartitions,
    )
    from opcat.OpFunCalc import abelianTensorPower
    from opcat.OpInduction import homFromProjectives
    from opcat.OpOperads import ASSU, COM, commutator, expandLeftNormed, lieBasisWords, lieCoordinates
    from opcat.OpPropCat import HomFamily, homSpace
    from opcat.OpUtils import matrixTriplets
except ModuleNotFoundError:
    from OpExactLin import (
        OpcatException,
        SparseMat,
        identity,
        rank,
        zeroMatrix,
    )
    from OpCombinat import (
        allPerms,
        enumerateSurjections,
        fibreSplits,
        inversionCount,
        setPartitions,
    )
    from OpFunCalc import abelianTensorPower
    from OpInduction import homFromProjectives
    from OpOperads import ASSU, COM, commutator, expandLeftNormed, lieBasisWords, lieCoordinates
    from OpPropCat import HomFamily, homSpace
    from OpUtils import matrixTriplets

GROP = "grop"
LIE_SIDE = "lie"
COM_SIDE = "com"
SIDES = (GROP, LIE_SIDE, COM_SIDE)

log = logging.getLogger("opcat.OpKoszul")


class ComplexError(OpcatException):
    """
    Raised when consecutive differentials of a built complex do not compose to zero
    """


class KoszulTerm:
    """
    One stage of a Koszul complex evaluated at a rank or an arity
    """

    def __init__(self, side: str, d: int, stage: int, evaluation: int, basis: list):
        self.side = side
        self.d = d
        self.stage = stage
        self.evaluation = evaluation
        self.basis = basis
        self.index = {element: i for i, element in enumerate(basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"KoszulTerm({self.side}, d={self.d}, stage={self.stage}, at={self.evaluation}, dim={self.dim})"


class ChainComplex:
    """
    Terms C_0 -> C_1 -> ... -> C_L with differentials D_k: C_k -> C_{k+1}
    and an optional augmentation of the last term
    """

    def __init__(self, side: str, terms: list, differentials: list, augmentation: SparseMat = None,
                 topProjections: list = None, degrees: list = None):
        """
        @param terms: KoszulTerms in the order of the complex
        @param differentials: len(terms) - 1 SparseMats
        @param augmentation: map from the last term onto the resolved value
        @param topProjections: per term, the projection onto its top layer
        @param degrees: homological degree of every term
        """
        if len(differentials) != max(len(terms) - 1, 0):
            raise ComplexError(f"{len(terms)} terms need {len(terms) - 1} differentials")
        for k, D in enumerate(differentials):
            if D.shape() != (terms[k + 1].dim, terms[k].dim):
                raise ComplexError(f"differential {k} has shape {D.shape()}")
        self.side = side
        self.terms = terms
        self.differentials = differentials
        self.augmentation = augmentation
        self.topProjections = topProjections
        self.degrees = degrees if degrees is not None else list(range(len(terms) - 1, -1, -1))

    @property
    def dims(self) -> list:
        return [term.dim for term in self.terms]

    @property
    def targetDim(self) -> int:
        return self.augmentation.rows if self.augmentation is not None else 0

    def isComplex(self) -> bool:
        for k in range(len(self.differentials) - 1):
            if not (self.differentials[k + 1] @ self.differentials[k]).isZero():
                return False
        if self.augmentation is not None and self.differentials:
            if not (self.augmentation @ self.differentials[-1]).isZero():
                return False
        return True

    def _ranks(self) -> list:
        return [rank(D) for D in self.differentials]

    def homology(self) -> list:
        """
        Homology dimensions at every term, followed by the cokernel of the
        augmentation when there is one
        """
        ranks = self._ranks()
        augmentationRank = rank(self.augmentation) if self.augmentation is not None else 0
        result = []
        for k, term in enumerate(self.terms):
            incoming = ranks[k - 1] if k > 0 else 0
            if k < len(ranks):
                outgoing = ranks[k]
            else:
                outgoing = augmentationRank
            result.append(term.dim - incoming - outgoing)
        if self.augmentation is not None:
            result.append(self.targetDim - augmentationRank)
        return result

    def isExact(self) -> bool:
        """
        True iff the augmented complex has no homology anywhere
        """
        return not any(self.homology())

    def eulerCharacteristic(self) -> int:
        return sum((-1) ** degree * term.dim for degree, term in zip(self.degrees, self.terms))

    def __repr__(self):
        return f"ChainComplex({self.side}, dims={self.dims})"


def parity(block: tuple) -> int:
    return (len(block) + 1) % 2


def signTwistedDualSpace(d: int, t: int) -> tuple:
    """
    The sign-twisted dual of Com in arities (d, t): surjections d -> t with
    increasing fibres, odd fibre letters

    @return: (basis, HomFamily carrying the twisted left and right actions)
    """
    family = HomFamily(COM, twist=True)
    return family.basis(d, t), family


def twistedCharacter(d: int, t: int, sigma: tuple) -> int:
    """
    Character at sigma in S_t of the twisted left action on the dual space
    """
    basis, family = signTwistedDualSpace(d, t)
    total = 0
    for key in basis:
        total += family.leftAct(sigma, key).get(key, 0)
    return total


def gropTerm(d: int, stage: int, t: int) -> KoszulTerm:
    """
    Stage n of the resolution of (a#)^(x)d at rank t: tuples of t words in
    the blocks of a partition of {1..d} into n blocks, each block used once
    """
    basis = []
    if stage >= 1:
        keys = homSpace(ASSU, stage, t).basis
        for blocks in setPartitions(d, stage):
            for key in keys:
                basis.append(tuple(tuple(blocks[letter - 1] for letter in word) for word in key))
    return KoszulTerm(GROP, d, stage, t, basis)


def _splitSymbol(block: tuple) -> list:
    """
    D(y_B) as a list of ((first, second), coefficient) for the ordered products y_first y_second
    """
    result = []
    for A, B, sign in fibreSplits(block):
        coefficient = -sign * (-1) ** len(A)
        result.append(((A, B), coefficient))
        exchange = -1 if parity(A) * parity(B) else 1
        result.append(((B, A), -exchange * coefficient))
    return result


def koszulDifferential(d: int, stage: int, t: int, source: KoszulTerm = None,
                      target: KoszulTerm = None) -> SparseMat:
    """
    The differential from stage n to stage n + 1 of the resolution at rank t

    @return: SparseMat, the zero map out of stage 0
    """
    source = source or gropTerm(d, stage, t)
    target = target or gropTerm(d, stage + 1, t)
    D = SparseMat(target.dim, source.dim)
    if stage == 0:
        return D
    for col, element in enumerate(source.basis):
        before = 0
        for slot, word in enumerate(element):
            for position, block in enumerate(word):
                derivationSign = -1 if before % 2 else 1
                for (first, second), coefficient in _splitSymbol(block):
                    newWord = word[:position] + (first, second) + word[position + 1:]
                    image = element[:slot] + (newWord,) + element[slot + 1:]
                    D.addEntry(target.index[image], col, derivationSign * coefficient)
                before += parity(block)
    return D


def _slotFunction(element: tuple, t: int) -> int:
    images = {}
    for slot, word in enumerate(element):
        for block in word:
            images[block[0]] = slot
    index = 0
    for x in range(1, len(images) + 1):
        index = index * t + images[x]
    return index


def gropAugmentation(d: int, t: int, term: KoszulTerm) -> SparseMat:
    """
    Stage d onto (a#)^(x)d(F_t): forget the order inside every word
    """
    A = SparseMat(t ** d, term.dim)
    for col, element in enumerate(term.basis):
        A.addEntry(_slotFunction(element, t), col, 1)
    return A


def gropTopProjection(term: KoszulTerm) -> SparseMat:
    """
    Projection of a stage onto its top layer: words become graded
    commutative monomials, symbols sorted by their minimum with the Koszul sign
    """
    tops = {}
    columns = []
    for element in term.basis:
        sign = 1
        top = []
        for word in element:
            parities = [parity(block) for block in word]
            order = sorted(range(len(word)), key=lambda i: word[i][0])
            odd = [i for i in order if parities[i]]
            if inversionCount(odd) % 2:
                sign = -sign
            top.append(tuple(word[i] for i in order))
        top = tuple(top)
        tops.setdefault(top, len(tops))
        columns.append({tops[top]: sign})
    return SparseMat.fromColumns(len(tops), columns)


def resolutionAtRank(d: int, t: int) -> ChainComplex:
    """
    The augmented resolution of (a#)^(x)d evaluated at F_t

    @raise ComplexError: D o D != 0
    """
    terms = [gropTerm(d, stage, t) for stage in range(1, d + 1)]
    differentials = [
        koszulDifferential(d, stage, t, terms[stage - 1], terms[stage]) for stage in range(1, d)
    ]
    complex_ = ChainComplex(
        GROP,
        terms,
        differentials,
        gropAugmentation(d, t, terms[-1]),
        [gropTopProjection(term) for term in terms],
        [d - stage for stage in range(1, d + 1)],
    )
    if not complex_.isComplex():
        raise ComplexError(f"D o D != 0 in the resolution of d={d} at rank {t}")
    log.debug("resolution of d=%d at rank %d: dims %s", d, t, complex_.dims)
    return complex_


def resolutionGrop(d: int, tMax: int) -> dict:
    """
    @return: {t: ChainComplex} for 0 <= t <= tMax
    """
    if d < 1:
        raise ComplexError("The resolved tensor power needs d >= 1")
    return {t: resolutionAtRank(d, t) for t in range(tMax + 1)}


def minimalityCheck(complex_: ChainComplex) -> bool:
    """
    True iff every differential vanishes on top layers: no component of a
    differential survives the top projection of its target
    """
    if complex_.topProjections is None:
        return True
    for k, D in enumerate(complex_.differentials):
        if not (complex_.topProjections[k + 1] @ D).isZero():
            return False
    return True


def _groupedTerm(side: str, m: int, blocks: int, n: int) -> KoszulTerm:
    """
    Partitions of {1..m} into blocks decorated by left-normed Lie words and
    distributed onto n nonempty groups; a group lists its blocks by minimum
    """
    basis = []
    surjections = enumerateSurjections(blocks, n) if n else []
    for partition in setPartitions(m, blocks):
        for words in product(*(lieBasisWords(block) for block in partition)):
            for s in surjections:
                groups = [[] for _ in range(n)]
                for b, image in enumerate(s.images):
                    groups[image - 1].append(words[b])
                basis.append(tuple(tuple(group) for group in groups))
    return KoszulTerm(side, m, blocks, n, basis)


def _bracketWords(first: tuple, second: tuple) -> dict:
    return lieCoordinates(commutator(expandLeftNormed(first), expandLeftNormed(second)))


def mergeDifferential(source: KoszulTerm, target: KoszulTerm) -> SparseMat:
    """
    Chevalley-Eilenberg differential merging two Lie words of the same group

    x_1 ^ ... ^ x_k -> sum over j < l of (-1)^(j+l) [x_j, x_l] ^ (the others),
    the bracket then moved to its place by minimum.
    """
    D = SparseMat(target.dim, source.dim)
    for col, element in enumerate(source.basis):
        before = 0
        for g, group in enumerate(element):
            outer = -1 if before % 2 else 1
            for j in range(len(group)):
                for l in range(j + 1, len(group)):
                    rest = group[:j] + group[j + 1:l] + group[l + 1:]
                    sign = outer * (-1) ** (j + l)
                    for word, c in _bracketWords(group[j], group[l]).items():
                        place = sum(1 for other in rest if other[0] < word[0])
                        merged = rest[:place] + (word,) + rest[place:]
                        image = element[:g] + (merged,) + element[g + 1:]
                        D.addEntry(target.index[image], col, sign * (-1) ** place * c)
            before += len(group)
    return D


def resolutionLieSide(m: int, n: int) -> ChainComplex:
    """
    Multilinear part in m letters of the tensor product of n reduced
    Chevalley-Eilenberg complexes of the free Lie algebra, blocks decreasing
    """
    terms = [_groupedTerm(LIE_SIDE, m, blocks, n) for blocks in range(m, 0, -1)]
    differentials = [mergeDifferential(terms[k], terms[k + 1]) for k in range(len(terms) - 1)]
    complex_ = ChainComplex(LIE_SIDE, terms, differentials, degrees=[blocks for blocks in range(m, 0, -1)])
    if not complex_.isComplex():
        raise ComplexError(f"merge differential does not square to zero for m={m}, n={n}")
    return complex_


def comSideAtArity(m: int, n: int) -> ChainComplex:
    """
    The resolution of k[S_m] by surjection modules evaluated at n: the
    transpose of the merge complex, stages by increasing number of blocks
    """
    lie = resolutionLieSide(m, n)
    terms = [
        KoszulTerm(COM_SIDE, m, term.stage, n, term.basis) for term in reversed(lie.terms)
    ]
    differentials = [D.transpose() for D in reversed(lie.differentials)]
    tops = []
    for term in terms:
        tops.append(identity(term.dim) if term.stage == n else zeroMatrix(0, term.dim))
    complex_ = ChainComplex(
        COM_SIDE, terms, differentials, topProjections=tops, degrees=[m - term.stage for term in terms]
    )
    if not complex_.isComplex():
        raise ComplexError(f"Com-side differential does not square to zero for m={m}, n={n}")
    return complex_


def resolutionComSide(m: int, nMax: int) -> dict:
    """
    @return: {n: ChainComplex} for 0 <= n <= nMax
    """
    if m < 1:
        raise ComplexError("The resolved arity needs m >= 1")
    return {n: comSideAtArity(m, n) for n in range(nMax + 1)}


def comSideCheck(m: int, nMax: int) -> bool:
    """
    Homology concentrated at the top stage, of dimension m! at n = m and zero elsewhere
    """
    for n, complex_ in resolutionComSide(m, nMax).items():
        homology = complex_.homology()
        expected = [0] * (len(homology) - 1) + [factorial(m) if n == m else 0]
        if homology != expected:
            log.info("Com-side homology for m=%d at n=%d is %s", m, n, homology)
            return False
    return True


def extDimensions(d: int, n: int) -> dict:
    """
    Dimensions of the Hom complex from the resolution of (a#)^(x)d into (a#)^(x)n

    Stage k contributes Hom_{S_k}(dual(d, k), Hom(AssU(k,-), (a#)^(x)n)),
    measured by averaging characters.

    @return: {"degrees": {homological degree: dimension}, "euler": alternating sum}
    """
    target = abelianTensorPower(n)
    degrees = {}
    for k in range(1, d + 1):
        primitives = homFromProjectives(target, k)
        if primitives.dim == 0:
            degrees[d - k] = 0
            continue
        total = Fraction(0)
        for sigma in allPerms(k):
            total += twistedCharacter(d, k, sigma) * primitives.character(sigma)
        total /= factorial(k)
        if total.denominator != 1:
            raise ComplexError(f"Non integral Hom dimension {total}")
        degrees[d - k] = int(total)
    euler = sum((-1) ** degree * dim for degree, dim in degrees.items())
    return {"degrees": degrees, "euler": euler}


def resolutionData(d: int, complexes: dict, side: str = GROP) -> dict:
    """
    Report dictionary for the exports of OpUtils
    """
    ranks = []
    for evaluation, complex_ in sorted(complexes.items()):
        ranks.append(
            {
                "rank": evaluation,
                "dims": complex_.dims,
                "target": complex_.targetDim,
                "homology": complex_.homology() + ([] if complex_.augmentation is not None else [0]),
                "euler": complex_.eulerCharacteristic(),
                "minimal": minimalityCheck(complex_),
                "differentials": [matrixTriplets(D) for D in complex_.differentials],
            }
        )
    return {"d": d, "side": side, "ranks": ranks}
