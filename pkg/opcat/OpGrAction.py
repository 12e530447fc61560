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
    Contravariant action of free group homomorphisms on Cat AssU(d, -).

    A basis element of Cat AssU(d, t) is read as a tensor of t words in the
    tensor algebra. A homomorphism F_s -> F_t acts through the Hopf algebra
    structure: each word is distributed over the occurrences of its letter in
    the image words, inverse occurrences take the antipode, a word with no
    occurrence must be empty, and the pieces are multiplied per image word.
"""

import logging
from itertools import product

try:
    from opcat.OpExactLin import OpcatException, SparseMat, addToVector, identity
    from opcat.OpCombinat import allPerms, distributeWord, invertPerm
    from opcat.OpPropCat import compose, homSpace, lieElementOf
    from opcat.OpOperads import ASSU, LIE
    from opcat.OpUtils import parseHomText
except ModuleNotFoundError:
    from OpExactLin import OpcatException, SparseMat, addToVector, identity
    from OpCombinat import allPerms, distributeWord, invertPerm
    from OpPropCat import compose, homSpace, lieElementOf
    from OpOperads import ASSU, LIE
    from OpUtils import parseHomText

log = logging.getLogger("opcat.OpGrAction")


class HomomorphismError(OpcatException):
    """
    Raised on malformed free group homomorphisms or mismatched ranks
    """


def invertWord(word: tuple) -> tuple:
    return tuple(-letter for letter in reversed(word))


def freelyReduce(word: tuple) -> tuple:
    reduced = []
    for letter in word:
        if reduced and reduced[-1] == -letter:
            reduced.pop()
        else:
            reduced.append(letter)
    return tuple(reduced)


class FreeGroupHom:
    """
    Homomorphism F_s -> F_t given by the images of the s generators
    """

    def __init__(self, sourceRank: int, targetRank: int, words):
        words = [tuple(word) for word in words]
        if sourceRank < 0 or targetRank < 0:
            raise HomomorphismError("Ranks must be non negative")
        if len(words) != sourceRank:
            raise HomomorphismError(f"Expected {sourceRank} image words, got {len(words)}")
        for word in words:
            for letter in word:
                if letter == 0 or abs(letter) > targetRank:
                    raise HomomorphismError(f"Letter {letter} outside 1..{targetRank}")
        self.sourceRank = sourceRank
        self.targetRank = targetRank
        self.words = words

    @classmethod
    def fromText(cls, text: str) -> "FreeGroupHom":
        status, value = parseHomText(text)
        if status == -1:
            raise HomomorphismError(value)
        return cls(*value)

    @classmethod
    def identity(cls, t: int) -> "FreeGroupHom":
        return cls(t, t, [(i,) for i in range(1, t + 1)])

    def imageOf(self, word: tuple) -> tuple:
        """
        Image of a word of F_s
        """
        image = []
        for letter in word:
            if letter > 0:
                image.extend(self.words[letter - 1])
            else:
                image.extend(invertWord(self.words[-letter - 1]))
        return tuple(image)

    def compose(self, other: "FreeGroupHom") -> "FreeGroupHom":
        """
        @return: self o other, other going first
        """
        if other.targetRank != self.sourceRank:
            raise HomomorphismError(
                f"Cannot compose F_{self.sourceRank} -> F_{self.targetRank} after "
                f"F_{other.sourceRank} -> F_{other.targetRank}"
            )
        return FreeGroupHom(other.sourceRank, self.targetRank, [self.imageOf(w) for w in other.words])

    def reduced(self) -> "FreeGroupHom":
        return FreeGroupHom(self.sourceRank, self.targetRank, [freelyReduce(w) for w in self.words])

    def abelianizationMatrix(self) -> list:
        """
        @return: s x t matrix of exponent sums, entry (j, i) counting letter i in the image of generator j
        """
        matrix = [[0] * self.targetRank for _ in range(self.sourceRank)]
        for j, word in enumerate(self.words):
            for letter in word:
                matrix[j][abs(letter) - 1] += 1 if letter > 0 else -1
        return matrix

    def toText(self) -> str:
        parts = [f"{self.sourceRank} {self.targetRank}"]
        parts.extend(" ".join(str(letter) for letter in word) for word in self.words)
        return " ; ".join(parts)

    def __eq__(self, other):
        if not isinstance(other, FreeGroupHom):
            return NotImplemented
        return (self.sourceRank, self.targetRank, self.words) == (
            other.sourceRank,
            other.targetRank,
            other.words,
        )

    def __hash__(self):
        return hash((self.sourceRank, self.targetRank, tuple(self.words)))

    def __repr__(self):
        return f"FreeGroupHom({self.toText()})"


def _occurrences(phi: FreeGroupHom) -> list:
    """
    @return: per generator of F_t, the list of (image word, position, sign) where it occurs
    """
    occurrences = [[] for _ in range(phi.targetRank)]
    for j, word in enumerate(phi.words):
        for position, letter in enumerate(word):
            occurrences[abs(letter) - 1].append((j, position, 1 if letter > 0 else -1))
    return occurrences


def _slotChoices(word: tuple, slotOccurrences: list) -> list:
    if not slotOccurrences:
        return [((), 1)] if not word else []
    choices = []
    for pieces in distributeWord(word, len(slotOccurrences)):
        sign = 1
        signed = []
        for piece, (_, _, letterSign) in zip(pieces, slotOccurrences):
            if letterSign < 0:
                if len(piece) % 2:
                    sign = -sign
                piece = tuple(reversed(piece))
            signed.append(piece)
        choices.append((tuple(signed), sign))
    return choices


def act(phi: FreeGroupHom, x: tuple) -> dict:
    """
    Action of phi: F_s -> F_t on a basis element of Cat AssU(d, t)

    @param phi: FreeGroupHom
    @param x: basis key, a t-tuple of words
    @return: linear combination {key: coefficient} in Cat AssU(d, s)
    """
    if len(x) != phi.targetRank:
        raise HomomorphismError(f"Element with {len(x)} fibres for a homomorphism into F_{phi.targetRank}")
    occurrences = _occurrences(phi)
    perSlot = []
    for word, slotOccurrences in zip(x, occurrences):
        choices = _slotChoices(word, slotOccurrences)
        if not choices:
            return {}
        perSlot.append(choices)
    result = {}
    for combination in product(*perSlot):
        pieces = {}
        coefficient = 1
        for slot, (signed, sign) in enumerate(combination):
            coefficient *= sign
            for piece, (j, position, _) in zip(signed, occurrences[slot]):
                pieces[(j, position)] = piece
        fibres = tuple(
            tuple(letter for position in range(len(word)) for letter in pieces[(j, position)])
            for j, word in enumerate(phi.words)
        )
        addToVector(result, fibres, coefficient)
    return result


class FunctorValueMap:
    """
    Matrix of phi: F_s -> F_t acting from Cat AssU(d, t) to Cat AssU(d, s)
    """

    def __init__(self, d: int, phi: FreeGroupHom, matrix: SparseMat):
        self.d = d
        self.phi = phi
        self.matrix = matrix

    def __repr__(self):
        return f"FunctorValueMap(d={self.d}, {self.phi!r}, {self.matrix!r})"


def valueMatrix(d: int, phi: FreeGroupHom) -> FunctorValueMap:
    source = homSpace(ASSU, d, phi.targetRank)
    target = homSpace(ASSU, d, phi.sourceRank)
    columns = [target.vector(act(phi, key)) for key in source.basis]
    matrix = SparseMat.fromColumns(target.dim, columns)
    log.debug("value matrix of %r at d=%d: %dx%d", phi, d, matrix.rows, matrix.cols)
    return FunctorValueMap(d, phi, matrix)


def permHom(sigma: tuple) -> FreeGroupHom:
    """
    x_i -> x_sigma(i)
    """
    return FreeGroupHom(len(sigma), len(sigma), [(image,) for image in sigma])


def swapHom(t: int, i: int) -> FreeGroupHom:
    images = list(range(1, t + 1))
    images[i - 1], images[i] = images[i], images[i - 1]
    return permHom(tuple(images))


def inversionHom(t: int, i: int) -> FreeGroupHom:
    """
    c_i: x_i -> x_i^-1
    """
    words = [(k,) for k in range(1, t + 1)]
    words[i - 1] = (-i,)
    return FreeGroupHom(t, t, words)


def projectionHom(t: int, i: int) -> FreeGroupHom:
    """
    F_{t+1} -> F_t sending x_i to the unit and renumbering the others
    """
    words = [(k,) for k in range(1, i)] + [()] + [(k,) for k in range(i, t + 1)]
    return FreeGroupHom(t + 1, t, words)


def inclusionHom(t: int, i: int) -> FreeGroupHom:
    """
    F_t -> F_{t+1} missing the generator x_i of the target
    """
    words = [(k,) if k < i else (k + 1,) for k in range(1, t + 1)]
    return FreeGroupHom(t, t + 1, words)


def killHom(t: int, i: int) -> FreeGroupHom:
    """
    Endomorphism of F_t sending x_i to the unit
    """
    words = [(k,) for k in range(1, t + 1)]
    words[i - 1] = ()
    return FreeGroupHom(t, t, words)


def multiplicationHom(t: int = 1, i: int = 1) -> FreeGroupHom:
    """
    F_t -> F_{t+1}: x_i -> x_i x_{i+1}, later generators shifted
    """
    words = [(k,) for k in range(1, i)] + [(i, i + 1)] + [(k + 1,) for k in range(i + 1, t + 1)]
    return FreeGroupHom(t, t + 1, words)


def foldHom(t: int = 1, i: int = 1) -> FreeGroupHom:
    """
    F_{t+1} -> F_t: x_i, x_{i+1} -> x_i, later generators shifted
    """
    words = [(k,) for k in range(1, i + 1)] + [(k,) for k in range(i, t + 1)]
    return FreeGroupHom(t + 1, t, words)


def generatingHomsInto(t: int) -> list:
    """
    Generating homomorphisms with target F_t, as (name, FreeGroupHom) pairs
    """
    homs = []
    for i in range(1, t):
        homs.append((f"swap{i}", swapHom(t, i)))
    for i in range(1, t + 1):
        homs.append((f"c{i}", inversionHom(t, i)))
        homs.append((f"kill{i}", killHom(t, i)))
        homs.append((f"e{i}", inclusionHom(t - 1, i)))
    for i in range(1, t):
        homs.append((f"mult{i}", multiplicationHom(t - 1, i)))
    for i in range(1, t + 2):
        homs.append((f"p{i}", projectionHom(t, i)))
    for i in range(1, t + 1):
        homs.append((f"fold{i}", foldHom(t, i)))
    return homs


def generatingHoms(maxRank: int) -> list:
    homs = []
    for t in range(1, maxRank + 1):
        homs.extend(generatingHomsInto(t))
    return homs


def rightCompositionMatrix(lam: dict, d: int, e: int, t: int) -> SparseMat:
    """
    Matrix of x -> x o lam from Cat AssU(e, t) to Cat AssU(d, t)

    @param lam: element of Cat AssU(d, e) in AssU coordinates
    """
    source = homSpace(ASSU, e, t)
    target = homSpace(ASSU, d, t)
    columns = [target.vector(compose({key: 1}, lam)) for key in source.basis]
    return SparseMat.fromColumns(target.dim, columns)


def rightLieCompatibilityCheck(d: int, e: int, t: int) -> bool:
    """
    True iff the action of every generating homomorphism into F_t commutes
    with right composition by every Lie basis morphism d -> e
    """
    lies = [lieElementOf(key) for key in homSpace(LIE, d, e).basis]
    for name, phi in generatingHomsInto(t):
        s = phi.sourceRank
        before = valueMatrix(e, phi).matrix
        after = valueMatrix(d, phi).matrix
        for lam in lies:
            left = after @ rightCompositionMatrix(lam, d, e, t)
            right = rightCompositionMatrix(lam, d, e, s) @ before
            if left != right:
                log.info("%s does not commute with right composition at (%d, %d, %d)", name, d, e, t)
                return False
    return True


def contravarianceCheck(d: int, phi: FreeGroupHom, psi: FreeGroupHom) -> bool:
    """
    matrix(phi o psi) == matrix(psi) @ matrix(phi)
    """
    composite = valueMatrix(d, phi.compose(psi)).matrix
    return composite == valueMatrix(d, psi).matrix @ valueMatrix(d, phi).matrix


def grRelationChecks(d: int, maxRank: int) -> list:
    """
    Relations among the generating homomorphisms verified as matrix identities

    @return: list of (relation name, passed)
    """
    results = []
    for t in range(1, maxRank + 1):
        ident = identity(homSpace(ASSU, d, t).dim)
        for i in range(1, t + 1):
            c = valueMatrix(d, inversionHom(t, i)).matrix
            results.append((f"c{i}^2 = id on F_{t}", c @ c == ident))
            kill = valueMatrix(d, killHom(t, i)).matrix
            results.append((f"kill{i}^2 = kill{i} on F_{t}", kill @ kill == kill))
            ck = valueMatrix(d, inversionHom(t, i).compose(killHom(t, i))).matrix
            results.append((f"c{i} kill{i} = kill{i} on F_{t}", ck == kill))
        for i in range(1, t):
            s = valueMatrix(d, swapHom(t, i)).matrix
            results.append((f"swap{i}^2 = id on F_{t}", s @ s == ident))
        for i in range(1, t - 1):
            a = valueMatrix(d, swapHom(t, i)).matrix
            b = valueMatrix(d, swapHom(t, i + 1)).matrix
            results.append((f"braid {i} on F_{t}", a @ b @ a == b @ a @ b))
        for i in range(1, t + 1):
            section = projectionHom(t, i).compose(inclusionHom(t, i))
            results.append(
                (f"p{i} e{i} = id on F_{t}", valueMatrix(d, section).matrix == ident)
            )
            retract = foldHom(t, i).compose(inclusionHom(t, i + 1))
            results.append(
                (f"fold{i} e{i + 1} = id on F_{t}", valueMatrix(d, retract).matrix == ident)
            )
        for perm in allPerms(t):
            inverse = permHom(invertPerm(perm))
            loop = permHom(perm).compose(inverse)
            if valueMatrix(d, loop).matrix != ident:
                results.append((f"perm {perm} inverse on F_{t}", False))
                break
        else:
            results.append((f"permutations invert on F_{t}", True))
    return results
