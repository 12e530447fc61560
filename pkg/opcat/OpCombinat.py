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
    Permutations, finite maps, surjections, shuffles and fibre splittings.

    A permutation of {1..n} is the tuple of its images. Enumerations are
    lexicographic on image lists so that basis indices are reproducible.
"""

import itertools
from functools import lru_cache
from math import comb


def identityPerm(n: int) -> tuple:
    return tuple(range(1, n + 1))


def composePerms(p: tuple, q: tuple) -> tuple:
    """
    @return: p o q, i.e. apply q first
    """
    return tuple(p[i - 1] for i in q)


def invertPerm(p: tuple) -> tuple:
    inverse = [0] * len(p)
    for i, image in enumerate(p, 1):
        inverse[image - 1] = i
    return tuple(inverse)


def adjacentTransposition(n: int, i: int) -> tuple:
    """
    The transposition s_i of {1..n} exchanging i and i+1
    """
    images = list(range(1, n + 1))
    images[i - 1], images[i] = images[i], images[i - 1]
    return tuple(images)


def inversionCount(sequence) -> int:
    count = 0
    for i, a in enumerate(sequence):
        for b in sequence[i + 1:]:
            if a > b:
                count += 1
    return count


def permSign(p: tuple) -> int:
    """
    Signature of a permutation

    @param p: tuple of images
    @return: +1 or -1
    """
    return -1 if inversionCount(p) % 2 else 1


def cycleType(p: tuple) -> tuple:
    """
    @return: cycle lengths in decreasing order
    """
    seen = set()
    lengths = []
    for start in range(1, len(p) + 1):
        if start in seen:
            continue
        length = 0
        current = start
        while current not in seen:
            seen.add(current)
            current = p[current - 1]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def adjacentWord(p: tuple) -> list:
    """
    Writes p as a product of adjacent transpositions

    @return: list [i_1, ..., i_L] such that p = s_{i_L} o ... o s_{i_1}
    """
    word = []
    current = tuple(p)
    n = len(current)
    while True:
        for i in range(1, n):
            if current[i - 1] > current[i]:
                current = composePerms(current, adjacentTransposition(n, i))
                word.append(i)
                break
        else:
            return word


def allPerms(n: int) -> list:
    return list(itertools.permutations(range(1, n + 1)))


class FiniteMap:
    """
    A function {1..m} -> {1..n} given by its images
    """

    def __init__(self, domainSize: int, codomainSize: int, images):
        images = tuple(images)
        if len(images) != domainSize:
            raise ValueError(f"Expected {domainSize} images, got {len(images)}")
        for value in images:
            if not 1 <= value <= codomainSize:
                raise ValueError(f"Image {value} outside 1..{codomainSize}")
        self.domainSize = domainSize
        self.codomainSize = codomainSize
        self.images = images
        self.isSurjective = len(set(images)) == codomainSize

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def fibres(self) -> tuple:
        """
        @return: tuple of increasing fibres f^-1(1), ..., f^-1(n)
        """
        fibres = [[] for _ in range(self.codomainSize)]
        for i, value in enumerate(self.images, 1):
            fibres[value - 1].append(i)
        return tuple(tuple(fibre) for fibre in fibres)

    def fibreSizes(self) -> tuple:
        sizes = [0] * self.codomainSize
        for value in self.images:
            sizes[value - 1] += 1
        return tuple(sizes)

    def compose(self, other: "FiniteMap") -> "FiniteMap":
        """
        @return: self o other
        """
        if other.codomainSize != self.domainSize:
            raise ValueError("Cannot compose maps with mismatched middle object")
        return FiniteMap(other.domainSize, self.codomainSize, (self(v) for v in other.images))

    def __eq__(self, other):
        return (
            isinstance(other, FiniteMap)
            and self.codomainSize == other.codomainSize
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.codomainSize, self.images))

    def __repr__(self):
        return f"FiniteMap({self.domainSize}->{self.codomainSize}: {self.images})"


def fibreOrders(f: FiniteMap):
    """
    Generator of all total orders on the fibres of f, as tuples of words
    """
    return itertools.product(*(itertools.permutations(fibre) for fibre in f.fibres()))


def enumerateFunctions(m: int, n: int) -> list:
    """
    All n^m functions {1..m} -> {1..n} in lexicographic order of images
    """
    return [FiniteMap(m, n, images) for images in itertools.product(range(1, n + 1), repeat=m)]


def enumerateSurjections(m: int, n: int) -> list:
    """
    All surjections {1..m} -> {1..n}; empty when m < n
    """
    if m < n:
        return []
    return [f for f in enumerateFunctions(m, n) if f.isSurjective]


@lru_cache(maxsize=None)
def stirling2(m: int, n: int) -> int:
    """
    Stirling number of the second kind S(m, n)
    """
    if m == n:
        return 1
    if n == 0 or m < n:
        return 0
    return n * stirling2(m - 1, n) + stirling2(m - 1, n - 1)


@lru_cache(maxsize=None)
def stirling1(m: int, n: int) -> int:
    """
    Unsigned Stirling number of the first kind c(m, n)
    """
    if m == n:
        return 1
    if n == 0 or m < n:
        return 0
    return (m - 1) * stirling1(m - 1, n) + stirling1(m - 1, n - 1)


def countSurjections(m: int, n: int) -> int:
    """
    Number of surjections by inclusion-exclusion
    """
    return sum((-1) ** k * comb(n, k) * (n - k) ** m for k in range(n + 1))


def risingFactorial(n: int, m: int) -> int:
    """
    n (n+1) ... (n+m-1)
    """
    result = 1
    for k in range(m):
        result *= n + k
    return result


def shuffles(p: int, q: int) -> list:
    """
    All (p,q)-shuffles: permutations increasing on {1..p} and on {p+1..p+q}
    """
    result = []
    for positions in itertools.combinations(range(1, p + q + 1), p):
        chosen = set(positions)
        rest = [i for i in range(1, p + q + 1) if i not in chosen]
        result.append(tuple(positions) + tuple(rest))
    return result


def fibreSplits(fibre) -> list:
    """
    Unordered splittings of an ordered fibre into two nonempty blocks

    The block containing the first element of the fibre is listed first. The
    sign is the signature of the unshuffle bringing A followed by B back to
    the order of the fibre.

    @param fibre: ordered sequence
    @return: list of (A, B, sign)
    """
    fibre = tuple(fibre)
    size = len(fibre)
    if size < 2:
        return []
    splits = []
    for mask in range(2 ** (size - 1) - 1):
        inA = [True] + [bool(mask >> k & 1) for k in range(size - 1)]
        positionsA = [i for i in range(size) if inA[i]]
        positionsB = [i for i in range(size) if not inA[i]]
        sign = -1 if inversionCount(positionsA + positionsB) % 2 else 1
        splits.append(
            (tuple(fibre[i] for i in positionsA), tuple(fibre[i] for i in positionsB), sign)
        )
    return splits


def distributeWord(word, parts: int):
    """
    Generator of all ways of distributing the letters of a word into an
    ordered tuple of subsequences (iterated shuffle coproduct)

    The first piece is split off by a binary unshuffle and the rest is
    distributed recursively. The last piece takes what is left, and with no
    piece at all only the empty word survives the counit.
    """
    word = tuple(word)
    if parts == 0:
        if not word:
            yield ()
        return
    if parts == 1:
        yield (word,)
        return
    size = len(word)
    for k in range(size + 1):
        for positions in itertools.combinations(range(size), k):
            chosen = set(positions)
            first = tuple(word[i] for i in positions)
            rest = tuple(word[i] for i in range(size) if i not in chosen)
            for tail in distributeWord(rest, parts - 1):
                yield (first,) + tail


def setPartitions(d: int, k: int) -> list:
    """
    Set partitions of {1..d} into k blocks, blocks sorted by their minimum

    @return: list of tuples of increasing blocks
    """
    result = []

    def extend(i, blocks):
        if len(blocks) + (d - i + 1) < k:
            return
        if i > d:
            if len(blocks) == k:
                result.append(tuple(tuple(block) for block in blocks))
            return
        for block in blocks:
            block.append(i)
            extend(i + 1, blocks)
            block.pop()
        if len(blocks) < k:
            blocks.append([i])
            extend(i + 1, blocks)
            blocks.pop()

    extend(1, [])
    return result
