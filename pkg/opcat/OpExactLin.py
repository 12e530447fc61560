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
    Exact rational linear algebra: sparse matrices, fraction-free rank,
    reduced echelon forms, kernels, quotients and subspaces.

    Matrices act on column vectors and A @ B means "apply B first".
    Vectors are plain dictionaries {index: value} without stored zeros.
"""

import logging
from fractions import Fraction
from math import gcd

try:
    from opcat.OpUtils import getCachedRank, putCachedRank, matrixDigest
except ModuleNotFoundError:
    from OpUtils import getCachedRank, putCachedRank, matrixDigest

VERSION = "1.0.0"
CACHE_THRESHOLD = 20000

log = logging.getLogger("opcat.OpExactLin")


class OpcatException(Exception):
    """
    Base class of every error raised by the library
    """


class DimensionMismatchError(OpcatException):
    """
    Raised when shapes of matrices, vectors or subspaces do not agree
    """


def toScalar(value):
    """
    Coerces a value to an exact scalar (int or Fraction)

    @param value: int, Fraction or a string like "3/4"
    @return: an int or a Fraction
    """
    if isinstance(value, bool):
        raise TypeError("Booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        value = Fraction(value.strip())
        return value.numerator if value.denominator == 1 else value
    raise TypeError(f"Inexact or unknown scalar type: {type(value).__name__}")


def addToVector(vector: dict, index, value):
    """
    In-place vector[index] += value, dropping the entry when it cancels
    """
    if not value:
        return
    newValue = vector.get(index, 0) + value
    if newValue:
        vector[index] = newValue
    else:
        del vector[index]


class SparseMat:
    """
    Sparse matrix with exact entries stored by rows: {row: {col: value}}
    """

    def __init__(self, rows: int, cols: int, entries=None):
        """
        @param rows: number of rows
        @param cols: number of columns
        @param entries: optional dictionary {(row, col): value} or iterable of (row, col, value)
        """
        if rows < 0 or cols < 0:
            raise DimensionMismatchError(f"Negative matrix shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.data = {}
        if entries is None:
            return
        if isinstance(entries, dict):
            entries = ((r, c, v) for (r, c), v in entries.items())
        for r, c, v in entries:
            self.addEntry(r, c, v)

    def addEntry(self, row: int, col: int, value):
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise DimensionMismatchError(
                f"Entry ({row}, {col}) outside a {self.rows}x{self.cols} matrix"
            )
        value = toScalar(value)
        if not value:
            return
        rowDict = self.data.setdefault(row, {})
        addToVector(rowDict, col, value)
        if not rowDict:
            del self.data[row]

    def get(self, row: int, col: int):
        return self.data.get(row, {}).get(col, 0)

    def entries(self):
        """
        @return: generator of (row, col, value) triplets sorted by row and column
        """
        for r in sorted(self.data):
            rowDict = self.data[r]
            for c in sorted(rowDict):
                yield r, c, rowDict[c]

    def nnz(self) -> int:
        return sum(len(rowDict) for rowDict in self.data.values())

    def isZero(self) -> bool:
        return not self.data

    def shape(self):
        return self.rows, self.cols

    def row(self, r: int) -> dict:
        return dict(self.data.get(r, {}))

    def columnVectors(self) -> dict:
        """
        @return: dictionary {col: vector} of the nonzero columns
        """
        columns = {}
        for r, rowDict in self.data.items():
            for c, v in rowDict.items():
                columns.setdefault(c, {})[r] = v
        return columns

    def column(self, c: int) -> dict:
        return {r: rowDict[c] for r, rowDict in self.data.items() if c in rowDict}

    def apply(self, vector: dict) -> dict:
        """
        Matrix times column vector
        """
        result = {}
        for r, rowDict in self.data.items():
            total = 0
            if len(rowDict) < len(vector):
                for c, v in rowDict.items():
                    if c in vector:
                        total += v * vector[c]
            else:
                for c, w in vector.items():
                    if c in rowDict:
                        total += rowDict[c] * w
            if total:
                result[r] = total
        return result

    def multiply(self, other: "SparseMat") -> "SparseMat":
        """
        @return: self @ other, i.e. the composite "other first, then self"
        """
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"Cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}"
            )
        result = SparseMat(self.rows, other.cols)
        for r, rowDict in self.data.items():
            acc = {}
            for k, v in rowDict.items():
                otherRow = other.data.get(k)
                if otherRow is None:
                    continue
                for c, w in otherRow.items():
                    addToVector(acc, c, v * w)
            if acc:
                result.data[r] = acc
        return result

    def __matmul__(self, other):
        return self.multiply(other)

    def __add__(self, other):
        return self.plus(other, 1)

    def __sub__(self, other):
        return self.plus(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def plus(self, other: "SparseMat", factor=1) -> "SparseMat":
        if self.shape() != other.shape():
            raise DimensionMismatchError(
                f"Cannot add {self.rows}x{self.cols} and {other.rows}x{other.cols}"
            )
        result = self.copy()
        for r, rowDict in other.data.items():
            acc = result.data.setdefault(r, {})
            for c, v in rowDict.items():
                addToVector(acc, c, factor * v)
            if not acc:
                del result.data[r]
        return result

    def scale(self, factor) -> "SparseMat":
        result = SparseMat(self.rows, self.cols)
        if factor:
            result.data = {
                r: {c: factor * v for c, v in rowDict.items()}
                for r, rowDict in self.data.items()
            }
        return result

    def copy(self) -> "SparseMat":
        result = SparseMat(self.rows, self.cols)
        result.data = {r: dict(rowDict) for r, rowDict in self.data.items()}
        return result

    def transpose(self) -> "SparseMat":
        result = SparseMat(self.cols, self.rows)
        for r, rowDict in self.data.items():
            for c, v in rowDict.items():
                result.data.setdefault(c, {})[r] = v
        return result

    def toDense(self) -> list:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries():
            dense[r][c] = v
        return dense

    def trace(self):
        if self.rows != self.cols:
            raise DimensionMismatchError("Trace of a non-square matrix")
        return sum(rowDict.get(r, 0) for r, rowDict in self.data.items())

    def __eq__(self, other):
        if not isinstance(other, SparseMat):
            return NotImplemented
        return self.shape() == other.shape() and self.data == other.data

    def __repr__(self):
        return f"SparseMat({self.rows}x{self.cols}, nnz={self.nnz()})"

    @staticmethod
    def fromDense(dense: list, cols: int = None) -> "SparseMat":
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        result = SparseMat(rows, cols)
        for r, line in enumerate(dense):
            if len(line) != cols:
                raise DimensionMismatchError(f"Row {r} has {len(line)} entries, expected {cols}")
            for c, v in enumerate(line):
                result.addEntry(r, c, v)
        return result

    @staticmethod
    def fromColumns(rows: int, columns: list) -> "SparseMat":
        """
        @param columns: list of vectors, one per column
        """
        result = SparseMat(rows, len(columns))
        for c, vector in enumerate(columns):
            for r, v in vector.items():
                result.addEntry(r, c, v)
        return result

    @staticmethod
    def fromRows(cols: int, rowVectors: list) -> "SparseMat":
        result = SparseMat(len(rowVectors), cols)
        for r, vector in enumerate(rowVectors):
            for c, v in vector.items():
                result.addEntry(r, c, v)
        return result


def identity(n: int) -> SparseMat:
    result = SparseMat(n, n)
    result.data = {i: {i: 1} for i in range(n)}
    return result


def zeroMatrix(rows: int, cols: int) -> SparseMat:
    return SparseMat(rows, cols)


def hstack(matrices: list, rows: int = None) -> SparseMat:
    """
    Places matrices side by side; all must share the row count
    """
    if rows is None:
        if not matrices:
            raise DimensionMismatchError("hstack of nothing needs an explicit row count")
        rows = matrices[0].rows
    result = SparseMat(rows, sum(m.cols for m in matrices))
    offset = 0
    for m in matrices:
        if m.rows != rows:
            raise DimensionMismatchError(f"hstack row mismatch: {m.rows} != {rows}")
        for r, rowDict in m.data.items():
            target = result.data.setdefault(r, {})
            for c, v in rowDict.items():
                target[c + offset] = v
        offset += m.cols
    return result


def vstack(matrices: list, cols: int = None) -> SparseMat:
    if cols is None:
        if not matrices:
            raise DimensionMismatchError("vstack of nothing needs an explicit column count")
        cols = matrices[0].cols
    result = SparseMat(sum(m.rows for m in matrices), cols)
    offset = 0
    for m in matrices:
        if m.cols != cols:
            raise DimensionMismatchError(f"vstack column mismatch: {m.cols} != {cols}")
        for r, rowDict in m.data.items():
            result.data[r + offset] = dict(rowDict)
        offset += m.rows
    return result


def blockDiag(matrices: list) -> SparseMat:
    result = SparseMat(sum(m.rows for m in matrices), sum(m.cols for m in matrices))
    rowOffset = colOffset = 0
    for m in matrices:
        for r, rowDict in m.data.items():
            result.data[r + rowOffset] = {c + colOffset: v for c, v in rowDict.items()}
        rowOffset += m.rows
        colOffset += m.cols
    return result


def kron(first: SparseMat, second: SparseMat) -> SparseMat:
    """
    Kronecker product, the first factor being the most significant index
    """
    result = SparseMat(first.rows * second.rows, first.cols * second.cols)
    for r1, row1 in first.data.items():
        for r2, row2 in second.data.items():
            target = {}
            for c1, v1 in row1.items():
                for c2, v2 in row2.items():
                    target[c1 * second.cols + c2] = v1 * v2
            result.data[r1 * second.rows + r2] = target
    return result


def _integerRow(vector: dict) -> dict:
    """
    Clears denominators and removes the content of a row
    """
    denominators = 1
    for v in vector.values():
        if isinstance(v, Fraction):
            d = v.denominator
            denominators = denominators * d // gcd(denominators, d)
    row = {}
    content = 0
    for c, v in vector.items():
        iv = int(v * denominators)
        row[c] = iv
        content = gcd(content, iv)
    if content > 1:
        row = {c: v // content for c, v in row.items()}
    return row


def _components(rowVectors: list) -> list:
    """
    Groups rows into independent blocks: rows sharing a column are in the same block

    @return: list of lists of row vectors
    """
    parent = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for vector in rowVectors:
        columns = iter(vector)
        first = next(columns, None)
        if first is None:
            continue
        parent.setdefault(first, first)
        rootFirst = find(first)
        for c in columns:
            parent.setdefault(c, c)
            rootC = find(c)
            if rootC != rootFirst:
                parent[rootC] = rootFirst
    blocks = {}
    for vector in rowVectors:
        if vector:
            blocks.setdefault(find(next(iter(vector))), []).append(vector)
    return list(blocks.values())


def _echelonBlock(rowVectors: list) -> dict:
    """
    Fraction-free incremental elimination of one block of rows

    @return: dictionary {pivotColumn: integer row} in echelon form
    """
    pivots = {}
    for vector in sorted(rowVectors, key=len):
        row = _integerRow(vector)
        while row:
            lead = min(row)
            pivotRow = pivots.get(lead)
            if pivotRow is None:
                pivots[lead] = row
                break
            a = pivotRow[lead]
            b = row[lead]
            g = gcd(a, b)
            a //= g
            b //= g
            newRow = {}
            for c, v in row.items():
                newRow[c] = a * v
            for c, v in pivotRow.items():
                w = newRow.get(c, 0) - b * v
                if w:
                    newRow[c] = w
                elif c in newRow:
                    del newRow[c]
            content = 0
            for v in newRow.values():
                content = gcd(content, v)
                if content == 1:
                    break
            if content > 1:
                newRow = {c: v // content for c, v in newRow.items()}
            row = newRow
    return pivots


def echelonRows(rowVectors: list) -> dict:
    """
    @return: {pivotColumn: integer row} for the span of the given row vectors
    """
    pivots = {}
    for block in _components(rowVectors):
        pivots.update(_echelonBlock(block))
    return pivots


def rrefRows(rowVectors: list) -> dict:
    """
    Reduced row echelon form of the span of the given rows

    @return: {pivotColumn: row} with row[pivotColumn] == 1 and zero at the other pivots
    """
    reduced = {}
    for block in _components(rowVectors):
        pivots = _echelonBlock(block)
        normalized = {}
        for c, row in pivots.items():
            lead = row[c]
            normalized[c] = {k: Fraction(v, lead) for k, v in row.items()}
        order = sorted(normalized)
        for index in range(len(order) - 1, -1, -1):
            c = order[index]
            pivotRow = normalized[c]
            for other in order[:index]:
                otherRow = normalized[other]
                factor = otherRow.get(c)
                if factor:
                    for k, v in pivotRow.items():
                        addToVector(otherRow, k, -factor * v)
        for c, row in normalized.items():
            reduced[c] = {k: toScalar(v) for k, v in row.items()}
    return reduced


def rank(m: SparseMat) -> int:
    """
    Rank over the rationals by fraction-free elimination

    @param m: a SparseMat
    @return: the rank
    """
    if m.rows == 0 or m.cols == 0 or m.isZero():
        return 0
    digest = None
    if m.nnz() >= CACHE_THRESHOLD:
        digest = matrixDigest(m.rows, m.cols, m.entries())
        cached = getCachedRank(digest)
        if cached is not None:
            log.debug("rank cache hit for %dx%d", m.rows, m.cols)
            return cached
    rowVectors = list(m.data.values())
    if m.cols < m.rows:
        rowVectors = list(m.transpose().data.values())
    result = len(echelonRows(rowVectors))
    log.debug("rank of %dx%d (nnz %d) is %d", m.rows, m.cols, m.nnz(), result)
    if digest is not None:
        putCachedRank(digest, result)
    return result


class Subspace:
    """
    Subspace of a coordinate space, stored by its reduced echelon basis
    """

    def __init__(self, ambientDim: int, vectors=None, rref: dict = None):
        """
        @param ambientDim: dimension of the ambient space
        @param vectors: spanning vectors, not necessarily independent
        @param rref: an already reduced basis {pivot: row}, used instead of vectors
        """
        self.ambientDim = ambientDim
        if rref is None:
            vectors = [v for v in (vectors or []) if v]
            for vector in vectors:
                for index in vector:
                    if not 0 <= index < ambientDim:
                        raise DimensionMismatchError(
                            f"Index {index} outside an ambient space of dimension {ambientDim}"
                        )
            rref = rrefRows(vectors)
        self.rows = rref
        self.pivots = sorted(rref)
        self.basis = [rref[p] for p in self.pivots]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return self.dim

    def reduce(self, vector: dict) -> dict:
        """
        @return: the remainder of vector after elimination against the basis
        """
        remainder = dict(vector)
        for p in self.pivots:
            factor = remainder.get(p)
            if factor:
                for c, v in self.rows[p].items():
                    addToVector(remainder, c, -factor * v)
        return remainder

    def contains(self, vector: dict) -> bool:
        return not self.reduce(vector)

    def coordinates(self, vector: dict) -> list:
        """
        Coordinates of a vector of the subspace in the reduced basis
        """
        return [vector.get(p, 0) for p in self.pivots]

    def containsSubspace(self, other: "Subspace") -> bool:
        if other.ambientDim != self.ambientDim:
            raise DimensionMismatchError("Subspaces live in different ambient spaces")
        return all(self.contains(v) for v in other.basis)

    def matrix(self) -> SparseMat:
        """
        @return: the inclusion matrix, basis vectors as columns
        """
        return SparseMat.fromColumns(self.ambientDim, self.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        if other.ambientDim != self.ambientDim:
            raise DimensionMismatchError("Subspaces live in different ambient spaces")
        return Subspace(self.ambientDim, self.basis + other.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambientDim})"


def fullSpace(n: int) -> Subspace:
    return Subspace(n, rref={i: {i: 1} for i in range(n)})


def zeroSpace(n: int) -> Subspace:
    return Subspace(n, rref={})


def kernelBasis(m: SparseMat) -> Subspace:
    """
    Kernel of a matrix

    @param m: a SparseMat
    @return: Subspace of dimension cols - rank(m) of vectors mapped to zero
    """
    reduced = rrefRows(list(m.data.values()))
    pivots = set(reduced)
    kernel = {}
    for f in range(m.cols):
        if f not in pivots:
            kernel[f] = {f: 1}
    for p, row in reduced.items():
        for f, v in row.items():
            if f != p:
                kernel[f][p] = -v
    vectors = [kernel[f] for f in sorted(kernel)]
    log.debug("kernel of %dx%d has dimension %d", m.rows, m.cols, len(vectors))
    return Subspace(m.cols, vectors)


def image(m: SparseMat) -> Subspace:
    """
    @return: column span of m
    """
    return Subspace(m.rows, list(m.columnVectors().values()))


def quotientMap(ambientDim: int, relations: Subspace) -> SparseMat:
    """
    Surjection from the ambient space whose kernel is exactly the relation subspace

    The quotient coordinates are indexed by the non-pivot columns of the
    reduced relation basis, in increasing order.

    @param ambientDim: dimension of the ambient space
    @param relations: the Subspace to divide out
    @return: SparseMat of shape (ambientDim - dim relations) x ambientDim
    """
    if relations.ambientDim != ambientDim:
        raise DimensionMismatchError(
            f"Relations live in dimension {relations.ambientDim}, not {ambientDim}"
        )
    pivots = set(relations.pivots)
    freeColumns = [c for c in range(ambientDim) if c not in pivots]
    position = {c: i for i, c in enumerate(freeColumns)}
    q = SparseMat(len(freeColumns), ambientDim)
    for c, i in position.items():
        q.data[i] = {c: 1}
    for p, row in relations.rows.items():
        for c, v in row.items():
            if c != p:
                q.data[position[c]][p] = -v
    return q


def quotientSection(ambientDim: int, relations: Subspace) -> SparseMat:
    """
    Right inverse of quotientMap: the inclusion of the free coordinates
    """
    pivots = set(relations.pivots)
    freeColumns = [c for c in range(ambientDim) if c not in pivots]
    s = SparseMat(ambientDim, len(freeColumns))
    for i, c in enumerate(freeColumns):
        s.data[c] = {i: 1}
    return s


def inducedQuotientMap(targetQuotient: SparseMat, lift: SparseMat, sourceSection: SparseMat) -> SparseMat:
    """
    Map between quotients induced by a lift of ambient spaces: Q_target @ L @ S_source
    """
    return targetQuotient @ (lift @ sourceSection)


def cokernel(m: SparseMat) -> SparseMat:
    """
    @return: quotient map of the codomain by the image of m
    """
    return quotientMap(m.rows, image(m))


def subspacesEqual(a: Subspace, b: Subspace) -> bool:
    """
    True iff the spans coincide, tested by mutual membership

    @raise DimensionMismatchError: the ambient dimensions differ
    """
    if a.ambientDim != b.ambientDim:
        raise DimensionMismatchError(
            f"Cannot compare subspaces of dimensions {a.ambientDim} and {b.ambientDim}"
        )
    if a.dim != b.dim:
        return False
    return a.containsSubspace(b) and b.containsSubspace(a)


def solveInBasis(basis: Subspace, vector: dict):
    """
    @return: coordinates of vector in the reduced basis, or None if it is not in the span
    """
    if not basis.contains(vector):
        return None
    return basis.coordinates(vector)


def homologyDimension(incoming: SparseMat, outgoing: SparseMat, dim: int) -> int:
    """
    dim ker(outgoing) - rank(incoming) at a spot of dimension dim
    """
    rankOut = rank(outgoing) if outgoing is not None else 0
    rankIn = rank(incoming) if incoming is not None else 0
    return dim - rankOut - rankIn
