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
    Left modules over Cat Lie, presented by symmetric group actions on each
    arity and the maps M(alpha_n): M(n+1) -> M(n), alpha_n bracketing the
    last two inputs.
"""

import logging
from itertools import combinations

try:
    from opcat.OpExactLin import (
        OpcatException,
        SparseMat,
        Subspace,
        addToVector,
        blockDiag,
        identity,
        kernelBasis,
        quotientMap,
        quotientSection,
        rank,
        zeroMatrix,
    )
    from opcat.OpCombinat import adjacentTransposition, adjacentWord, allPerms, composePerms
    from opcat.OpOperads import LIE
    from opcat.OpPropCat import (
        alphaElement,
        catlieCoordinates,
        compose,
        composeKeys,
        factorizeCatlieBasis,
        homSpace,
        keyObjects,
        lieElementOf,
        permKey,
        tokenElement,
    )
    from opcat.OpUtils import formatScalar, parseModuleData
except ModuleNotFoundError:
    from OpExactLin import (
        OpcatException,
        SparseMat,
        Subspace,
        addToVector,
        blockDiag,
        identity,
        kernelBasis,
        quotientMap,
        quotientSection,
        rank,
        zeroMatrix,
    )
    from OpCombinat import adjacentTransposition, adjacentWord, allPerms, composePerms
    from OpOperads import LIE
    from OpPropCat import (
        alphaElement,
        catlieCoordinates,
        compose,
        composeKeys,
        factorizeCatlieBasis,
        homSpace,
        keyObjects,
        lieElementOf,
        permKey,
        tokenElement,
    )
    from OpUtils import formatScalar, parseModuleData

log = logging.getLogger("opcat.OpLieModules")


class InvalidRepresentationError(OpcatException):
    """
    Raised when matrices do not define a symmetric group representation or have wrong shapes
    """


class RelationViolationError(OpcatException):
    """
    Raised when Lie structure constants break antisymmetry or the Jacobi identity
    """


def _asMatrix(matrix, rows: int, cols: int, label: str) -> SparseMat:
    if matrix is None:
        return zeroMatrix(rows, cols)
    if not isinstance(matrix, SparseMat):
        matrix = SparseMat.fromDense(matrix, cols) if rows else SparseMat(0, cols)
    if matrix.shape() != (rows, cols):
        raise InvalidRepresentationError(f"{label} has shape {matrix.shape()}, expected {(rows, cols)}")
    return matrix


class LieModule:
    """
    Left Cat Lie-module supported in arities 0..truncation
    """

    def __init__(self, truncation: int, dims, sym: dict = None, alpha: dict = None, name: str = "M"):
        """
        @param truncation: the support bound N
        @param dims: dimensions of M(0), ..., M(N)
        @param sym: {n: [M(s_1), ..., M(s_{n-1})]} as SparseMat or dense lists
        @param alpha: {n: M(alpha_n)} for 1 <= n < N, missing entries are zero
        @param name: label used in reports
        """
        dims = list(dims)
        if truncation < 0 or len(dims) != truncation + 1 or any(d < 0 for d in dims):
            raise InvalidRepresentationError("dims must list truncation+1 non negative dimensions")
        sym = sym or {}
        alpha = alpha or {}
        self.truncation = truncation
        self.dims = dims
        self.name = name
        self.sym = {}
        for n in range(truncation + 1):
            matrices = sym.get(n)
            if not dims[n]:
                matrices = [None] * max(n - 1, 0)
            elif matrices is None:
                if n > 1:
                    raise InvalidRepresentationError(f"{name}: missing transpositions in arity {n}")
                matrices = []
            if len(matrices) != max(n - 1, 0):
                raise InvalidRepresentationError(f"{name}: arity {n} needs {max(n - 1, 0)} transpositions")
            self.sym[n] = [
                _asMatrix(m, dims[n], dims[n], f"{name} s_{i + 1} in arity {n}")
                for i, m in enumerate(matrices)
            ]
        self.alpha = {}
        for n in range(1, truncation):
            self.alpha[n] = _asMatrix(alpha.get(n), dims[n], dims[n + 1], f"{name} alpha_{n}")

    def dim(self, n: int) -> int:
        return self.dims[n] if 0 <= n <= self.truncation else 0

    def symMatrix(self, n: int, i: int) -> SparseMat:
        if n > self.truncation:
            return zeroMatrix(0, 0)
        return self.sym[n][i - 1]

    def alphaMatrix(self, n: int) -> SparseMat:
        """
        M(alpha_n): M(n+1) -> M(n)
        """
        if n in self.alpha:
            return self.alpha[n]
        return zeroMatrix(self.dim(n), self.dim(n + 1))

    def permMatrix(self, sigma: tuple) -> SparseMat:
        """
        Action of a permutation, through an adjacent transposition word
        """
        n = len(sigma)
        matrix = identity(self.dim(n))
        for i in adjacentWord(sigma):
            matrix = self.symMatrix(n, i) @ matrix
        return matrix

    def morphismMatrix(self, key: tuple, lastFirst: bool = False) -> SparseMat:
        """
        Action of a Lie basis morphism m -> n, through its factorization into generators
        """
        m, n = keyObjects(key)
        if self.dim(m) == 0 or self.dim(n) == 0:
            return zeroMatrix(self.dim(n), self.dim(m))
        matrix = identity(self.dim(m))
        for kind, value in factorizeCatlieBasis(key, lastFirst=lastFirst):
            if kind == "perm":
                matrix = self.permMatrix(value) @ matrix
            else:
                matrix = self.alphaMatrix(value) @ matrix
        return matrix

    def elementMatrix(self, elem: dict, m: int, n: int) -> SparseMat:
        """
        Action of a linear combination of Lie basis morphisms m -> n
        """
        matrix = zeroMatrix(self.dim(n), self.dim(m))
        for key, c in elem.items():
            matrix = matrix + self.morphismMatrix(key).scale(c)
        return matrix

    def toDict(self) -> dict:
        return {
            "name": self.name,
            "truncation": self.truncation,
            "dims": list(self.dims),
            "sym": {
                str(n): [_denseStrings(m) for m in matrices]
                for n, matrices in self.sym.items()
                if matrices and self.dims[n]
            },
            "alpha": {
                str(n): _denseStrings(m) for n, m in self.alpha.items() if not m.isZero()
            },
        }

    @classmethod
    def fromDict(cls, data: dict) -> "LieModule":
        status, value = parseModuleData(data)
        if status == -1:
            raise InvalidRepresentationError(value)
        return cls(value["truncation"], value["dims"], value["sym"], value["alpha"], data.get("name", "M"))

    def __repr__(self):
        return f"LieModule({self.name}, dims={self.dims})"


def _denseStrings(matrix: SparseMat) -> list:
    return [[formatScalar(v) for v in line] for line in matrix.toDense()]


class ModuleElem:
    """
    A vector of M(n)
    """

    def __init__(self, module: LieModule, arity: int, vector: dict):
        if arity > module.truncation:
            raise InvalidRepresentationError(f"Arity {arity} above the truncation {module.truncation}")
        self.module = module
        self.arity = arity
        self.vector = vector

    def act(self, key: tuple) -> "ModuleElem":
        m, n = keyObjects(key)
        if m != self.arity:
            raise InvalidRepresentationError(f"Morphism from {m} applied to an element of arity {self.arity}")
        return ModuleElem(self.module, n, self.module.morphismMatrix(key).apply(self.vector))


def _coxeterViolations(M: LieModule, n: int) -> list:
    violations = []
    d = M.dim(n)
    ident = identity(d)
    for i in range(1, n):
        s = M.symMatrix(n, i)
        if s @ s != ident:
            violations.append(f"arity {n}: s_{i}^2 != 1")
    for i in range(1, n - 1):
        a = M.symMatrix(n, i)
        b = M.symMatrix(n, i + 1)
        if a @ b @ a != b @ a @ b:
            violations.append(f"arity {n}: braid relation fails for s_{i}, s_{i + 1}")
    for i in range(1, n):
        for j in range(i + 2, n):
            a = M.symMatrix(n, i)
            b = M.symMatrix(n, j)
            if a @ b != b @ a:
                violations.append(f"arity {n}: s_{i} and s_{j} do not commute")
    return violations


def checkRepresentation(matrices: list, dim: int, n: int) -> list:
    """
    Coxeter relations of S_n for the given adjacent transposition matrices
    """
    module = LieModule(n, [0] * n + [dim], {n: matrices})
    return _coxeterViolations(module, n)


def validate(M: LieModule) -> list:
    """
    Relations of a Cat Lie-module

    Checks the symmetric group relations, antisymmetry and equivariance of
    the alpha maps, the Jacobi relation, agreement of two factorizations of
    every basis morphism and compatibility of the action with composition
    by every generator.

    @param M: LieModule
    @return: list of violated relations, empty when M is a module
    """
    violations = []
    N = M.truncation
    for n in range(2, N + 1):
        violations.extend(_coxeterViolations(M, n))
    for n in range(1, N):
        a = M.alphaMatrix(n)
        if a @ M.symMatrix(n + 1, n) != -a:
            violations.append(f"antisymmetry: alpha_{n} s_{n} != -alpha_{n}")
        for i in range(1, n - 1):
            if a @ M.symMatrix(n + 1, i) != M.symMatrix(n, i) @ a:
                violations.append(f"equivariance: alpha_{n} does not commute with s_{i}")
    for n in range(2, N):
        rotation = list(range(1, n + 2))
        rotation[n - 2], rotation[n - 1], rotation[n] = n, n + 1, n - 1
        r = M.permMatrix(tuple(rotation))
        total = identity(M.dim(n + 1)) + r + r @ r
        if not (M.alphaMatrix(n - 1) @ M.alphaMatrix(n) @ total).isZero():
            violations.append(f"Jacobi: alpha_{n - 1} alpha_{n} fails on the last three inputs")
    if violations:
        return violations

    cache = {}

    def action(key):
        if key not in cache:
            cache[key] = M.morphismMatrix(key)
        return cache[key]

    for m in range(N + 1):
        for n in range(m + 1):
            for key in homSpace(LIE, m, n).basis:
                if action(key) != M.morphismMatrix(key, lastFirst=True):
                    violations.append(f"factorizations of {key} act differently")
                    break
            generators = [("perm", adjacentTransposition(n, i)) for i in range(1, n)]
            if n >= 2:
                generators.append(("alpha", n - 1))
            for token in generators:
                tokenMatrix = M.permMatrix(token[1]) if token[0] == "perm" else M.alphaMatrix(token[1])
                for key in homSpace(LIE, m, n).basis:
                    composite = catlieCoordinates(compose(tokenElement(token), lieElementOf(key)))
                    target = n if token[0] == "perm" else n - 1
                    lhs = zeroMatrix(M.dim(target), M.dim(m))
                    for other, c in composite.items():
                        lhs = lhs + action(other).scale(c)
                    if lhs != tokenMatrix @ action(key):
                        violations.append(f"{token[0]} {token[1]} after {key} breaks composition")
                        break
    log.debug("%r: %d violations", M, len(violations))
    return violations


def isValid(M: LieModule) -> bool:
    return not validate(M)


def symmetricGroupModule(d: int, rep: list, dim: int = None, name: str = None) -> LieModule:
    """
    Extension by zero of a representation of S_d

    @param d: the arity carrying the representation
    @param rep: matrices of s_1, ..., s_{d-1}
    @param dim: dimension, needed when d <= 1
    @raise InvalidRepresentationError: the matrices break the relations of S_d
    """
    if dim is None:
        if not rep:
            raise InvalidRepresentationError("The dimension is needed when there are no transpositions")
        first = rep[0]
        dim = first.rows if isinstance(first, SparseMat) else len(first)
    dims = [0] * d + [dim]
    module = LieModule(d, dims, {d: list(rep)} if d > 1 else {}, {}, name or f"k[S_{d}]-module")
    violations = _coxeterViolations(module, d)
    if violations:
        raise InvalidRepresentationError("; ".join(violations))
    return module


def regularRepresentation(d: int) -> list:
    perms = allPerms(d)
    index = {p: i for i, p in enumerate(perms)}
    matrices = []
    for i in range(1, d):
        s = adjacentTransposition(d, i)
        matrix = SparseMat(len(perms), len(perms))
        for p in perms:
            matrix.addEntry(index[composePerms(s, p)], index[p], 1)
        matrices.append(matrix)
    return matrices


def signRepresentation(d: int) -> list:
    return [SparseMat(1, 1, {(0, 0): -1}) for _ in range(1, d)]


def trivialRepresentation(d: int) -> list:
    return [identity(1) for _ in range(1, d)]


def regularModule(d: int) -> LieModule:
    return symmetricGroupModule(d, regularRepresentation(d), len(allPerms(d)), f"k[S_{d}]")


def signModule(d: int) -> LieModule:
    return symmetricGroupModule(d, signRepresentation(d), 1, f"k_sgn({d})")


def trivialModule(d: int) -> LieModule:
    return symmetricGroupModule(d, trivialRepresentation(d), 1, f"k_triv({d})")


def unitModule() -> LieModule:
    return symmetricGroupModule(0, [], 1, "unit")


def checkLieStructure(c: list) -> list:
    """
    Antisymmetry and Jacobi identity of structure constants c[i][j][k] ([e_i, e_j] = sum_k c[i][j][k] e_k)
    """
    r = len(c)
    violations = []

    def bracket(u: dict, v: dict) -> dict:
        result = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, value in enumerate(c[i][j]):
                    addToVector(result, k, a * b * value)
        return result

    for i in range(r):
        if len(c[i]) != r or any(len(c[i][j]) != r for j in range(r)):
            return [f"structure constants must be {r}x{r}x{r}"]
    for i in range(r):
        for j in range(r):
            if any(c[i][j][k] + c[j][i][k] for k in range(r)):
                violations.append(f"antisymmetry fails for e_{i + 1}, e_{j + 1}")
    for i in range(r):
        for j in range(r):
            for k in range(r):
                x, y, z = {i: 1}, {j: 1}, {k: 1}
                total = bracket(x, bracket(y, z))
                for term in (bracket(y, bracket(z, x)), bracket(z, bracket(x, y))):
                    for index, value in term.items():
                        addToVector(total, index, value)
                if total:
                    violations.append(f"Jacobi fails for e_{i + 1}, e_{j + 1}, e_{k + 1}")
    return violations


def abelianStructure(r: int) -> list:
    return [[[0] * r for _ in range(r)] for _ in range(r)]


def sl2Structure() -> list:
    """
    Basis (e, f, h): [e, f] = h, [h, e] = 2e, [h, f] = -2f
    """
    c = abelianStructure(3)
    e, f, h = 0, 1, 2
    c[e][f][h], c[f][e][h] = 1, -1
    c[h][e][e], c[e][h][e] = 2, -2
    c[h][f][f], c[f][h][f] = -2, 2
    return c


def heisenbergStructure() -> list:
    """
    Basis (x, y, z): [x, y] = z, z central
    """
    c = abelianStructure(3)
    c[0][1][2], c[1][0][2] = 1, -1
    return c


LIE_PRESETS = {
    "abelian1": lambda: abelianStructure(1),
    "abelian2": lambda: abelianStructure(2),
    "sl2": sl2Structure,
    "heisenberg": heisenbergStructure,
}


def tensorIndex(digits: tuple, r: int) -> int:
    index = 0
    for digit in digits:
        index = index * r + digit
    return index


def tensorDigits(index: int, n: int, r: int) -> tuple:
    digits = []
    for _ in range(n):
        index, digit = divmod(index, r)
        digits.append(digit)
    return tuple(reversed(digits))


def lieAlgebraModule(c: list, N: int, name: str = "g") -> LieModule:
    """
    The module n -> g^(x)n of a Lie algebra, truncated at N

    Permutations act by place permutation, alpha_n brackets the last two
    tensor factors.

    @param c: structure constants c[i][j][k]
    @param N: truncation
    @raise RelationViolationError: c is not a Lie algebra
    """
    violations = checkLieStructure(c)
    if violations:
        raise RelationViolationError("; ".join(violations))
    r = len(c)
    dims = [r ** n for n in range(N + 1)]
    sym = {}
    for n in range(N + 1):
        matrices = []
        for i in range(1, n):
            matrix = SparseMat(dims[n], dims[n])
            for index in range(dims[n]):
                digits = list(tensorDigits(index, n, r))
                digits[i - 1], digits[i] = digits[i], digits[i - 1]
                matrix.addEntry(tensorIndex(tuple(digits), r), index, 1)
            matrices.append(matrix)
        sym[n] = matrices
    alpha = {}
    for n in range(1, N):
        matrix = SparseMat(dims[n], dims[n + 1])
        for index in range(dims[n + 1]):
            digits = tensorDigits(index, n + 1, r)
            head, a, b = digits[:-2], digits[-2], digits[-1]
            for k, value in enumerate(c[a][b]):
                if value:
                    matrix.addEntry(tensorIndex(head + (k,), r), index, value)
        alpha[n] = matrix
    return LieModule(N, dims, sym, alpha, name)


def representableModule(n: int, N: int) -> LieModule:
    """
    P_n = Cat Lie(n, -) truncated at N, acted on by postcomposition
    """
    dims = [homSpace(LIE, n, t).dim for t in range(N + 1)]
    sym = {}
    for t in range(N + 1):
        space = homSpace(LIE, n, t)
        matrices = []
        for i in range(1, t):
            gen = permKey(adjacentTransposition(t, i))
            matrix = SparseMat(space.dim, space.dim)
            for col, key in enumerate(space.basis):
                matrix.addEntry(space.index[composeKeys(gen, key)], col, 1)
            matrices.append(matrix)
        sym[t] = matrices
    alpha = {}
    for t in range(1, N):
        source = homSpace(LIE, n, t + 1)
        target = homSpace(LIE, n, t)
        columns = [
            target.vector(catlieCoordinates(compose(alphaElement(t), lieElementOf(key))))
            for key in source.basis
        ]
        alpha[t] = SparseMat.fromColumns(target.dim, columns)
    return LieModule(N, dims, sym, alpha, f"P_{n}")


def convolutionBasis(F: LieModule, G: LieModule, n: int) -> list:
    """
    Triples (X, i, j): X the labels carried by F, i a basis index of F(|X|), j of G(n - |X|)
    """
    basis = []
    for a in range(n + 1):
        if F.dim(a) == 0 or G.dim(n - a) == 0:
            continue
        for X in combinations(range(1, n + 1), a):
            for i in range(F.dim(a)):
                for j in range(G.dim(n - a)):
                    basis.append((X, i, j))
    return basis


def convolution(F: LieModule, G: LieModule, truncation: int = None) -> LieModule:
    """
    (F . G)(Z) = sum over Z = X + Y of F(X) (x) G(Y)

    A transposition inside X or inside Y acts on the corresponding factor, one
    exchanging a label of X with a label of Y only relabels. alpha acts on the
    factor holding both bracketed labels and by zero when they are split.
    """
    N = F.truncation + G.truncation
    if truncation is not None:
        N = min(N, truncation)
    bases = [convolutionBasis(F, G, n) for n in range(N + 1)]
    indices = [{triple: i for i, triple in enumerate(basis)} for basis in bases]
    sym = {}
    for n in range(N + 1):
        matrices = []
        for k in range(1, n):
            matrix = SparseMat(len(bases[n]), len(bases[n]))
            for col, (X, i, j) in enumerate(bases[n]):
                Y = tuple(x for x in range(1, n + 1) if x not in X)
                if k in X and k + 1 in X:
                    r = X.index(k) + 1
                    for i2, v in F.symMatrix(len(X), r).column(i).items():
                        matrix.addEntry(indices[n][(X, i2, j)], col, v)
                elif k in Y and k + 1 in Y:
                    r = Y.index(k) + 1
                    for j2, v in G.symMatrix(len(Y), r).column(j).items():
                        matrix.addEntry(indices[n][(X, i, j2)], col, v)
                else:
                    swapped = tuple(sorted(k + 1 if x == k else k if x == k + 1 else x for x in X))
                    matrix.addEntry(indices[n][(swapped, i, j)], col, 1)
            matrices.append(matrix)
        sym[n] = matrices
    alpha = {}
    for n in range(1, N):
        matrix = SparseMat(len(bases[n]), len(bases[n + 1]))
        for col, (X, i, j) in enumerate(bases[n + 1]):
            Y = tuple(x for x in range(1, n + 2) if x not in X)
            if n in X and n + 1 in X:
                for i2, v in F.alphaMatrix(len(X) - 1).column(i).items():
                    matrix.addEntry(indices[n][(X[:-1], i2, j)], col, v)
            elif n in Y and n + 1 in Y:
                for j2, v in G.alphaMatrix(len(Y) - 1).column(j).items():
                    matrix.addEntry(indices[n][(X, i, j2)], col, v)
        alpha[n] = matrix
    return LieModule(N, [len(b) for b in bases], sym, alpha, f"({F.name} . {G.name})")


class ModuleMap:
    """
    Natural transformation between Cat Lie-modules, one matrix per arity
    """

    def __init__(self, source: LieModule, target: LieModule, components: dict):
        self.source = source
        self.target = target
        self.maxArity = max(source.truncation, target.truncation)
        self.components = {}
        for n in range(self.maxArity + 1):
            self.components[n] = _asMatrix(
                components.get(n), target.dim(n), source.dim(n), f"component in arity {n}"
            )

    def isNatural(self) -> bool:
        for n in range(self.maxArity + 1):
            f = self.components[n]
            for i in range(1, n):
                if n <= self.source.truncation and n <= self.target.truncation:
                    if self.target.symMatrix(n, i) @ f != f @ self.source.symMatrix(n, i):
                        return False
            if n + 1 <= self.maxArity:
                fNext = self.components[n + 1]
                if self.target.alphaMatrix(n) @ fNext != f @ self.source.alphaMatrix(n):
                    return False
        return True

    def isSurjective(self) -> bool:
        return all(rank(self.components[n]) == self.target.dim(n) for n in self.components)

    def kernelDims(self) -> dict:
        return {n: self.source.dim(n) - rank(f) for n, f in self.components.items()}


def convolutionProjectiveQuotient(m: int, n: int) -> ModuleMap:
    """
    The surjection P_{m+n} -> P_m . P_n killing the morphisms whose fibres
    mix {1..m} and {m+1..m+n}
    """
    source = representableModule(m + n, m + n)
    leftFactor = representableModule(m, m)
    rightFactor = representableModule(n, n)
    target = convolution(leftFactor, rightFactor, m + n)
    components = {}
    for t in range(m + n + 1):
        space = homSpace(LIE, m + n, t)
        index = {triple: i for i, triple in enumerate(convolutionBasis(leftFactor, rightFactor, t))}
        matrix = SparseMat(target.dim(t), space.dim)
        for col, key in enumerate(space.basis):
            X = []
            left = []
            right = []
            mixing = False
            for output, word in enumerate(key, 1):
                if max(word) <= m:
                    X.append(output)
                    left.append(word)
                elif min(word) > m:
                    right.append(tuple(x - m for x in word))
                else:
                    mixing = True
                    break
            if mixing:
                continue
            i = homSpace(LIE, m, len(left)).index[tuple(left)]
            j = homSpace(LIE, n, len(right)).index[tuple(right)]
            matrix.addEntry(index[(tuple(X), i, j)], col, 1)
        components[t] = matrix
    return ModuleMap(source, target, components)


def homEquations(A: LieModule, B: LieModule, maxArity: int = None) -> tuple:
    """
    Linear system whose solutions are the module maps A -> B

    @return: (SparseMat of equations, number of unknowns)
    """
    if maxArity is None:
        maxArity = max(A.truncation, B.truncation)
    offsets = {}
    total = 0
    for n in range(maxArity + 1):
        offsets[n] = total
        total += A.dim(n) * B.dim(n)

    def var(n, r, c):
        return offsets[n] + r * A.dim(n) + c

    rowsData = []
    for n in range(maxArity + 1):
        a, b = A.dim(n), B.dim(n)
        if not a or not b:
            continue
        for i in range(1, n):
            sA = A.symMatrix(n, i)
            sB = B.symMatrix(n, i)
            for r in range(b):
                for c in range(a):
                    equation = {}
                    for k, v in sA.column(c).items():
                        addToVector(equation, var(n, r, k), v)
                    for k, v in sB.row(r).items():
                        addToVector(equation, var(n, k, c), -v)
                    if equation:
                        rowsData.append(equation)
    for n in range(1, maxArity):
        aA = A.alphaMatrix(n)
        aB = B.alphaMatrix(n)
        for r in range(B.dim(n)):
            for c in range(A.dim(n + 1)):
                equation = {}
                if A.dim(n):
                    for k, v in aA.column(c).items():
                        addToVector(equation, var(n, r, k), v)
                if B.dim(n + 1):
                    for k, v in aB.row(r).items():
                        addToVector(equation, var(n + 1, k, c), -v)
                if equation:
                    rowsData.append(equation)
    return SparseMat.fromRows(total, rowsData), total


def homDimension(A: LieModule, B: LieModule) -> int:
    """
    dim Hom(A, B) in the category of Cat Lie-modules
    """
    equations, unknowns = homEquations(A, B)
    return unknowns - rank(equations)


def homBasis(A: LieModule, B: LieModule) -> list:
    """
    @return: basis of Hom(A, B) as ModuleMaps
    """
    maxArity = max(A.truncation, B.truncation)
    equations, unknowns = homEquations(A, B, maxArity)
    maps = []
    for solution in kernelBasis(equations).basis:
        components = {}
        offset = 0
        for n in range(maxArity + 1):
            size = A.dim(n) * B.dim(n)
            matrix = SparseMat(B.dim(n), A.dim(n))
            for index, v in solution.items():
                if offset <= index < offset + size:
                    r, c = divmod(index - offset, A.dim(n))
                    matrix.addEntry(r, c, v)
            components[n] = matrix
            offset += size
        maps.append(ModuleMap(A, B, components))
    return maps


def _generatorImages(M: LieModule, n: int, vector: dict) -> list:
    images = [(n, M.symMatrix(n, i).apply(vector)) for i in range(1, n)]
    if n >= 2:
        images.append((n - 1, M.alphaMatrix(n - 1).apply(vector)))
    return images


def isSubmodule(M: LieModule, spaces: dict) -> bool:
    for n, space in spaces.items():
        for vector in space.basis:
            for target, image in _generatorImages(M, n, vector):
                if image and not spaces.get(target, Subspace(M.dim(target))).contains(image):
                    return False
    return True


def generatedSubmodule(M: LieModule, generators: dict) -> dict:
    """
    Smallest submodule containing the given vectors

    @param generators: {arity: [vectors]}
    @return: {arity: Subspace}
    """
    spaces = {n: Subspace(M.dim(n)) for n in range(M.truncation + 1)}
    pending = [(n, v) for n, vectors in generators.items() for v in vectors]
    while pending:
        n, vector = pending.pop()
        if not vector or spaces[n].contains(vector):
            continue
        spaces[n] = Subspace(M.dim(n), spaces[n].basis + [vector])
        pending.extend(_generatorImages(M, n, vector))
    return spaces


def subModule(M: LieModule, spaces: dict, name: str = None) -> LieModule:
    """
    The submodule with the given subspaces, in reduced basis coordinates
    """
    if not isSubmodule(M, spaces):
        raise InvalidRepresentationError("The subspaces are not stable under the action")
    spaces = {n: spaces.get(n, Subspace(M.dim(n))) for n in range(M.truncation + 1)}

    def restrict(matrix, source, target):
        columns = [dict(enumerate(target.coordinates(matrix.apply(v)))) for v in source.basis]
        return SparseMat.fromColumns(target.dim, columns)

    sym = {
        n: [restrict(M.symMatrix(n, i), spaces[n], spaces[n]) for i in range(1, n)]
        for n in range(M.truncation + 1)
    }
    alpha = {
        n: restrict(M.alphaMatrix(n), spaces[n + 1], spaces[n]) for n in range(1, M.truncation)
    }
    dims = [spaces[n].dim for n in range(M.truncation + 1)]
    return LieModule(M.truncation, dims, sym, alpha, name or f"sub({M.name})")


def quotientModule(M: LieModule, spaces: dict, name: str = None) -> LieModule:
    if not isSubmodule(M, spaces):
        raise InvalidRepresentationError("Cannot divide by subspaces that are not stable")
    spaces = {n: spaces.get(n, Subspace(M.dim(n))) for n in range(M.truncation + 1)}
    quotients = {n: quotientMap(M.dim(n), spaces[n]) for n in spaces}
    sections = {n: quotientSection(M.dim(n), spaces[n]) for n in spaces}
    sym = {
        n: [quotients[n] @ M.symMatrix(n, i) @ sections[n] for i in range(1, n)]
        for n in range(M.truncation + 1)
    }
    alpha = {
        n: quotients[n] @ M.alphaMatrix(n) @ sections[n + 1] for n in range(1, M.truncation)
    }
    dims = [quotients[n].rows for n in range(M.truncation + 1)]
    return LieModule(M.truncation, dims, sym, alpha, name or f"{M.name}/sub")


def directSum(first: LieModule, second: LieModule) -> LieModule:
    N = max(first.truncation, second.truncation)
    dims = [first.dim(n) + second.dim(n) for n in range(N + 1)]

    def pad(module, n, i):
        if n > module.truncation:
            return zeroMatrix(0, 0)
        return module.symMatrix(n, i)

    sym = {n: [blockDiag([pad(first, n, i), pad(second, n, i)]) for i in range(1, n)] for n in range(N + 1)}
    alpha = {n: blockDiag([first.alphaMatrix(n), second.alphaMatrix(n)]) for n in range(1, N)}
    return LieModule(N, dims, sym, alpha, f"{first.name} + {second.name}")


def projectiveSplitting(N: int = 2) -> dict:
    """
    P_2 = E + k_triv(2) with E the extension of k_sgn(2) by k(1)

    E is generated by the antisymmetric vector of P_2(2), the trivial summand
    by the symmetric one, which alpha_1 kills.

    @return: {"P2", "E", "trivial", "sign"} as LieModules, "extensionSpaces" the
        subspaces of E inside P_2 and "splits": whether E = k(1) + k_sgn(2)
    """
    P2 = representableModule(2, N)
    space = homSpace(LIE, 2, 2)
    straight = space.index[permKey((1, 2))]
    swapped = space.index[permKey((2, 1))]
    antisymmetric = {straight: 1, swapped: -1}
    symmetric = {straight: 1, swapped: 1}
    extensionSpaces = generatedSubmodule(P2, {2: [antisymmetric]})
    extension = subModule(P2, extensionSpaces, "E")
    trivial = subModule(P2, generatedSubmodule(P2, {2: [symmetric]}), "k_triv(2)")
    sign = signModule(2)
    homs = homDimension(sign, extension)
    log.debug("Hom(k_sgn(2), E) has dimension %d", homs)
    return {
        "P2": P2,
        "E": extension,
        "extensionSpaces": extensionSpaces,
        "trivial": trivial,
        "sign": sign,
        "splits": homs != 0,
    }
