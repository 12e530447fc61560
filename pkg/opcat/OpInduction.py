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
    Induction of Cat Lie-modules to functors on free groups: the coend of
    Cat AssU(-, t) against a module, its induced maps, and the comparisons
    with representables, tensor powers of the abelianization, enveloping
    algebras and convolution products.
"""

import logging
from fractions import Fraction
from itertools import product
from math import comb, factorial

try:
    from opcat.OpExactLin import (
        OpcatException,
        SparseMat,
        Subspace,
        addToVector,
        blockDiag,
        identity,
        inducedQuotientMap,
        kernelBasis,
        kron,
        quotientMap,
        quotientSection,
        rank,
        vstack,
    )
    from opcat.OpCombinat import adjacentTransposition, allPerms, cycleType, distributeWord
    from opcat.OpFunCalc import (
        FunctorHandle,
        abelianizationDual,
        crossEffect,
        polyDegree,
        stackedMaps,
        treValue,
    )
    from opcat.OpGrAction import (
        FreeGroupHom,
        act,
        foldHom,
        generatingHoms,
        inclusionHom,
        permHom,
        projectionHom,
        valueMatrix,
    )
    from opcat.OpLieModules import (
        LieModule,
        convolution,
        convolutionBasis,
        lieAlgebraModule,
        regularModule,
        representableModule,
        tensorDigits,
    )
    from opcat.OpOperads import ASSU, LIE
    from opcat.OpPropCat import alphaElement, compose, composeKeys, homSpace, lieElementOf, permKey
except ModuleNotFoundError:
    from OpExactLin import (
        OpcatException,
        SparseMat,
        Subspace,
        addToVector,
        blockDiag,
        identity,
        inducedQuotientMap,
        kernelBasis,
        kron,
        quotientMap,
        quotientSection,
        rank,
        vstack,
    )
    from OpCombinat import adjacentTransposition, allPerms, cycleType, distributeWord
    from OpFunCalc import (
        FunctorHandle,
        abelianizationDual,
        crossEffect,
        polyDegree,
        stackedMaps,
        treValue,
    )
    from OpGrAction import (
        FreeGroupHom,
        act,
        foldHom,
        generatingHoms,
        inclusionHom,
        permHom,
        projectionHom,
        valueMatrix,
    )
    from OpLieModules import (
        LieModule,
        convolution,
        convolutionBasis,
        lieAlgebraModule,
        regularModule,
        representableModule,
        tensorDigits,
    )
    from OpOperads import ASSU, LIE
    from OpPropCat import alphaElement, compose, composeKeys, homSpace, lieElementOf, permKey

log = logging.getLogger("opcat.OpInduction")


class InvariantViolationError(OpcatException):
    """
    Raised when a computed object breaks an identity that must hold, which
    points at a convention error rather than bad input
    """


def pbwDimension(M: LieModule, t: int) -> int:
    """
    sum over m of dim (k Fin(m, t) (x)_{S_m} M(m)), by averaging characters

    The permutation character of the functions {1..m} -> {1..t} at sigma is
    t to the number of cycles of sigma.
    """
    total = Fraction(0)
    for m in range(M.truncation + 1):
        if not M.dim(m):
            continue
        classes = {}
        for sigma in allPerms(m):
            shape = cycleType(sigma)
            if shape in classes:
                classes[shape][1] += 1
            else:
                classes[shape] = [sigma, 1]
        part = Fraction(0)
        for shape, (sigma, size) in classes.items():
            part += size * Fraction(t) ** len(shape) * M.permMatrix(sigma).trace()
        total += part / factorial(m)
    if total.denominator != 1:
        raise InvariantViolationError(f"Non integral coinvariant dimension {total} for {M.name}")
    return int(total)


class InducedValue:
    """
    The value at F_t of the functor induced by a Cat Lie-module: the sum over
    z of Cat AssU(z, t) (x) M(z) divided by (b o lambda) (x) v - b (x) M(lambda) v
    for lambda a transposition or an alpha generator
    """

    def __init__(self, M: LieModule, t: int, checkPbw: bool = True):
        if t < 0:
            raise InvariantViolationError(f"Negative rank {t}")
        self.module = M
        self.t = t
        self.offsets = {}
        self.freeBasis = []
        offset = 0
        for z in range(M.truncation + 1):
            self.offsets[z] = offset
            space = homSpace(ASSU, z, t)
            for key in space.basis:
                for v in range(M.dim(z)):
                    self.freeBasis.append((z, key, v))
            offset += space.dim * M.dim(z)
        self.freeDim = offset
        self.relations = Subspace(self.freeDim, self._relationVectors())
        self.projection = quotientMap(self.freeDim, self.relations)
        self.section = quotientSection(self.freeDim, self.relations)
        self.representatives = sorted(self.section.data)
        if checkPbw:
            expected = pbwDimension(M, t)
            if expected != self.dim:
                raise InvariantViolationError(
                    f"Induced value of {M.name} at F_{t} has dimension {self.dim}, "
                    f"the PBW count gives {expected}"
                )
        log.debug("induced value of %s at F_%d: %d free, dimension %d", M.name, t, self.freeDim, self.dim)

    @property
    def dim(self) -> int:
        return self.projection.rows

    def freeIndex(self, z: int, key: tuple, v: int) -> int:
        return self.offsets[z] + homSpace(ASSU, z, self.t).index[key] * self.module.dim(z) + v

    def freeVector(self, z: int, elem: dict, vector: dict) -> dict:
        """
        Free coordinates of elem (x) vector for elem in Cat AssU(z, t) and vector in M(z)
        """
        result = {}
        for key, a in elem.items():
            for v, b in vector.items():
                addToVector(result, self.freeIndex(z, key, v), a * b)
        return result

    def _relationVectors(self) -> list:
        M = self.module
        vectors = []
        for z in range(M.truncation + 1):
            dim = M.dim(z)
            basis = homSpace(ASSU, z, self.t).basis
            for i in range(1, z if dim else 1):
                sKey = permKey(adjacentTransposition(z, i))
                matrix = M.symMatrix(z, i)
                for b in basis:
                    moved = composeKeys(b, sKey)
                    for v in range(dim):
                        relation = {self.freeIndex(z, moved, v): 1}
                        for w, value in matrix.column(v).items():
                            addToVector(relation, self.freeIndex(z, b, w), -value)
                        vectors.append(relation)
            if z == 0 or z + 1 > M.truncation or not M.dim(z + 1):
                continue
            alpha = alphaElement(z)
            matrix = M.alphaMatrix(z)
            for b in basis:
                bracketed = compose({b: 1}, alpha)
                for v in range(M.dim(z + 1)):
                    relation = self.freeVector(z + 1, bracketed, {v: 1})
                    for w, value in matrix.column(v).items():
                        addToVector(relation, self.freeIndex(z, b, w), -value)
                    vectors.append(relation)
        return vectors

    def __repr__(self):
        return f"InducedValue({self.module.name}, t={self.t}, dim={self.dim})"


def induceValue(M: LieModule, t: int) -> InducedValue:
    return InducedValue(M, t)


class AnalyticValueMap:
    """
    The matrix of an induced functor on phi: F_s -> F_t, from the value at F_t to the value at F_s
    """

    def __init__(self, source: InducedValue, target: InducedValue, phi: FreeGroupHom, matrix: SparseMat):
        self.source = source
        self.target = target
        self.phi = phi
        self.matrix = matrix

    def __repr__(self):
        return f"AnalyticValueMap({self.phi!r}, {self.matrix.rows}x{self.matrix.cols})"


def liftedMatrix(M: LieModule, phi: FreeGroupHom) -> SparseMat:
    """
    phi acting on the free parts: value matrix (x) identity on every component
    """
    blocks = []
    for z in range(M.truncation + 1):
        blocks.append(kron(valueMatrix(z, phi).matrix, identity(M.dim(z))))
    return blockDiag(blocks)


def induceMap(M: LieModule, phi: FreeGroupHom, source: InducedValue = None, target: InducedValue = None) -> AnalyticValueMap:
    """
    Induced map of phi: F_s -> F_t on the induced functor of M

    @raise InvariantViolationError: the lifted map does not preserve the relations
    """
    source = source or InducedValue(M, phi.targetRank)
    target = target or InducedValue(M, phi.sourceRank)
    lift = liftedMatrix(M, phi)
    for relation in source.relations.basis:
        if not target.relations.contains(lift.apply(relation)):
            raise InvariantViolationError(f"{phi!r} does not preserve the relations of {M.name}")
    matrix = inducedQuotientMap(target.projection, lift, source.section)
    return AnalyticValueMap(source, target, phi, matrix)


class InducedFunctor(FunctorHandle):
    """
    The induced functor of a module, evaluated lazily rank by rank
    """

    def __init__(self, M: LieModule):
        self.module = M
        self.values = {}
        super().__init__(
            lambda t: self.inducedValue(t).dim,
            lambda phi: induceMap(
                M, phi, self.inducedValue(phi.targetRank), self.inducedValue(phi.sourceRank)
            ).matrix,
            M.truncation,
            f"induce({M.name})",
        )

    def inducedValue(self, t: int) -> InducedValue:
        if t not in self.values:
            self.values[t] = InducedValue(self.module, t)
        return self.values[t]


def inducedCrossEffect(M: LieModule, d: int):
    """
    tr~_d of the induced functor of M at (F_1, ..., F_1), with its S_d action
    """
    return crossEffect(InducedFunctor(M), d)


def inducedPolyDegree(M: LieModule, bound: int, maxRank: int = None):
    return polyDegree(InducedFunctor(M), bound, maxRank)


class PrimitiveSpace:
    """
    The subspace of F(F_n) of multilinear primitive elements, with the action of S_n
    """

    def __init__(self, functor: FunctorHandle, n: int, subspace: Subspace):
        self.functor = functor
        self.n = n
        self.subspace = subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def action(self, sigma: tuple) -> SparseMat:
        matrix = self.functor.mapMatrix(permHom(sigma))
        columns = []
        for vector in self.subspace.basis:
            image = matrix.apply(vector)
            if not self.subspace.contains(image):
                raise InvariantViolationError(f"S_{self.n} does not preserve the primitive elements")
            columns.append(dict(enumerate(self.subspace.coordinates(image))))
        return SparseMat.fromColumns(self.dim, columns)

    def character(self, sigma: tuple):
        return self.action(sigma).trace()

    def characterTable(self) -> dict:
        table = {}
        for sigma in allPerms(self.n):
            table.setdefault(cycleType(sigma), self.character(sigma))
        return table


def homFromProjectives(F: FunctorHandle, n: int) -> PrimitiveSpace:
    """
    Natural transformations from Cat AssU(n, -) to F

    Such a transformation is determined by the image x of the identity key,
    which must vanish under each inclusion F_{n-1} -> F_n and satisfy
    F(fold_k) x = F(p_k) x + F(p_{k+1}) x for the folds F_{n+1} -> F_n.

    @return: PrimitiveSpace inside F(F_n)
    """
    ambient = F.value(n)
    inclusions = [inclusionHom(n - 1, i) for i in range(1, n + 1)]
    equations = [stackedMaps(F, inclusions, ambient)]
    for k in range(1, n + 1):
        additivity = F.mapMatrix(foldHom(n, k)) - F.mapMatrix(projectionHom(n, k))
        equations.append(additivity - F.mapMatrix(projectionHom(n, k + 1)))
    kernel = kernelBasis(vstack(equations, ambient))
    log.debug("Hom(AssU(%d,-), %s) has dimension %d", n, F.name, kernel.dim)
    return PrimitiveSpace(F, n, kernel)


def gammaCheck(M: LieModule, d: int) -> bool:
    """
    The cross-effect at d of the induced functor of M has the dimension and
    the character of M(d)
    """
    top = treValue(InducedFunctor(M), d)
    if top.dim != M.dim(d):
        return False
    return all(top.character(sigma) == M.permMatrix(sigma).trace() for sigma in allPerms(d))


def inductionExactnessCheck(sub: LieModule, M: LieModule, quotient: LieModule, t: int) -> bool:
    """
    dims of the induced values add along 0 -> sub -> M -> quotient -> 0
    """
    return InducedValue(M, t).dim == InducedValue(sub, t).dim + InducedValue(quotient, t).dim


def homsWithin(maxRank: int) -> list:
    """
    Generating homomorphisms whose source and target ranks are at most maxRank
    """
    return [
        (name, phi)
        for name, phi in generatingHoms(maxRank)
        if phi.sourceRank <= maxRank and phi.targetRank <= maxRank
    ]


def yonedaMatrix(n: int, value: InducedValue) -> SparseMat:
    """
    b (x) lambda -> b o lambda from the induced value of P_n to Cat AssU(n, t)
    """
    target = homSpace(ASSU, n, value.t)
    columns = []
    for index in value.representatives:
        z, key, v = value.freeBasis[index]
        lam = homSpace(LIE, n, z).basis[v]
        columns.append(target.vector(compose({key: 1}, lieElementOf(lam))))
    return SparseMat.fromColumns(target.dim, columns)


def yonedaCheck(n: int, t: int) -> bool:
    """
    The induced functor of P_n agrees with Cat AssU(n, -) on values and
    generator matrices at every rank up to t
    """
    P = representableModule(n, n)
    functor = InducedFunctor(P)
    matrices = {}
    for r in range(t + 1):
        value = functor.inducedValue(r)
        Y = yonedaMatrix(n, value)
        if value.dim != homSpace(ASSU, n, r).dim or rank(Y) != value.dim:
            log.info("Yoneda identification fails in rank %d for n=%d", r, n)
            return False
        matrices[r] = Y
    for name, phi in homsWithin(t):
        left = valueMatrix(n, phi).matrix @ matrices[phi.targetRank]
        right = matrices[phi.sourceRank] @ functor.mapMatrix(phi)
        if left != right:
            log.info("Yoneda identification is not natural for %s", name)
            return False
    return True


def _functionIndex(key: tuple, t: int) -> int:
    images = {}
    for slot, word in enumerate(key):
        for x in word:
            images[x] = slot
    index = 0
    for x in range(1, len(images) + 1):
        index = index * t + images[x]
    return index


def abelianMatrix(d: int, value: InducedValue) -> SparseMat:
    """
    b (x) tau -> underlying function of b o tau, from the induced value of k[S_d] to (k^t)^(x)d
    """
    perms = allPerms(d)
    columns = []
    for index in value.representatives:
        z, key, v = value.freeBasis[index]
        columns.append({_functionIndex(composeKeys(key, permKey(perms[v])), value.t): 1})
    return SparseMat.fromColumns(value.t ** d, columns)


def abelianPowerCheck(d: int, t: int) -> bool:
    """
    The induced functor of k[S_d] agrees with the d-th tensor power of
    Hom(-, k) on values and generator matrices at every rank up to t
    """
    functor = InducedFunctor(regularModule(d))
    matrices = {}
    for r in range(t + 1):
        value = functor.inducedValue(r)
        A = abelianMatrix(d, value)
        if value.dim != r ** d or rank(A) != value.dim:
            return False
        matrices[r] = A
    for name, phi in homsWithin(t):
        power = identity(1)
        for _ in range(d):
            power = kron(power, abelianizationDual(phi))
        if power @ matrices[phi.targetRank] != matrices[phi.sourceRank] @ functor.mapMatrix(phi):
            log.info("tensor power identification is not natural for %s", name)
            return False
    return True


def _pairingColumn(first: tuple, second: tuple, value: InducedValue, indices: dict) -> dict:
    z1, key1, v = first
    z2, key2, w = second
    key = tuple(a + tuple(x + z1 for x in b) for a, b in zip(key1, key2))
    n = z1 + z2
    triple = (tuple(range(1, z1 + 1)), v, w)
    return {value.freeIndex(n, key, indices[n][triple]): 1}


def tensorPairingMatrix(F: LieModule, G: LieModule, FG: LieModule, vF: InducedValue,
                        vG: InducedValue, vFG: InducedValue) -> SparseMat:
    """
    The map induce(F)(t) (x) induce(G)(t) -> induce(F . G)(t) joining the
    fibres of the two keys, the labels of the first factor coming first

    @raise InvariantViolationError: the pairing does not descend to the quotients
    """
    indices = {
        n: {triple: i for i, triple in enumerate(convolutionBasis(F, G, n))}
        for n in range(FG.truncation + 1)
    }

    def pair(vectorF: dict, vectorG: dict) -> dict:
        result = {}
        for i, a in vectorF.items():
            for j, b in vectorG.items():
                column = _pairingColumn(vF.freeBasis[i], vG.freeBasis[j], vFG, indices)
                for index, c in column.items():
                    addToVector(result, index, a * b * c)
        return result

    for relation in vF.relations.basis:
        for j in range(vG.freeDim):
            if not vFG.relations.contains(pair(relation, {j: 1})):
                raise InvariantViolationError(f"pairing of {F.name} and {G.name} does not descend")
    for relation in vG.relations.basis:
        for i in range(vF.freeDim):
            if not vFG.relations.contains(pair({i: 1}, relation)):
                raise InvariantViolationError(f"pairing of {F.name} and {G.name} does not descend")
    columns = []
    for i in vF.representatives:
        for j in vG.representatives:
            columns.append(vFG.projection.apply(pair({i: 1}, {j: 1})))
    return SparseMat.fromColumns(vFG.dim, columns)


def tensorCompatibilityCheck(F: LieModule, G: LieModule, t: int) -> bool:
    """
    The pairing is an isomorphism at every rank up to t and commutes with
    every generating homomorphism between those ranks
    """
    FG = convolution(F, G)
    inducedF, inducedG, inducedFG = InducedFunctor(F), InducedFunctor(G), InducedFunctor(FG)
    pairings = {}
    for r in range(t + 1):
        vF, vG, vFG = inducedF.inducedValue(r), inducedG.inducedValue(r), inducedFG.inducedValue(r)
        T = tensorPairingMatrix(F, G, FG, vF, vG, vFG)
        if not vF.dim * vG.dim == vFG.dim == rank(T):
            log.info("pairing of %s and %s is not an isomorphism in rank %d", F.name, G.name, r)
            return False
        pairings[r] = T
    for name, phi in homsWithin(t):
        left = inducedFG.mapMatrix(phi) @ pairings[phi.targetRank]
        right = pairings[phi.sourceRank] @ kron(inducedF.mapMatrix(phi), inducedG.mapMatrix(phi))
        if left != right:
            log.info("pairing of %s and %s is not natural for %s", F.name, G.name, name)
            return False
    return True


class EnvelopingAlgebra:
    """
    Ug in its PBW basis of non decreasing monomials in the basis of g
    """

    def __init__(self, c: list):
        self.c = c
        self.r = len(c)
        self._normal = {}

    def normalOrder(self, word: tuple) -> dict:
        """
        Rewrites a product of basis elements in the PBW basis, y_a y_b = y_b y_a + [y_a, y_b] for a > b
        """
        word = tuple(word)
        if word in self._normal:
            return self._normal[word]
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if a > b:
                result = dict(self.normalOrder(word[:i] + (b, a) + word[i + 2:]))
                for k, value in enumerate(self.c[a][b]):
                    if value:
                        for mono, coefficient in self.normalOrder(word[:i] + (k,) + word[i + 2:]).items():
                            addToVector(result, mono, value * coefficient)
                break
        else:
            result = {word: 1}
        self._normal[word] = result
        return result

    def multiply(self, first: dict, second: dict) -> dict:
        result = {}
        for u, a in first.items():
            for v, b in second.items():
                for mono, c in self.normalOrder(u + v).items():
                    addToVector(result, mono, a * b * c)
        return result

    def antipode(self, mono: tuple) -> dict:
        """
        S(y_1 ... y_k) = (-1)^k y_k ... y_1
        """
        sign = -1 if len(mono) % 2 else 1
        return {m: sign * c for m, c in self.normalOrder(tuple(reversed(mono))).items()}

    def hopfAct(self, phi: FreeGroupHom, element: dict) -> dict:
        """
        Action of phi: F_s -> F_t on an element of Ug^(x)t given as {tuple of t monomials: coefficient}

        A monomial is split over the occurrences of its tensor slot in the
        image words, the antipode is taken on inverse occurrences and the
        pieces are multiplied along each image word.
        """
        occurrences = [[] for _ in range(phi.targetRank)]
        for j, word in enumerate(phi.words):
            for position, letter in enumerate(word):
                occurrences[abs(letter) - 1].append((j, position, letter > 0))
        result = {}
        for tensor, coefficient in element.items():
            perSlot = []
            for mono, slotOccurrences in zip(tensor, occurrences):
                if not slotOccurrences:
                    perSlot.append([()] if not mono else [])
                else:
                    perSlot.append(list(distributeWord(mono, len(slotOccurrences))))
            for combination in product(*perSlot):
                pieces = {}
                for slot, split in enumerate(combination):
                    for piece, (j, position, positive) in zip(split, occurrences[slot]):
                        pieces[(j, position)] = {piece: 1} if positive else self.antipode(piece)
                partial = {(): coefficient}
                for j, word in enumerate(phi.words):
                    factor = {(): 1}
                    for position in range(len(word)):
                        factor = self.multiply(factor, pieces[(j, position)])
                    partial = {
                        prefix + (mono,): a * b
                        for prefix, a in partial.items()
                        for mono, b in factor.items()
                        if a * b
                    }
                for key, value in partial.items():
                    addToVector(result, key, value)
        return result


def _thetaColumn(algebra: EnvelopingAlgebra, z: int, key: tuple, v: int) -> dict:
    """
    b (x) v_1 (x) ... (x) v_z -> the tensor over the fibres of b of the products of the v's
    """
    digits = tensorDigits(v, z, algebra.r)
    result = {(): 1}
    for word in key:
        factor = algebra.normalOrder(tuple(digits[p - 1] for p in word))
        result = {prefix + (mono,): a * b for prefix, a in result.items() for mono, b in factor.items()}
    return result


def phiUgDetails(c: list, N: int, t: int) -> dict:
    """
    Compares the induced value of the module n -> g^(x)n with the part of
    Ug^(x)t of filtration at most N, through the map multiplying the tensor
    factors grouped by the fibres

    @return: dict of dimensions and verdicts, "passed" summarising them
    """
    algebra = EnvelopingAlgebra(c)
    M = lieAlgebraModule(c, N)
    value = InducedValue(M, t)
    pbwCount = sum(comb(algebra.r * t + k - 1, k) for k in range(N + 1))
    columns = [_thetaColumn(algebra, *basisElement) for basisElement in value.freeBasis]
    keys = {}
    for column in columns:
        for key in column:
            keys.setdefault(key, len(keys))
    theta = SparseMat.fromColumns(len(keys), [{keys[k]: a for k, a in col.items()} for col in columns])
    relationsKilled = (theta @ value.relations.matrix()).isZero()
    thetaRank = rank(theta)
    intertwines = True
    for name, phi in generatingHoms(t):
        if phi.targetRank != t:
            continue
        for index in value.representatives:
            z, key, v = value.freeBasis[index]
            lhs = algebra.hopfAct(phi, columns[index])
            rhs = {}
            for image, a in act(phi, key).items():
                for tensor, b in _thetaColumn(algebra, z, image, v).items():
                    addToVector(rhs, tensor, a * b)
            if lhs != rhs:
                log.info("generator %s does not intertwine on %r", name, (z, key, v))
                intertwines = False
                break
        if not intertwines:
            break
    details = {
        "dimension": algebra.r,
        "truncation": N,
        "rank": t,
        "inducedDim": value.dim,
        "pbwDim": pbwCount,
        "thetaRank": thetaRank,
        "relationsKilled": relationsKilled,
        "intertwines": intertwines,
    }
    details["passed"] = (
        value.dim == pbwCount == thetaRank and relationsKilled and intertwines
    )
    return details


def phiUgCompare(c: list, N: int, t: int) -> bool:
    return phiUgDetails(c, N, t)["passed"]
