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
    Polynomial functor calculus on contravariant functors of free groups
    known through finite data: cross-effects at (F_1, ..., F_1), the
    polynomial filtration p_d and the layer dimension identity.

    A functor is handed over as a FunctorHandle giving the dimension of its
    value at F_t and the matrix F(phi): F(F_t) -> F(F_s) of a homomorphism
    phi: F_s -> F_t. Values and matrices are memoized per rank and per
    homomorphism.
"""

import logging
from fractions import Fraction
from math import factorial

try:
    from opcat.OpExactLin import (
        OpcatException,
        SparseMat,
        Subspace,
        fullSpace,
        identity,
        image,
        inducedQuotientMap,
        kernelBasis,
        kron,
        quotientMap,
        quotientSection,
        vstack,
        zeroMatrix,
        zeroSpace,
    )
    from opcat.OpCombinat import allPerms, cycleType
    from opcat.OpGrAction import FreeGroupHom, permHom, valueMatrix
    from opcat.OpPropCat import homSpace
    from opcat.OpOperads import ASSU
except ModuleNotFoundError:
    from OpExactLin import (
        OpcatException,
        SparseMat,
        Subspace,
        fullSpace,
        identity,
        image,
        inducedQuotientMap,
        kernelBasis,
        kron,
        quotientMap,
        quotientSection,
        vstack,
        zeroMatrix,
        zeroSpace,
    )
    from OpCombinat import allPerms, cycleType
    from OpGrAction import FreeGroupHom, permHom, valueMatrix
    from OpPropCat import homSpace
    from OpOperads import ASSU

log = logging.getLogger("opcat.OpFunCalc")


class FunctorError(OpcatException):
    """
    Raised when a functor handle returns matrices of the wrong shape
    """


class FunctorHandle:
    """
    A contravariant functor on free groups given by its values and the
    matrices of homomorphisms, both computed on demand
    """

    def __init__(self, value, mapMatrix, degree: int = None, name: str = "F"):
        """
        @param value: callable t -> dim F(F_t)
        @param mapMatrix: callable phi -> SparseMat F(phi) of shape dim F(F_s) x dim F(F_t)
        @param degree: declared polynomial degree, or None when unknown
        @param name: label used in reports
        """
        self._value = value
        self._mapMatrix = mapMatrix
        self.degree = degree
        self.name = name
        self._values = {}
        self._maps = {}

    def value(self, t: int) -> int:
        if t not in self._values:
            self._values[t] = self._value(t)
        return self._values[t]

    def mapMatrix(self, phi: FreeGroupHom) -> SparseMat:
        if phi not in self._maps:
            matrix = self._mapMatrix(phi)
            expected = (self.value(phi.sourceRank), self.value(phi.targetRank))
            if matrix.shape() != expected:
                raise FunctorError(
                    f"{self.name}({phi!r}) has shape {matrix.shape()}, expected {expected}"
                )
            self._maps[phi] = matrix
        return self._maps[phi]

    def __repr__(self):
        return f"FunctorHandle({self.name}, degree={self.degree})"


def assFunctor(d: int) -> FunctorHandle:
    """
    The functor Cat AssU(d, -) with its action by free group homomorphisms
    """
    return FunctorHandle(
        lambda t: homSpace(ASSU, d, t).dim,
        lambda phi: valueMatrix(d, phi).matrix,
        d,
        f"AssU({d},-)",
    )


def abelianizationDual(phi: FreeGroupHom) -> SparseMat:
    """
    The map Hom(F_t, k) -> Hom(F_s, k) induced by phi, in the dual bases
    """
    return SparseMat.fromDense(phi.abelianizationMatrix(), phi.targetRank)


def abelianTensorPower(d: int) -> FunctorHandle:
    """
    The d-th tensor power of G -> Hom(G, k), the first factor most significant
    """

    def mapMatrix(phi):
        matrix = identity(1)
        base = abelianizationDual(phi)
        for _ in range(d):
            matrix = kron(matrix, base)
        return matrix

    return FunctorHandle(lambda t: t ** d, mapMatrix, d, f"a#^{d}")


def constantFunctor(dim: int = 1) -> FunctorHandle:
    return FunctorHandle(lambda t: dim, lambda phi: identity(dim), 0, f"const({dim})")


def blockProjectionHom(blocks: int, t: int, k: int) -> FreeGroupHom:
    """
    F_{t blocks} -> F_{t (blocks-1)} sending the k-th block of t generators to the unit
    """
    words = []
    for b in range(1, blocks + 1):
        for i in range(1, t + 1):
            if b < k:
                words.append(((b - 1) * t + i,))
            elif b == k:
                words.append(())
            else:
                words.append(((b - 2) * t + i,))
    return FreeGroupHom(blocks * t, (blocks - 1) * t, words)


def diagonalFoldHom(blocks: int, t: int) -> FreeGroupHom:
    """
    F_{t blocks} -> F_t identifying every block with F_t
    """
    words = [(i,) for _ in range(blocks) for i in range(1, t + 1)]
    return FreeGroupHom(blocks * t, t, words)


class CrossEffect:
    """
    The cokernel of the unit insertions into F(F_{d t}), with the action of S_d
    permuting the blocks when t = 1
    """

    def __init__(self, functor: FunctorHandle, d: int, t: int, quotient: SparseMat, section: SparseMat):
        self.functor = functor
        self.d = d
        self.t = t
        self.quotient = quotient
        self.section = section

    @property
    def dim(self) -> int:
        return self.quotient.rows

    def action(self, sigma: tuple) -> SparseMat:
        """
        Matrix of the block permutation sigma on the cross-effect
        """
        if self.t != 1:
            raise FunctorError("The symmetric group action is only computed at (F_1, ..., F_1)")
        return inducedQuotientMap(self.quotient, self.functor.mapMatrix(permHom(sigma)), self.section)

    def character(self, sigma: tuple):
        return self.action(sigma).trace()

    def characterTable(self) -> dict:
        """
        @return: {cycle type: character value}
        """
        table = {}
        for sigma in allPerms(self.d):
            table.setdefault(cycleType(sigma), self.character(sigma))
        return table

    def __repr__(self):
        return f"CrossEffect({self.functor.name}, d={self.d}, t={self.t}, dim={self.dim})"


def crossEffectDiagonal(F: FunctorHandle, d: int, t: int = 1) -> CrossEffect:
    """
    tr~_d F(F_t, ..., F_t): F(F_{d t}) modulo the images of the d maps
    induced by sending one block of generators to the unit

    @param F: FunctorHandle
    @param d: number of blocks, 0 gives F(F_0)
    @param t: rank of every block
    @return: CrossEffect
    """
    ambient = F.value(d * t)
    if d == 0:
        return CrossEffect(F, 0, t, identity(ambient), identity(ambient))
    images = []
    for k in range(1, d + 1):
        images.extend(image(F.mapMatrix(blockProjectionHom(d, t, k))).basis)
    relations = Subspace(ambient, images)
    result = CrossEffect(F, d, t, quotientMap(ambient, relations), quotientSection(ambient, relations))
    log.debug("cross-effect of %s at d=%d, t=%d has dimension %d", F.name, d, t, result.dim)
    return result


def treValue(F: FunctorHandle, d: int) -> CrossEffect:
    """
    Cross-effect of F evaluated at (F_1, ..., F_1), with its S_d action
    """
    return crossEffectDiagonal(F, d, 1)


def crossEffect(F: FunctorHandle, d: int) -> CrossEffect:
    return treValue(F, d)


def pdValue(F: FunctorHandle, d: int, t: int) -> Subspace:
    """
    p_d F(F_t): the kernel of F(F_t) -> tr~_{d+1} F(F_t, ..., F_t) through the folding map

    @return: Subspace of F(F_t)
    """
    ambient = F.value(t)
    if d < 0:
        return zeroSpace(ambient)
    if F.degree is not None and F.degree <= d:
        return fullSpace(ambient)
    top = crossEffectDiagonal(F, d + 1, t)
    if top.dim == 0:
        return fullSpace(ambient)
    fold = F.mapMatrix(diagonalFoldHom(d + 1, t))
    return kernelBasis(top.quotient @ fold)


def polyDegree(F: FunctorHandle, bound: int, maxRank: int = None):
    """
    Least d <= bound whose (d+1)-st cross-effect vanishes at every test rank

    The test ranks are the diagonal tuples (F_r, ..., F_r) for r up to the least
    rank with (d+1) r >= maxRank. A cross-effect of order d+1 at rank r contains
    every cross-effect of order d+1 ... (d+1) r at rank 1, so cross-effects which
    vanish at rank 1 do not hide a higher degree.

    @param bound: largest degree tried
    @param maxRank: largest cross-effect order reached, at least bound + 1
    @return: the degree, or None when it exceeds the bound
    """
    cap = max(bound + 1, maxRank or 0)
    for d in range(bound + 1):
        blocks = d + 1
        ranks = range(1, -(-cap // blocks) + 1)
        if all(crossEffectDiagonal(F, blocks, r).dim == 0 for r in ranks):
            log.info("%s has polynomial degree %d", F.name, d)
            return d
    log.info("%s has polynomial degree above %d", F.name, bound)
    return None


def invariantsDimension(t: int, layer: CrossEffect) -> int:
    """
    dim ((k^t)^(x)d (x) V)^{S_d} by averaging characters
    """
    d = layer.d
    total = Fraction(0)
    for sigma in allPerms(d):
        total += Fraction(t) ** len(cycleType(sigma)) * layer.character(sigma)
    total /= factorial(d)
    if total.denominator != 1:
        raise FunctorError(f"Non integral invariant dimension {total}")
    return int(total)


def layerSesCheck(F: FunctorHandle, d: int, t: int) -> bool:
    """
    dim F(F_t) = dim p_{d-1} F(F_t) + dim ((a#(F_t))^(x)d (x) tr_d F)^{S_d} for F of degree d
    """
    top = treValue(F, d)
    lower = pdValue(F, d - 1, t).dim if d > 0 else 0
    layer = invariantsDimension(t, top) if d > 0 else top.dim
    passed = F.value(t) == lower + layer
    log.debug("layer check of %s at d=%d, t=%d: %d = %d + %d", F.name, d, t, F.value(t), lower, layer)
    return passed


def filtrationCheck(F: FunctorHandle, maxDegree: int, t: int) -> bool:
    """
    p_0 F(F_t) <= p_1 F(F_t) <= ... <= p_maxDegree F(F_t) as subspaces
    """
    previous = None
    for d in range(maxDegree + 1):
        current = pdValue(F, d, t)
        if previous is not None and not current.containsSubspace(previous):
            return False
        previous = current
    return True


def pdExactnessCheck(sub: FunctorHandle, F: FunctorHandle, quotient: FunctorHandle, d: int, t: int) -> bool:
    """
    dims of p_d add along a short exact sequence 0 -> sub -> F -> quotient -> 0
    """
    if F.value(t) != sub.value(t) + quotient.value(t):
        return False
    return pdValue(F, d, t).dim == pdValue(sub, d, t).dim + pdValue(quotient, d, t).dim


def stackedMaps(F: FunctorHandle, homs: list, cols: int) -> SparseMat:
    """
    The matrices F(phi) of a list of homomorphisms stacked vertically
    """
    if not homs:
        return zeroMatrix(0, cols)
    return vstack([F.mapMatrix(phi) for phi in homs], cols)
