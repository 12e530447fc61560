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
    Verification suites run by "opcat verify"

    Every suite returns a report dictionary {"suite", "bounds", "verdicts", "tables"}.
    A verdict names the statement it instantiates, taken from OpTheorems.
"""

import logging
import random
from itertools import combinations_with_replacement
from math import factorial

try:
    from opcat.OpExactLin import OpcatException, fullSpace, identity
    from opcat.OpCombinat import allPerms, countSurjections, enumerateSurjections, risingFactorial
    from opcat.OpOperads import ASSU, COM, LIE, UNIT
    from opcat.OpPropCat import (
        catlieSpan,
        compose,
        homSpace,
        identityKey,
        lieElementOf,
        pbwCheck,
        symmetricGroupTable,
    )
    from opcat.OpGrAction import grRelationChecks, rightLieCompatibilityCheck
    from opcat.OpLieModules import (
        LIE_PRESETS,
        directSum,
        lieAlgebraModule,
        projectiveSplitting,
        quotientModule,
        regularModule,
        representableModule,
        signModule,
        unitModule,
    )
    from opcat.OpFunCalc import assFunctor, filtrationCheck, layerSesCheck, pdExactnessCheck, polyDegree, treValue
    from opcat.OpInduction import (
        InducedFunctor,
        InducedValue,
        InvariantViolationError,
        abelianPowerCheck,
        gammaCheck,
        homFromProjectives,
        homsWithin,
        induceMap,
        phiUgDetails,
        tensorCompatibilityCheck,
        yonedaCheck,
    )
    from opcat.OpKoszul import (
        ComplexError,
        comSideCheck,
        extDimensions,
        minimalityCheck,
        resolutionGrop,
        signTwistedDualSpace,
    )
    from opcat.OpTheorems import statementsDict, suites
except ModuleNotFoundError:
    from OpExactLin import OpcatException, fullSpace, identity
    from OpCombinat import allPerms, countSurjections, enumerateSurjections, risingFactorial
    from OpOperads import ASSU, COM, LIE, UNIT
    from OpPropCat import (
        catlieSpan,
        compose,
        homSpace,
        identityKey,
        lieElementOf,
        pbwCheck,
        symmetricGroupTable,
    )
    from OpGrAction import grRelationChecks, rightLieCompatibilityCheck
    from OpLieModules import (
        LIE_PRESETS,
        directSum,
        lieAlgebraModule,
        projectiveSplitting,
        quotientModule,
        regularModule,
        representableModule,
        signModule,
        unitModule,
    )
    from OpFunCalc import assFunctor, filtrationCheck, layerSesCheck, pdExactnessCheck, polyDegree, treValue
    from OpInduction import (
        InducedFunctor,
        InducedValue,
        InvariantViolationError,
        abelianPowerCheck,
        gammaCheck,
        homFromProjectives,
        homsWithin,
        induceMap,
        phiUgDetails,
        tensorCompatibilityCheck,
        yonedaCheck,
    )
    from OpKoszul import (
        ComplexError,
        comSideCheck,
        extDimensions,
        minimalityCheck,
        resolutionGrop,
        signTwistedDualSpace,
    )
    from OpTheorems import statementsDict, suites

log = logging.getLogger("opcat.OpVerify")

DEFAULT_BOUNDS = {
    "dims": {"m": 5, "n": 5, "samples": 500},
    "pbw": {"m": 5, "n": 5},
    "koszul": {"d": 5, "t": 5, "m": 4},
    "morita": {"d": 4, "t": 4},
    "tensor": {"t": 3},
    "lie-case": {"N": 3, "t": 3},
    "flie": {},
    "funcalc": {"d": 4, "t": 3},
}
# above these a suite runs for minutes
HEAVY_BOUNDS = {"m": 6, "n": 6, "d": 5, "t": 5, "N": 3, "samples": 1000}


class VerifyError(OpcatException):
    """
    Raised for an unknown suite name
    """


def verdict(check: str, passed: bool, detail: str = "") -> dict:
    description, statements = statementsDict[check]
    log.info("%s: %s", check, "PASS" if passed else "FAIL")
    return {
        "check": check,
        "statement": "; ".join(statements),
        "description": description,
        "passed": bool(passed),
        "detail": detail,
    }


def heavyBounds(bounds: dict) -> list:
    """
    @return: names of the bounds above the desk-scale limits
    """
    return sorted(name for name, value in bounds.items() if value > HEAVY_BOUNDS.get(name, value))


def lieDimension(m: int, n: int) -> int:
    """
    Sum over surjections m -> n of the products of (|fibre| - 1)!
    """
    total = 0
    for f in enumerateSurjections(m, n):
        product_ = 1
        for size in f.fibreSizes():
            product_ *= factorial(size - 1)
        total += product_
    return total


def _randomKey(rng: random.Random, operad: str, m: int, n: int):
    basis = homSpace(operad, m, n).basis
    return rng.choice(basis) if basis else None


def _lawsHold(f: dict, g: dict, h: dict, source: int, target: int) -> bool:
    """
    h o (g o f) == (h o g) o f and both unit laws on h: source -> target
    """
    if compose(h, compose(g, f)) != compose(compose(h, g), f):
        return False
    return compose({identityKey(target): 1}, h) == h and compose(h, {identityKey(source): 1}) == h


def categoryLawSamples(samples: int, maxArity: int = 4, seed: int = 0) -> dict:
    """
    Associativity and unit laws on random composable triples of basis morphisms

    The Cat AssU triples have arities in 0..maxArity. The Cat Lie triples are
    taken on non-increasing arities in 1..maxArity, expanded into AssU
    coordinates, and their composites must stay in the Lie span.

    @param samples: number of triples checked in each category
    @return: {"assu": checked, "lie": checked, "passed": bool}
    """
    rng = random.Random(seed)
    passed = True
    checked = {ASSU: 0, LIE: 0}
    spans = {}
    while checked[ASSU] < samples:
        a, b, c, d = (rng.randint(0, maxArity) for _ in range(4))
        f, g, h = _randomKey(rng, ASSU, a, b), _randomKey(rng, ASSU, b, c), _randomKey(rng, ASSU, c, d)
        if f is None or g is None or h is None:
            continue
        checked[ASSU] += 1
        passed = _lawsHold({f: 1}, {g: 1}, {h: 1}, c, d) and passed
    while checked[LIE] < samples:
        a, b, c, d = sorted((rng.randint(1, max(1, maxArity)) for _ in range(4)), reverse=True)
        f, g, h = (
            lieElementOf(_randomKey(rng, LIE, a, b)),
            lieElementOf(_randomKey(rng, LIE, b, c)),
            lieElementOf(_randomKey(rng, LIE, c, d)),
        )
        checked[LIE] += 1
        passed = _lawsHold(f, g, h, c, d) and passed
        if (a, c) not in spans:
            spans[(a, c)] = catlieSpan(a, c)
        if not spans[(a, c)].contains(homSpace(ASSU, a, c).vector(compose(g, f))):
            passed = False
    log.debug("category laws on %d AssU and %d Lie triples", checked[ASSU], checked[LIE])
    return {"assu": checked[ASSU], "lie": checked[LIE], "passed": passed}


def verifyDims(bounds: dict, seed: int = 0) -> dict:
    mMax, nMax, samples = bounds["m"], bounds["n"], bounds["samples"]
    rows = []
    formulas = {ASSU: lambda m, n: risingFactorial(n, m), COM: countSurjections, LIE: lieDimension}
    dimsOk = True
    vanishing = True
    for operad, formula in formulas.items():
        for m in range(mMax + 1):
            row = [operad, m]
            for n in range(nMax + 1):
                dim = homSpace(operad, m, n).dim
                if dim != formula(m, n):
                    dimsOk = False
                if operad != ASSU and m < n and dim:
                    vanishing = False
                row.append(dim)
            rows.append(row)
    laws = categoryLawSamples(samples, min(mMax, 4), seed)
    lieClosed = True
    for m in range(1, min(mMax, 3) + 1):
        for n in range(1, m + 1):
            lies = homSpace(LIE, m, n).basis
            for e in range(1, n + 1):
                span = catlieSpan(m, e)
                target = homSpace(ASSU, m, e)
                for first in homSpace(LIE, n, e).basis:
                    for second in lies:
                        product_ = compose(lieElementOf(first), lieElementOf(second))
                        if not span.contains(target.vector(product_)):
                            lieClosed = False
    groups = all(symmetricGroupTable(operad, m) for operad in (UNIT, COM, LIE) for m in range(1, 4))
    return {
        "suite": "dims",
        "bounds": bounds,
        "verdicts": [
            verdict("hom-dims", dimsOk),
            verdict("reduced-vanishing", vanishing),
            verdict(
                "category-laws",
                laws["passed"] and lieClosed,
                f"{laws['assu']} AssU and {laws['lie']} Lie random triples",
            ),
            verdict("symmetric-groups", groups),
        ],
        "tables": {"dimensions": {"header": ["operad", "m"] + [f"n={n}" for n in range(nMax + 1)], "rows": rows}},
    }


def verifyPbw(bounds: dict, seed: int = 0) -> dict:
    rows = []
    passed = True
    for m in range(bounds["m"] + 1):
        for n in range(bounds["n"] + 1):
            result = pbwCheck(m, n)
            passed = passed and result["passed"]
            rows.append([m, n, result["tensorDim"], result["assDim"], result["rank"], result["passed"]])
    return {
        "suite": "pbw",
        "bounds": bounds,
        "verdicts": [verdict("pbw", passed)],
        "tables": {"pbw": {"header": ["m", "n", "tensor", "assu", "rank", "iso"], "rows": rows}},
    }


def verifyKoszul(bounds: dict, seed: int = 0) -> dict:
    dMax, tMax, mMax = bounds["d"], bounds["t"], bounds["m"]
    rows = []
    isComplex = exact = minimal = True
    detail = ""
    for d in range(1, dMax + 1):
        try:
            complexes = resolutionGrop(d, tMax)
        except ComplexError as error:
            isComplex = exact = minimal = False
            detail = str(error)
            continue
        for t, complex_ in complexes.items():
            homology = complex_.homology()
            exactHere = complex_.isExact() and complex_.targetDim == t ** d
            minimalHere = minimalityCheck(complex_)
            exact = exact and exactHere
            minimal = minimal and minimalHere
            rows.append([d, t, complex_.dims, complex_.targetDim, homology, complex_.eulerCharacteristic()])
    comOk = True
    try:
        comOk = all(comSideCheck(m, m) for m in range(1, mMax + 1))
    except ComplexError as error:
        comOk = False
        detail = str(error)
    extRows = []
    extOk = True
    for d in range(1, dMax + 1):
        for n in range(1, d + 1):
            ext = extDimensions(d, n)
            expected = countSurjections(d, n)
            for degree, dim in ext["degrees"].items():
                if dim != (expected if degree == d - n else 0):
                    extOk = False
            extRows.append([d, n, ext["degrees"].get(d - n, 0), expected, ext["euler"]])
    dualOk = all(len(signTwistedDualSpace(d, n)[0]) == countSurjections(d, n) for d in range(1, dMax + 1) for n in range(d + 2))
    return {
        "suite": "koszul",
        "bounds": bounds,
        "verdicts": [
            verdict("koszul-complex", isComplex and dualOk, detail),
            verdict("koszul-exact", exact),
            verdict("koszul-minimal", minimal),
            verdict("com-side", comOk),
            verdict("ext-pattern", extOk),
        ],
        "tables": {
            "homology": {"header": ["d", "t", "dims", "target", "homology", "euler"], "rows": rows},
            "ext": {"header": ["d", "n", "ext", "surjections", "euler"], "rows": extRows},
        },
    }


def suiteModules(d: int) -> list:
    modules = [unitModule(), signModule(2), representableModule(2, 2)]
    modules.extend(regularModule(k) for k in range(1, d + 1))
    modules.append(lieAlgebraModule(LIE_PRESETS["sl2"](), 2, "sl2"))
    return modules


def verifyMorita(bounds: dict, seed: int = 0) -> dict:
    dMax, tMax = bounds["d"], bounds["t"]
    abelian = all(abelianPowerCheck(d, tMax) for d in range(1, dMax + 1))
    yoneda = all(yonedaCheck(n, tMax) for n in range(1, dMax + 1))
    rows = []
    for n in range(1, dMax + 1):
        primitives = homFromProjectives(assFunctor(n), n)
        regular = all(
            primitives.character(sigma) == (factorial(n) if sigma == tuple(range(1, n + 1)) else 0)
            for sigma in allPerms(n)
        )
        yoneda = yoneda and primitives.dim == factorial(n) and regular
        rows.append([n, primitives.dim, regular])
    gamma = all(gammaCheck(regularModule(d), d) for d in range(1, dMax + 1))
    wellDefined = True
    detail = ""
    pbwOk = True
    for M in suiteModules(dMax):
        try:
            for t in range(tMax + 1):
                InducedValue(M, t)
            for name, phi in homsWithin(tMax):
                induceMap(M, phi)
        except InvariantViolationError as error:
            if "PBW" in str(error):
                pbwOk = False
            else:
                wellDefined = False
            detail = str(error)
    relations = all(
        passed for d in range(1, dMax + 1) for _, passed in grRelationChecks(d, min(tMax, 3))
    )
    rightLie = all(
        rightLieCompatibilityCheck(d, e, t)
        for d in range(1, min(dMax, 3) + 1)
        for e in range(1, d + 1)
        for t in range(1, min(tMax, 2) + 1)
    )
    return {
        "suite": "morita",
        "bounds": bounds,
        "verdicts": [
            verdict("gr-relations", relations),
            verdict("right-lie", rightLie),
            verdict("morita-abelian", abelian),
            verdict("morita-yoneda", yoneda),
            verdict("morita-gamma", gamma),
            verdict("well-defined", wellDefined, detail),
            verdict("pbw-induction", pbwOk),
        ],
        "tables": {"yoneda": {"header": ["n", "Hom(AssU(n,-), AssU(n,-))", "regular"], "rows": rows}},
    }


def verifyTensor(bounds: dict, seed: int = 0) -> dict:
    modules = [unitModule(), regularModule(1), regularModule(2), representableModule(1, 1), representableModule(2, 2)]
    rows = []
    passed = True
    detail = ""
    for F, G in combinations_with_replacement(modules, 2):
        try:
            result = tensorCompatibilityCheck(F, G, bounds["t"])
        except InvariantViolationError as error:
            result = False
            detail = str(error)
        passed = passed and result
        rows.append([F.name, G.name, result])
    return {
        "suite": "tensor",
        "bounds": bounds,
        "verdicts": [verdict("tensor", passed, detail)],
        "tables": {"tensor": {"header": ["F", "G", "compatible"], "rows": rows}},
    }


def verifyLieCase(bounds: dict, seed: int = 0) -> dict:
    rows = []
    passed = True
    for name, preset in sorted(LIE_PRESETS.items()):
        for N in range(bounds["N"] + 1):
            for t in range(1, bounds["t"] + 1):
                details = phiUgDetails(preset(), N, t)
                passed = passed and details["passed"]
                rows.append(
                    [name, N, t, details["inducedDim"], details["pbwDim"], details["thetaRank"], details["intertwines"]]
                )
    return {
        "suite": "lie-case",
        "bounds": bounds,
        "verdicts": [verdict("lie-case", passed)],
        "tables": {
            "enveloping": {
                "header": ["g", "N", "t", "induced", "pbw", "theta rank", "intertwines"],
                "rows": rows,
            }
        },
    }


def verifyFlie(bounds: dict, seed: int = 0) -> dict:
    splitting = projectiveSplitting()
    extension, trivial, P2 = splitting["E"], splitting["trivial"], splitting["P2"]
    summands = directSum(extension, trivial).dims == P2.dims
    shape = extension.dims == [0, 1, 1] and trivial.dims == [0, 0, 1]
    top = quotientModule(extension, {1: fullSpace(1)})
    signTop = top.dims == [0, 0, 1] and top.symMatrix(2, 1) == identity(1).scale(-1)
    passed = summands and shape and signTop and not splitting["splits"]
    return {
        "suite": "flie",
        "bounds": bounds,
        "verdicts": [verdict("flie", passed, "dim Hom(k_sgn(2), E) = 0" if not splitting["splits"] else "")],
        "tables": {
            "certificate": {
                "header": ["module", "dims"],
                "rows": [
                    ["P_2", P2.dims],
                    ["E", extension.dims],
                    ["k_triv(2)", trivial.dims],
                    ["E / k(1)", top.dims],
                    ["dim Hom(k_sgn(2), E)", 1 if splitting["splits"] else 0],
                ],
            }
        },
    }


def verifyFuncalc(bounds: dict, seed: int = 0) -> dict:
    dMax, tMax = bounds["d"], bounds["t"]
    rows = []
    degrees = True
    for d in range(1, dMax + 1):
        F = assFunctor(d)
        degree = polyDegree(F, d)
        table = treValue(F, d).characterTable()
        regular = all(value == (factorial(d) if len(cycle) == d else 0) for cycle, value in table.items())
        degrees = degrees and degree == d and regular
        rows.append([d, degree, {",".join(map(str, cycle)): value for cycle, value in sorted(table.items())}])
    # F(F_{4t}) of AssU(4, -) is out of reach beyond t = 1
    layers = all(
        layerSesCheck(assFunctor(d), d, t) for d in range(1, dMax + 1) for t in range(1, (tMax if d < 4 else 1) + 1)
    )
    splitting = projectiveSplitting()
    P2 = splitting["P2"]
    quotient = quotientModule(P2, splitting["extensionSpaces"])
    filtration = all(filtrationCheck(assFunctor(2), 2, t) for t in range(1, tMax + 1))
    exactness = all(
        pdExactnessCheck(InducedFunctor(splitting["E"]), InducedFunctor(P2), InducedFunctor(quotient), d, t)
        for d in range(3)
        for t in range(1, min(tMax, 2) + 1)
    )
    return {
        "suite": "funcalc",
        "bounds": bounds,
        "verdicts": [
            verdict("poly-degree", degrees),
            verdict("layer-ses", layers),
            verdict("pd-filtration", filtration and exactness),
        ],
        "tables": {"degrees": {"header": ["d", "degree", "cross-effect character"], "rows": rows}},
    }


SUITES = {
    "dims": verifyDims,
    "pbw": verifyPbw,
    "koszul": verifyKoszul,
    "morita": verifyMorita,
    "tensor": verifyTensor,
    "lie-case": verifyLieCase,
    "flie": verifyFlie,
    "funcalc": verifyFuncalc,
}


def runSuite(name: str, bounds: dict = None, seed: int = 0) -> dict:
    """
    Runs a suite with its default bounds overridden by the given ones

    @param name: one of OpTheorems.suites
    @param bounds: {bound name: value}, unknown names are ignored
    @param seed: seed of the random samples
    @return: the report dictionary
    """
    if name not in SUITES or name not in suites:
        raise VerifyError(f'Unknown suite "{name}"')
    merged = dict(DEFAULT_BOUNDS[name])
    for key, value in (bounds or {}).items():
        if key in merged and value is not None:
            merged[key] = value
    log.info("running suite %s with bounds %s", name, merged)
    return SUITES[name](merged, seed)
