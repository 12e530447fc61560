import json

import pytest

from opcat.OpExactLin import VERSION
from opcat.OpOperads import ASSU, COM, LIE
from opcat.OpPropCat import homSpace
from opcat.OpTheorems import statementsDict, suites
from opcat.OpUtils import getVerifyJSON
from opcat.OpVerify import (
    DEFAULT_BOUNDS,
    SUITES,
    VerifyError,
    categoryLawSamples,
    heavyBounds,
    lieDimension,
    runSuite,
    verdict,
)

SMALL_BOUNDS = {
    "dims": {"m": 3, "n": 3, "samples": 20},
    "pbw": {"m": 3, "n": 3},
    "koszul": {"d": 2, "t": 2, "m": 2},
    "morita": {"d": 1, "t": 1},
    "tensor": {"t": 1},
    "lie-case": {"N": 1, "t": 1},
    "flie": {},
    "funcalc": {"d": 2, "t": 1},
}


def test_every_suite_is_registered():
    assert sorted(SUITES) == sorted(suites) == sorted(DEFAULT_BOUNDS)


@pytest.mark.parametrize("name", suites)
def test_suites_pass_at_small_bounds(name):
    report = runSuite(name, SMALL_BOUNDS[name])
    assert report["suite"] == name
    failed = [v["check"] for v in report["verdicts"] if not v["passed"]]
    assert not failed, report["verdicts"]
    for v in report["verdicts"]:
        assert v["check"] in statementsDict
        assert v["statement"]
    for table in report["tables"].values():
        assert all(len(row) == len(table["header"]) for row in table["rows"])


def test_bounds_are_merged_with_the_defaults():
    report = runSuite("pbw", {"m": 1, "n": None, "unknown": 3})
    assert report["bounds"] == {"m": 1, "n": DEFAULT_BOUNDS["pbw"]["n"]}
    assert len(report["tables"]["pbw"]["rows"]) == 2 * (DEFAULT_BOUNDS["pbw"]["n"] + 1)


def test_dims_table():
    report = runSuite("dims", {"m": 2, "n": 2, "samples": 5})
    rows = {(row[0], row[1]): row[2:] for row in report["tables"]["dimensions"]["rows"]}
    assert rows[(ASSU, 2)] == [0, 2, 6]
    assert rows[(LIE, 2)] == [0, 1, 2]
    assert rows[(COM, 2)] == [0, 1, 2]


def test_unknown_suite():
    with pytest.raises(VerifyError):
        runSuite("homotopy")


def test_heavy_bounds():
    assert heavyBounds({"m": 7, "t": 2, "samples": 1000}) == ["m"]
    assert heavyBounds({"d": 6, "N": 4}) == ["N", "d"]
    assert heavyBounds({}) == []


@pytest.mark.parametrize("m, n, expected", [(1, 1, 1), (3, 1, 2), (4, 1, 6), (3, 2, 6), (4, 2, 22), (2, 3, 0)])
def test_lie_dimension_formula(m, n, expected):
    assert lieDimension(m, n) == expected
    assert homSpace(LIE, m, n).dim == expected


def test_verdict_carries_the_statement():
    v = verdict("pbw", False, "m=1")
    assert v == {
        "check": "pbw",
        "statement": "categorical Poincare-Birkhoff-Witt theorem",
        "description": statementsDict["pbw"][0],
        "passed": False,
        "detail": "m=1",
    }


def test_funcalc_report_exports_as_json():
    report = runSuite("funcalc", {"d": 1, "t": 1})
    exported = json.loads(getVerifyJSON(report, VERSION))["opcat_report"]
    assert exported["passed"]
    assert exported["tables"]["degrees"]["rows"][0] == [1, 1, {"1": 1}]


def test_category_laws_count_only_composable_triples():
    laws = categoryLawSamples(40, 3, seed=7)
    assert laws == {"assu": 40, "lie": 40, "passed": True}
    report = runSuite("dims", {"m": 3, "n": 3, "samples": 40})
    assert report["verdicts"][2]["detail"] == "40 AssU and 40 Lie random triples"


def test_default_bounds_cover_the_acceptance_ranges():
    assert DEFAULT_BOUNDS["dims"]["samples"] >= 500
    assert DEFAULT_BOUNDS["pbw"] == {"m": 5, "n": 5}
    assert DEFAULT_BOUNDS["koszul"] == {"d": 5, "t": 5, "m": 4}
    assert DEFAULT_BOUNDS["morita"] == {"d": 4, "t": 4}
    assert DEFAULT_BOUNDS["tensor"]["t"] == 3
    assert DEFAULT_BOUNDS["lie-case"] == {"N": 3, "t": 3}
    assert DEFAULT_BOUNDS["funcalc"]["d"] == 4
    for bounds in DEFAULT_BOUNDS.values():
        assert heavyBounds(bounds) == []
