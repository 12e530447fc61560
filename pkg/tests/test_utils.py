import csv
import io
import json
from fractions import Fraction

import pytest

from opcat.OpKoszul import COM_SIDE, resolutionComSide, resolutionData, resolutionGrop
from opcat.OpUtils import (
    CACHE_ENV,
    ENABLED_XML,
    _latexEscape,
    formatScalar,
    getCachedRank,
    getResolutionCSV,
    getResolutionJSON,
    getResolutionLatex,
    getVerifyCSV,
    getVerifyJSON,
    getVerifyLatex,
    getVerifyXML,
    matrixDigest,
    parseHomText,
    parseModuleData,
    parseScalar,
    putCachedRank,
    readModuleFile,
)

REPORT = {
    "suite": "dims",
    "bounds": {"m": 2, "n": 2},
    "verdicts": [
        {"check": "catlie_dims", "statement": "catlie-basis", "description": "Lie dims", "passed": True, "detail": ""},
        {"check": "pbw_count", "statement": "pbw", "description": "PBW", "passed": False, "detail": "m=2 n=1"},
    ],
    "tables": {"ASSU": {"header": ["m\\n", 0, 1, 2], "rows": [[1, 0, 1, 2], [2, 0, 2, 6]]}},
}


def test_scalars():
    assert formatScalar(3) == "3"
    assert formatScalar(Fraction(-1, 2)) == "-1/2"
    assert parseScalar("-3/4") == (0, Fraction(-3, 4))
    assert parseScalar(" 6/3 ") == (0, 2)
    assert parseScalar(True)[0] == -1
    assert parseScalar(0.5)[0] == -1
    assert parseScalar("1/0")[0] == -1


def test_hom_text():
    assert parseHomText("2 1 ; 1 -1 ; 1") == (0, (2, 1, [(1, -1), (1,)]))
    assert parseHomText("0 2") == (0, (0, 2, []))
    assert parseHomText("1 1 ;") == (0, (1, 1, [()]))
    for bad in ("1 ; 1", "a b ; 1", "1 1 ; 2", "1 1 ; 0", "2 1 ; 1", "1 1 ; x"):
        assert parseHomText(bad)[0] == -1, bad


def test_module_data():
    status, value = parseModuleData(
        {"truncation": 2, "dims": [0, 1, 1], "sym": {"2": [[["-1"]]]}, "alpha": {"1": [[1]]}}
    )
    assert status == 0
    assert value["sym"] == {0: [], 1: [], 2: [[[-1]]]}
    assert value["alpha"] == {1: [[1]]}


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"dims": [1]},
        {"truncation": 1, "dims": [1]},
        {"truncation": 2, "dims": [0, 1, 2]},
        {"truncation": 2, "dims": [0, 1, 1], "sym": {"2": [[[1, 0]]]}},
        {"truncation": 2, "dims": [0, 1, 1], "sym": {"2": [[["x"]]]}},
        {"truncation": 2, "dims": [0, 1, 1], "sym": {"2": [[[1]]]}, "alpha": {"1": [[1, 1]]}},
        {"truncation": 1, "dims": [0, 1], "sym": []},
    ],
)
def test_bad_module_data(data):
    assert parseModuleData(data)[0] == -1


def test_module_files(tmp_path):
    path = tmp_path / "sign.json"
    path.write_text(json.dumps({"truncation": 2, "dims": [0, 0, 1], "sym": {"2": [[[-1]]]}}))
    status, value = readModuleFile(str(path))
    assert status == 0
    assert value["dims"] == [0, 0, 1]
    assert readModuleFile(str(tmp_path / "missing.json"))[0] == -1
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert readModuleFile(str(broken))[0] == -1


def test_rank_cache(tmp_path, monkeypatch):
    digest = matrixDigest(2, 2, [(0, 0, 1), (1, 1, Fraction(1, 2))])
    assert digest == matrixDigest(2, 2, [(0, 0, 1), (1, 1, "1/2")])
    assert digest != matrixDigest(2, 3, [(0, 0, 1), (1, 1, "1/2")])
    monkeypatch.delenv(CACHE_ENV, raising=False)
    putCachedRank(digest, 2)
    assert getCachedRank(digest) is None
    monkeypatch.setenv(CACHE_ENV, str(tmp_path / "cache"))
    assert getCachedRank(digest) is None
    putCachedRank(digest, 2)
    assert getCachedRank(digest) == 2


def test_verify_json():
    report = json.loads(getVerifyJSON(REPORT, "1.0.0"))["opcat_report"]
    assert report["opcat_info"]["version"] == "1.0.0"
    assert not report["passed"]
    assert [v["check"] for v in report["verdicts"]] == ["catlie_dims", "pbw_count"]
    assert report["tables"]["ASSU"]["rows"][1] == [2, 0, 2, 6]


def test_verify_csv():
    rows = list(csv.reader(io.StringIO(getVerifyCSV(REPORT))))
    assert rows[0] == ["suite", "check", "statement", "passed", "detail"]
    assert rows[2] == ["dims", "pbw_count", "pbw", "False", "m=2 n=1"]
    assert rows[4] == ["ASSU", "m\\n", "0", "1", "2"]


@pytest.mark.skipif(not ENABLED_XML, reason="lxml is not available")
def test_verify_xml():
    from lxml import etree

    root = etree.fromstring(getVerifyXML(REPORT, "1.0.0"))
    assert root.get("suite") == "dims"
    statuses = [v.get("status") for v in root.iter("verdict")]
    assert statuses == ["pass", "fail"]
    assert [detail.text for detail in root.iter("detail")] == ["m=2 n=1"]
    assert [row.text for row in root.iter("row")] == ["1,0,1,2", "2,0,2,6"]


def test_latex_escape():
    assert _latexEscape("catlie_dims") == r"catlie\_dims"
    assert _latexEscape("50% & #1") == r"50\% \& \#1"


def test_verify_latex():
    latex = getVerifyLatex(REPORT)
    assert r"catlie\_dims & catlie-basis & PASS \\" in latex
    assert r"pbw\_count & pbw & FAIL \\" in latex
    assert latex.count(r"\begin{tabular}") == 2


def test_resolution_exports():
    resolution = resolutionData(2, resolutionGrop(2, 1))
    exported = json.loads(getResolutionJSON(resolution, "1.0.0"))["opcat_resolution"]
    assert exported["resolution"]["ranks"][1]["dims"] == [1, 2]
    rows = list(csv.reader(io.StringIO(getResolutionCSV(resolution))))
    assert rows[0] == ["rank", "stage_1", "stage_2", "target", "H_stage_1", "H_stage_2", "H_target"]
    assert rows[2] == ["1", "1", "2", "1", "0", "0", "0"]
    latex = getResolutionLatex(resolution)
    assert r"t = 1: \quad & 0 \to 1 \to 2 \to 1 \to 0 \\" in latex


def test_com_side_latex():
    latex = getResolutionLatex(resolutionData(2, resolutionComSide(2, 2), COM_SIDE))
    assert "surjection modules" in latex
    assert r"t = 2: \quad & 0 \to 0 \to 2 \to 0 \to 0 \\" in latex
