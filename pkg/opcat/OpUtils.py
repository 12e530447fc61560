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
    Module with some misc functions: input parsing, report exports and the rank cache
"""

import os
import io
import csv
import json
import hashlib
import logging
from fractions import Fraction
from datetime import datetime as dt

ENABLED_XML = True
try:
    from lxml import etree
except ImportError:
    ENABLED_XML = False

CACHE_ENV = "OPCAT_CACHE_DIR"

log = logging.getLogger("opcat.OpUtils")


def formatScalar(value) -> str:
    """
    Textual form of an exact scalar: "3", "-1/2"
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parseScalar(value):
    """
    Parses an exact scalar from an int or a string like "-3/4"

    @return: A tuple (status,value), where status is 0 on success and -1 on failure
    """
    if isinstance(value, bool):
        return (-1, f"Boolean {value} is not a scalar")
    if isinstance(value, int):
        return (0, value)
    if isinstance(value, str):
        try:
            parsed = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            return (-1, f'Bad scalar "{value}"')
        return (0, parsed.numerator if parsed.denominator == 1 else parsed)
    return (-1, f"Inexact or unknown scalar {value!r}")


def matrixTriplets(matrix) -> list:
    """
    @param matrix: a SparseMat
    @return: list of [row, col, "value"] triplets
    """
    return [[r, c, formatScalar(v)] for r, c, v in matrix.entries()]


def matrixDigest(rows: int, cols: int, entries) -> str:
    """
    SHA-256 of a matrix given by its shape and sorted (row, col, value) triplets
    """
    digest = hashlib.sha256(f"{rows}x{cols}".encode())
    for r, c, v in entries:
        digest.update(f";{r},{c},{formatScalar(v)}".encode())
    return digest.hexdigest()


def getCacheDir():
    cacheDir = os.environ.get(CACHE_ENV)
    if not cacheDir:
        return None
    try:
        os.makedirs(cacheDir, exist_ok=True)
    except OSError as exc:
        log.warning("cannot create cache directory %s: %s", cacheDir, exc)
        return None
    return cacheDir


def getCachedRank(digest: str):
    """
    @return: the memoised rank for a matrix digest, or None
    """
    cacheDir = getCacheDir()
    if cacheDir is None:
        return None
    path = os.path.join(cacheDir, f"rank-{digest}.json")
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as cacheFile:
            return int(json.load(cacheFile)["rank"])
    except (OSError, ValueError, KeyError) as exc:
        log.warning("ignoring unreadable cache entry %s: %s", path, exc)
        return None


def putCachedRank(digest: str, value: int):
    cacheDir = getCacheDir()
    if cacheDir is None:
        return
    path = os.path.join(cacheDir, f"rank-{digest}.json")
    try:
        with open(path, "w", encoding="utf-8") as cacheFile:
            json.dump({"digest": digest, "rank": value}, cacheFile)
    except OSError as exc:
        log.warning("cannot write cache entry %s: %s", path, exc)


def parseHomText(text: str):
    """
    Parses a free group homomorphism written as "s t ; w_1 ; ... ; w_s",
    each word being whitespace separated signed letters, e.g. "2 1 ; 1 -1 ; 1"

    @param text: the textual homomorphism
    @return: A tuple (status,value), where value is (sourceRank, targetRank, words) or an error message
    """
    parts = [part.strip() for part in text.split(";")]
    header = parts[0].split()
    if len(header) != 2:
        return (-1, f'Bad header "{parts[0]}", expected "s t"')
    try:
        sourceRank, targetRank = int(header[0]), int(header[1])
    except ValueError:
        return (-1, f'Bad ranks in "{parts[0]}"')
    if sourceRank < 0 or targetRank < 0:
        return (-1, "Ranks must be non negative")
    wordParts = parts[1:]
    if sourceRank == 0 and wordParts == [""]:
        wordParts = []
    if len(wordParts) != sourceRank:
        return (-1, f"Expected {sourceRank} words, found {len(wordParts)}")
    words = []
    for part in wordParts:
        word = []
        for token in part.split():
            try:
                letter = int(token)
            except ValueError:
                return (-1, f'Bad letter "{token}"')
            if letter == 0 or abs(letter) > targetRank:
                return (-1, f"Letter {letter} outside 1..{targetRank}")
            word.append(letter)
        words.append(tuple(word))
    return (0, (sourceRank, targetRank, words))


def _parseDenseMatrix(raw, rows: int, cols: int, label: str):
    if not isinstance(raw, list) or len(raw) != rows:
        return (-1, f"{label}: expected {rows} rows")
    matrix = []
    for line in raw:
        if not isinstance(line, list) or len(line) != cols:
            return (-1, f"{label}: expected {cols} columns")
        parsedLine = []
        for value in line:
            ret = parseScalar(value)
            if ret[0] == -1:
                return (-1, f"{label}: {ret[1]}")
            parsedLine.append(ret[1])
        matrix.append(parsedLine)
    return (0, matrix)


def parseModuleData(data: dict):
    """
    Checks the shape of a serialized Lie module:
    {"truncation": N, "dims": [d_0..d_N], "sym": {"n": [s_1..s_{n-1}]}, "alpha": {"n": M(n+1)->M(n)}}

    @return: A tuple (status,value), where value is the normalized dictionary or an error message
    """
    if not isinstance(data, dict):
        return (-1, "Module file must hold a JSON object")
    try:
        truncation = int(data["truncation"])
        dims = [int(d) for d in data["dims"]]
    except (KeyError, TypeError, ValueError) as exc:
        return (-1, f"Missing or bad truncation/dims: {exc}")
    if truncation < 0 or len(dims) != truncation + 1 or any(d < 0 for d in dims):
        return (-1, "dims must list truncation+1 non negative dimensions")
    rawSym = data.get("sym", {})
    rawAlpha = data.get("alpha", {})
    if not isinstance(rawSym, dict) or not isinstance(rawAlpha, dict):
        return (-1, "sym and alpha must be objects keyed by arity")
    sym = {}
    for n in range(truncation + 1):
        matrices = rawSym.get(str(n), [])
        if len(matrices) != max(n - 1, 0) and dims[n] > 0:
            return (-1, f"arity {n}: expected {max(n - 1, 0)} transposition matrices")
        parsed = []
        for i, raw in enumerate(matrices):
            ret = _parseDenseMatrix(raw, dims[n], dims[n], f"sym[{n}][{i + 1}]")
            if ret[0] == -1:
                return ret
            parsed.append(ret[1])
        sym[n] = parsed
    alpha = {}
    for n in range(1, truncation):
        raw = rawAlpha.get(str(n))
        if raw is None:
            alpha[n] = None
            continue
        ret = _parseDenseMatrix(raw, dims[n], dims[n + 1], f"alpha[{n}]")
        if ret[0] == -1:
            return ret
        alpha[n] = ret[1]
    return (0, {"truncation": truncation, "dims": dims, "sym": sym, "alpha": alpha})


def readModuleFile(fileName: str):
    """
    @return: A tuple (status,value) with the normalized module dictionary or an error message
    """
    if not os.path.exists(fileName):
        return (-1, f'The file "{fileName}" does not exist')
    try:
        with open(fileName, "r", encoding="utf-8") as moduleFile:
            data = json.load(moduleFile)
    except (OSError, json.JSONDecodeError) as exc:
        return (-1, f'Cannot read "{fileName}": {exc}')
    return parseModuleData(data)


def getVerifyJSON(report: dict, VERSION):
    jsonDict = {
        "opcat_report": {
            "opcat_info": {"version": VERSION},
            "date": dt.today().strftime("%Y-%m-%d %H:%M:%S"),
            "suite": report["suite"],
            "bounds": report.get("bounds", {}),
            "passed": all(v["passed"] for v in report["verdicts"]),
            "verdicts": report["verdicts"],
            "tables": report.get("tables", {}),
        }
    }
    return json.dumps(jsonDict, indent=4, sort_keys=True, default=str)


def getVerifyXML(report: dict, VERSION):
    if not ENABLED_XML:
        raise RuntimeError("Xml is disabled because 'from lxml import etree' failed")
    root = etree.Element("opcat_report", version=f"{VERSION}", suite=report["suite"])
    reportDate = etree.SubElement(root, "date")
    reportDate.text = dt.today().strftime("%Y-%m-%d %H:%M:%S")
    bounds = etree.SubElement(root, "bounds")
    for name, value in sorted(report.get("bounds", {}).items()):
        etree.SubElement(bounds, "bound", name=name, value=str(value))
    verdicts = etree.SubElement(root, "verdicts")
    for verdict in report["verdicts"]:
        verdictInfo = etree.SubElement(
            verdicts,
            "verdict",
            check=verdict["check"],
            status="pass" if verdict["passed"] else "fail",
        )
        statement = etree.SubElement(verdictInfo, "statement", key=verdict["statement"])
        statement.text = verdict.get("description", "")
        if verdict.get("detail"):
            detail = etree.SubElement(verdictInfo, "detail")
            detail.text = verdict["detail"]
    tables = etree.SubElement(root, "tables")
    for name, table in sorted(report.get("tables", {}).items()):
        tableInfo = etree.SubElement(tables, "table", name=name)
        header = etree.SubElement(tableInfo, "header")
        header.text = ",".join(str(h) for h in table["header"])
        for line in table["rows"]:
            rowInfo = etree.SubElement(tableInfo, "row")
            rowInfo.text = ",".join(str(v) for v in line)
    return etree.tostring(root, pretty_print=True)


def getVerifyCSV(report: dict):
    output = io.StringIO()
    writer = csv.writer(output)
    writer.writerow(["suite", "check", "statement", "passed", "detail"])
    for verdict in report["verdicts"]:
        writer.writerow(
            [report["suite"], verdict["check"], verdict["statement"], verdict["passed"], verdict.get("detail", "")]
        )
    for name, table in sorted(report.get("tables", {}).items()):
        writer.writerow([])
        writer.writerow([name] + list(table["header"]))
        for line in table["rows"]:
            writer.writerow([""] + list(line))
    return output.getvalue()


def _latexEscape(value) -> str:
    text = str(value)
    for char in ("&", "%", "_", "#", "{", "}"):
        text = text.replace(char, "\\" + char)
    return text


def getVerifyLatex(report: dict):
    """
    Verdicts and tables of a verify report as LaTeX tabular environments
    """
    lines = [f"% opcat verify {report['suite']}", r"\begin{tabular}{lll}", r"check & statement & verdict \\ \hline"]
    for verdict in report["verdicts"]:
        status = "PASS" if verdict["passed"] else "FAIL"
        lines.append(f"{_latexEscape(verdict['check'])} & {_latexEscape(verdict['statement'])} & {status} \\\\")
    lines.append(r"\end{tabular}")
    for name, table in sorted(report.get("tables", {}).items()):
        lines.append("")
        lines.append(f"% {name}")
        lines.append(r"\begin{tabular}{" + "l" * len(table["header"]) + "}")
        lines.append(" & ".join(_latexEscape(h) for h in table["header"]) + r" \\ \hline")
        for line in table["rows"]:
            lines.append(" & ".join(_latexEscape(v) for v in line) + r" \\")
        lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"


def getResolutionJSON(resolution: dict, VERSION):
    """
    @param resolution: dictionary produced by OpKoszul.resolutionData
    """
    jsonDict = {
        "opcat_resolution": {
            "opcat_info": {"version": VERSION},
            "date": dt.today().strftime("%Y-%m-%d %H:%M:%S"),
            "resolution": resolution,
        }
    }
    return json.dumps(jsonDict, indent=4, sort_keys=True)


def getResolutionCSV(resolution: dict):
    output = io.StringIO()
    writer = csv.writer(output)
    d = resolution["d"]
    writer.writerow(["rank"] + [f"stage_{k}" for k in range(1, d + 1)] + ["target"] + [f"H_stage_{k}" for k in range(1, d + 1)] + ["H_target"])
    for entry in resolution["ranks"]:
        writer.writerow([entry["rank"]] + entry["dims"] + [entry["target"]] + entry["homology"])
    return output.getvalue()


def getResolutionLatex(resolution: dict):
    """
    Plain-text LaTeX display of the resolution, one chain per evaluation rank
    """
    d = resolution["d"]
    if resolution.get("side", "grop") == "com":
        lines = [
            "% resolution of the regular representation by surjection modules",
            f"% m = {d}",
            r"\begin{align*}",
        ]
        terms = [rf"\mathsf{{Cat}}\,\mathfrak{{Com}}({d},-)^{{({k})}}" for k in range(1, d + 1)]
        chain = r" \to ".join(["0"] + terms + ["0"])
    else:
        lines = [
            "% minimal projective resolution of the d-th tensor power of the abelianization dual",
            f"% d = {d}",
            r"\begin{align*}",
        ]
        terms = []
        for k in range(1, d + 1):
            terms.append(
                rf"\mathsf{{Cat}}\,\mathfrak{{Ass}}^u({k},-)\otimes_{{\mathfrak{{S}}_{{{k}}}}} P^{{\text{{!`}}}}({d},{k})"
            )
        chain = r" \to ".join(["0"] + terms + [rf"(\mathfrak{{a}}^\sharp)^{{\otimes {d}}}", "0"])
    lines.append(chain + r" \\")
    for entry in resolution["ranks"]:
        dims = r" \to ".join(["0"] + [str(x) for x in entry["dims"]] + [str(entry["target"]), "0"])
        lines.append(rf"t = {entry['rank']}: \quad & {dims} \\")
    lines.append(r"\end{align*}")
    return "\n".join(lines) + "\n"
