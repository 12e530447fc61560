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
    Initial script to launch the tool
"""

import sys
import os
import json
import logging
import argparse
import traceback
from datetime import datetime as dt
from operator import attrgetter

from prettytable import PrettyTable, SINGLE_BORDER

try:
    from opcat.OpExactLin import VERSION, OpcatException
    from opcat.OpOperads import OPERADS
    from opcat.OpPropCat import homSpace
    from opcat.OpGrAction import FreeGroupHom, generatingHomsInto
    from opcat.OpLieModules import LIE_PRESETS, LieModule, lieAlgebraModule, validate
    from opcat.OpInduction import InducedFunctor, InvariantViolationError
    from opcat.OpKoszul import COM_SIDE, GROP, resolutionComSide, resolutionData, resolutionGrop
    from opcat.OpVerify import heavyBounds, runSuite
    from opcat.OpTheorems import suites
    from opcat.OpUtils import (
        formatScalar,
        getResolutionCSV,
        getResolutionJSON,
        getResolutionLatex,
        getVerifyCSV,
        getVerifyJSON,
        getVerifyLatex,
        getVerifyXML,
        parseHomText,
        readModuleFile,
    )
except ModuleNotFoundError:
    from OpExactLin import VERSION, OpcatException
    from OpOperads import OPERADS
    from OpPropCat import homSpace
    from OpGrAction import FreeGroupHom, generatingHomsInto
    from OpLieModules import LIE_PRESETS, LieModule, lieAlgebraModule, validate
    from OpInduction import InducedFunctor, InvariantViolationError
    from OpKoszul import COM_SIDE, GROP, resolutionComSide, resolutionData, resolutionGrop
    from OpVerify import heavyBounds, runSuite
    from OpTheorems import suites
    from OpUtils import (
        formatScalar,
        getResolutionCSV,
        getResolutionJSON,
        getResolutionLatex,
        getVerifyCSV,
        getVerifyJSON,
        getVerifyLatex,
        getVerifyXML,
        parseHomText,
        readModuleFile,
    )

try:
    from colorama import init, Fore, Style

    COLORIZED_OUTPUT = True
except ModuleNotFoundError:
    COLORIZED_OUTPUT = False

DTFMT = "%Y%m%d-%H%M%S"
ERROR_LOG = f"opcat_errors-{dt.now().strftime(DTFMT)}.txt"
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
RESOLUTION_FORMATS = ("json", "csv", "latex")
VERIFY_FORMATS = ("json", "csv", "latex", "xml")


class SortHelp(argparse.HelpFormatter):
    def add_arguments(self, actions):
        actions = sorted(actions, key=attrgetter("option_strings"))
        super().add_arguments(actions)


class RunConfig:
    """
    Everything a command needs, collected from the parsed arguments
    """

    def __init__(self, args: argparse.Namespace):
        self.command = args.command
        self.bounds = {}
        for name in ("m", "n", "d", "t", "N", "samples"):
            value = getattr(args, name, None)
            if value is not None:
                self.bounds[name] = value
        self.operad = getattr(args, "operad", None)
        self.suite = getattr(args, "suite", None)
        self.side = getattr(args, "side", GROP)
        self.moduleFile = getattr(args, "moduleFile", None)
        self.preset = getattr(args, "preset", None)
        self.homs = getattr(args, "homs", None) or []
        self.outputFile = getattr(args, "outputFile", None)
        self.exportFormat = getattr(args, "exportFormat", None)
        self.seed = getattr(args, "seed", 0) or 0

    def validate(self) -> list:
        """
        @return: list of error messages, empty when the configuration is usable
        """
        errors = []
        for name, value in self.bounds.items():
            if value < 0 or (value == 0 and name not in ("t", "N")):
                errors.append(f"Bound --{name} must be positive, got {value}")
        if self.command == "dims" and self.operad not in OPERADS:
            errors.append(f'Unknown operad "{self.operad}", expected one of {", ".join(OPERADS)}')
        if self.command == "verify":
            if self.suite not in suites:
                errors.append(f'Unknown suite "{self.suite}", expected one of {", ".join(suites)}')
            if self.exportFormat is not None and self.exportFormat not in VERIFY_FORMATS:
                errors.append(f'Unknown format "{self.exportFormat}"')
        if self.command == "resolve" and self.exportFormat not in RESOLUTION_FORMATS:
            errors.append(f'Unknown format "{self.exportFormat}"')
        if self.command == "induce" and not os.path.exists(self.moduleFile):
            errors.append(f'The file "{self.moduleFile}" does not exist')
        if self.command == "lie" and self.preset not in LIE_PRESETS:
            errors.append(f'Unknown Lie algebra "{self.preset}", expected one of {", ".join(LIE_PRESETS)}')
        return errors


def addBound(parser: argparse.ArgumentParser, name: str, helpText: str, default=None):
    parser.add_argument(f"--{name}", type=int, dest=name, default=default, help=helpText)


def buildParser() -> argparse.ArgumentParser:
    versionHeader = f"Version: opcat {VERSION}"
    argsParser = argparse.ArgumentParser(
        prog="opcat",
        description=versionHeader,
        formatter_class=SortHelp,
    )
    argsParser.add_argument(
        "-g",
        "--grinch-mode",
        action="store_true",
        dest="avoidColors",
        default=False,
        help="Avoids colorized output.",
    )
    argsParser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        dest="verbose",
        default=False,
        help="Logs the computations on stderr.",
    )
    argsParser.add_argument(
        "--version",
        action="version",
        version=versionHeader,
        help="Shows program's version number.",
    )
    subParsers = argsParser.add_subparsers(dest="command", metavar="command")

    dimsParser = subParsers.add_parser("dims", help="Prints the grid of dim Cat O(m, n).", formatter_class=SortHelp)
    dimsParser.add_argument("operad", help=f"One of {', '.join(OPERADS)}")
    dimsParser.add_argument("m", type=int, help="Largest source object")
    dimsParser.add_argument("n", type=int, help="Largest target object")

    verifyParser = subParsers.add_parser("verify", help="Runs a verification suite.", formatter_class=SortHelp)
    verifyParser.add_argument("suite", help=f"One of {', '.join(suites)}")
    for name, helpText in (
        ("m", "Source arity bound"),
        ("n", "Target arity bound"),
        ("d", "Degree or resolved arity bound"),
        ("t", "Free group rank bound"),
        ("N", "Truncation of Lie algebra modules"),
        ("samples", "Number of random composable triples"),
    ):
        addBound(verifyParser, name, helpText)
    verifyParser.add_argument("--seed", type=int, dest="seed", default=0, help="Seed of the random samples.")
    verifyParser.add_argument(
        "-f", "--format", dest="exportFormat", default=None, help=f"Report format: {', '.join(VERIFY_FORMATS)}"
    )
    verifyParser.add_argument("-o", "--output", dest="outputFile", default=None, help="Report file.")

    resolveParser = subParsers.add_parser("resolve", help="Exports a Koszul resolution.", formatter_class=SortHelp)
    addBound(resolveParser, "d", "Resolved tensor power, or arity m on the Com side", 2)
    addBound(resolveParser, "t", "Largest evaluation rank, or arity on the Com side", 2)
    resolveParser.add_argument(
        "--side", dest="side", default=GROP, choices=[GROP, COM_SIDE], help="Which resolution to build."
    )
    resolveParser.add_argument(
        "-f", "--format", dest="exportFormat", default="json", help=f"One of {', '.join(RESOLUTION_FORMATS)}"
    )
    resolveParser.add_argument("-o", "--output", dest="outputFile", default=None, help="Output file.")

    induceParser = subParsers.add_parser(
        "induce", help="Induces a Cat Lie-module to a functor on free groups.", formatter_class=SortHelp
    )
    induceParser.add_argument("moduleFile", help="Module JSON file")
    addBound(induceParser, "t", "Largest evaluation rank", 2)
    induceParser.add_argument(
        "--hom",
        action="append",
        dest="homs",
        help='Homomorphism "s t ; w_1 ; ... ; w_s" to evaluate, default the generators into each rank.',
    )
    induceParser.add_argument("-o", "--output", dest="outputFile", default=None, help="JSON report file.")

    lieParser = subParsers.add_parser("lie", help="Writes the module file of a Lie algebra.", formatter_class=SortHelp)
    lieParser.add_argument("preset", help=f"One of {', '.join(LIE_PRESETS)}")
    addBound(lieParser, "N", "Truncation", 2)
    lieParser.add_argument("-o", "--output", dest="outputFile", default=None, help="Output file.")
    return argsParser


def writeOutput(content, outputFile: str = None):
    if outputFile is None:
        if isinstance(content, bytes):
            content = content.decode("utf-8")
        print(content)
        return
    mode = "wb" if isinstance(content, bytes) else "w"
    encoding = None if isinstance(content, bytes) else "utf-8"
    with open(outputFile, mode, encoding=encoding) as output:
        output.write(content)
    print(f"[+] Written {outputFile}")


def cmdDims(config: RunConfig, colors: dict) -> int:
    mMax, nMax = config.bounds["m"], config.bounds["n"]
    table = PrettyTable([f"{colors['static']}m \\ n{colors['reset']}"] + [str(n) for n in range(nMax + 1)])
    table.set_style(SINGLE_BORDER)
    for m in range(mMax + 1):
        table.add_row([m] + [homSpace(config.operad, m, n).dim for n in range(nMax + 1)])
    print(f"dim Cat {config.operad}(m, n)")
    print(table)
    return EXIT_PASS


def cmdVerify(config: RunConfig, colors: dict) -> int:
    heavy = heavyBounds(config.bounds)
    if heavy:
        print(f"{colors['warning']}[*] Warning: bounds {', '.join(heavy)} are above desk scale, this may take long{colors['reset']}")
    print(f"[-] Running suite {config.suite}...")
    report = runSuite(config.suite, config.bounds, config.seed)
    passed = all(v["passed"] for v in report["verdicts"])
    table = PrettyTable(["check", "statement", "verdict"])
    table.set_style(SINGLE_BORDER)
    table.align = "l"
    for verdict in report["verdicts"]:
        color = colors["pass"] if verdict["passed"] else colors["error"]
        status = "PASS" if verdict["passed"] else "FAIL"
        table.add_row([verdict["check"], verdict["statement"], f"{color}{status}{colors['reset']}"])
    print(table)
    for name, data in sorted(report["tables"].items()):
        detailTable = PrettyTable([str(h) for h in data["header"]])
        detailTable.set_style(SINGLE_BORDER)
        detailTable.add_rows([[str(v) for v in row] for row in data["rows"]])
        print(f"{colors['static']}{name}{colors['reset']}")
        print(detailTable)
    if config.exportFormat is not None:
        exporters = {
            "json": lambda: getVerifyJSON(report, VERSION),
            "csv": lambda: getVerifyCSV(report),
            "latex": lambda: getVerifyLatex(report),
            "xml": lambda: getVerifyXML(report, VERSION),
        }
        writeOutput(exporters[config.exportFormat](), config.outputFile)
    if passed:
        print(f"{colors['pass']}[+] Suite {config.suite} passed{colors['reset']}")
        return EXIT_PASS
    print(f"{colors['error']}[!] Suite {config.suite} failed{colors['reset']}")
    return EXIT_FAIL


def cmdResolve(config: RunConfig, colors: dict) -> int:
    d, t = config.bounds["d"], config.bounds["t"]
    if config.side == COM_SIDE:
        resolution = resolutionData(d, resolutionComSide(d, t), COM_SIDE)
    else:
        resolution = resolutionData(d, resolutionGrop(d, t))
    exporters = {
        "json": lambda: getResolutionJSON(resolution, VERSION),
        "csv": lambda: getResolutionCSV(resolution),
        "latex": lambda: getResolutionLatex(resolution),
    }
    writeOutput(exporters[config.exportFormat](), config.outputFile)
    return EXIT_PASS


def _matrixRows(matrix) -> list:
    return [[formatScalar(v) for v in row] for row in matrix.toDense()]


def cmdInduce(config: RunConfig, colors: dict) -> int:
    ret = readModuleFile(config.moduleFile)
    if ret[0] == -1:
        print(f"{colors['error']}[!] Error: {ret[1]}{colors['reset']}")
        return EXIT_INPUT
    data = ret[1]
    module = LieModule(data["truncation"], data["dims"], data["sym"], data["alpha"], os.path.basename(config.moduleFile))
    violations = validate(module)
    if violations:
        print(f"{colors['error']}[!] Error: the module breaks {len(violations)} relations{colors['reset']}")
        for violation in violations:
            print(f"\t- {violation}")
        return EXIT_INPUT
    homs = []
    for text in config.homs:
        status, value = parseHomText(text)
        if status == -1:
            print(f"{colors['error']}[!] Error: {value}{colors['reset']}")
            return EXIT_INPUT
        homs.append((text, FreeGroupHom(*value)))
    functor = InducedFunctor(module)
    tMax = config.bounds["t"]
    report = {"module": module.name, "dims": {}, "maps": []}
    table = PrettyTable(["t", "dim"])
    table.set_style(SINGLE_BORDER)
    for t in range(tMax + 1):
        report["dims"][t] = functor.value(t)
        table.add_row([t, report["dims"][t]])
    print(table)
    if not homs:
        homs = [
            (name, phi)
            for t in range(1, tMax + 1)
            for name, phi in generatingHomsInto(t)
            if phi.sourceRank <= tMax
        ]
    try:
        for name, phi in homs:
            matrix = functor.mapMatrix(phi)
            report["maps"].append({"hom": name, "text": phi.toText(), "matrix": _matrixRows(matrix)})
            print(f"{colors['static']}{name}{colors['reset']} {phi.toText()}: {matrix.rows}x{matrix.cols}")
    except InvariantViolationError as error:
        print(f"{colors['error']}[!] Error: {error}{colors['reset']}")
        return EXIT_FAIL
    if config.outputFile is not None:
        writeOutput(json.dumps(report, indent=4, sort_keys=True), config.outputFile)
    return EXIT_PASS


def cmdLie(config: RunConfig, colors: dict) -> int:
    module = lieAlgebraModule(LIE_PRESETS[config.preset](), config.bounds["N"], config.preset)
    writeOutput(json.dumps(module.toDict(), indent=4, sort_keys=True), config.outputFile)
    return EXIT_PASS


COMMANDS = {
    "dims": cmdDims,
    "verify": cmdVerify,
    "resolve": cmdResolve,
    "induce": cmdInduce,
    "lie": cmdLie,
}


def main():
    newLine = os.linesep
    currentDir = os.getcwd()
    errorsFile = os.path.join(currentDir, ERROR_LOG)
    argsParser = buildParser()
    args = argsParser.parse_args()
    exitCode = EXIT_PASS
    errorMessage = ""
    if not COLORIZED_OUTPUT or args.avoidColors:
        colors = {"pass": "", "warning": "", "error": "", "static": "", "reset": ""}
    else:
        init()
        colors = {
            "pass": Fore.GREEN,
            "warning": Fore.YELLOW,
            "error": Fore.RED,
            "static": Fore.BLUE,
            "reset": Style.RESET_ALL,
        }
    rootLogger = logging.getLogger("opcat")
    if not rootLogger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(asctime)s %(name)s %(levelname)s %(message)s"))
        rootLogger.addHandler(handler)
    rootLogger.setLevel(logging.DEBUG if args.verbose else logging.WARNING)

    try:
        if args.command is None:
            argsParser.print_help()
            sys.exit(EXIT_INPUT)
        config = RunConfig(args)
        errors = config.validate()
        if errors:
            for error in errors:
                print(f"{colors['error']}[!] Error: {error}{colors['reset']}")
            sys.exit(EXIT_INPUT)
        exitCode = COMMANDS[config.command](config, colors)
    except KeyboardInterrupt:
        exitCode = EXIT_FAIL
    except OpcatException as exc:
        errorMessage = f"[!] Error: {exc}"
        traceback.print_exc(file=open(errorsFile, "a", encoding="utf-8"))
        print(f"{colors['error']}{errorMessage}{colors['reset']}{newLine}")
        exitCode = EXIT_FAIL
    except Exception:
        errorMessage = "[!] Error: Exception not handled"
        traceback.print_exc(file=open(errorsFile, "a", encoding="utf-8"))
        print(f"{colors['error']}{errorMessage}{colors['reset']}{newLine}")
        exitCode = EXIT_FAIL
    finally:
        if os.path.exists(errorsFile):
            message = f"{newLine}Please don't forget to report the errors found, the traceback is in:{newLine * 2}"
            message += f"\t- {errorsFile}{newLine}"
            print(f"{colors['error']}{message}{colors['reset']}")
    sys.exit(exitCode)


if __name__ == "__main__":
    main()
