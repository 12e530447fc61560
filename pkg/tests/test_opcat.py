import json
import sys

import pytest

from opcat.opcat import EXIT_FAIL, EXIT_INPUT, EXIT_PASS, main


def run(monkeypatch, *args) -> int:
    # grinch mode keeps colorama away from the captured streams
    monkeypatch.setattr(sys, "argv", ["opcat", "-g", *args])
    with pytest.raises(SystemExit) as exit_:
        main()
    return exit_.value.code


@pytest.fixture(autouse=True)
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_dims_grid(monkeypatch, capsys):
    assert run(monkeypatch, "dims", "assu", "2", "3") == EXIT_PASS
    out = capsys.readouterr().out
    assert "dim Cat assu(m, n)" in out
    assert "12" in out


@pytest.mark.parametrize(
    "args",
    [
        ("dims", "homotopy", "2", "2"),
        ("dims", "lie", "0", "2"),
        ("verify", "nothing"),
        ("verify", "flie", "-f", "yaml"),
        ("resolve", "-f", "yaml"),
        ("lie", "gl3"),
        ("induce", "missing.json"),
    ],
)
def test_bad_input(monkeypatch, capsys, args):
    assert run(monkeypatch, *args) == EXIT_INPUT
    assert "[!] Error:" in capsys.readouterr().out


def test_no_command_prints_help(monkeypatch, capsys):
    assert run(monkeypatch) == EXIT_INPUT
    assert "usage: opcat" in capsys.readouterr().out


def test_resolve_to_json(monkeypatch, workdir):
    output = workdir / "resolution.json"
    assert run(monkeypatch, "resolve", "--d", "2", "--t", "1", "-o", str(output)) == EXIT_PASS
    resolution = json.loads(output.read_text())["opcat_resolution"]["resolution"]
    assert resolution["side"] == "grop"
    assert [entry["dims"] for entry in resolution["ranks"]] == [[0, 0], [1, 2]]


def test_resolve_com_side_as_latex(monkeypatch, capsys):
    assert run(monkeypatch, "resolve", "--side", "com", "--d", "2", "--t", "2", "-f", "latex") == EXIT_PASS
    assert r"\begin{align*}" in capsys.readouterr().out


def test_verify_flie(monkeypatch, capsys, workdir):
    output = workdir / "flie.csv"
    assert run(monkeypatch, "verify", "flie", "-f", "csv", "-o", str(output)) == EXIT_PASS
    assert "[+] Suite flie passed" in capsys.readouterr().out
    assert output.read_text().startswith("suite,check,statement,passed,detail")


def test_lie_module_file_induces(monkeypatch, workdir):
    moduleFile = workdir / "abelian1.json"
    assert run(monkeypatch, "lie", "abelian1", "--N", "2", "-o", str(moduleFile)) == EXIT_PASS
    assert json.loads(moduleFile.read_text())["dims"] == [1, 1, 1]
    report = workdir / "induced.json"
    assert run(monkeypatch, "induce", str(moduleFile), "--t", "2", "-o", str(report)) == EXIT_PASS
    induced = json.loads(report.read_text())
    # truncated symmetric algebra on t generators
    assert induced["dims"] == {"0": 1, "1": 3, "2": 6}
    assert induced["maps"]


def test_induce_a_given_homomorphism(monkeypatch, capsys, workdir):
    moduleFile = workdir / "regular.json"
    moduleFile.write_text(json.dumps({"truncation": 1, "dims": [0, 1]}))
    assert run(monkeypatch, "induce", str(moduleFile), "--t", "1", "--hom", "1 1 ; -1") == EXIT_PASS
    assert "1 1 ; -1: 1x1" in capsys.readouterr().out
    assert run(monkeypatch, "induce", str(moduleFile), "--hom", "1 1 ; 5") == EXIT_INPUT


def test_induce_rejects_a_broken_module(monkeypatch, capsys, workdir):
    moduleFile = workdir / "broken.json"
    moduleFile.write_text(json.dumps({"truncation": 2, "dims": [0, 0, 2], "sym": {"2": [[[1, 1], [0, 1]]]}}))
    assert run(monkeypatch, "induce", str(moduleFile)) == EXIT_INPUT
    assert "breaks" in capsys.readouterr().out


def test_unreadable_module_file(monkeypatch, workdir):
    moduleFile = workdir / "garbage.json"
    moduleFile.write_text("not json")
    assert run(monkeypatch, "induce", str(moduleFile)) == EXIT_INPUT


def test_exit_codes_differ():
    assert len({EXIT_PASS, EXIT_FAIL, EXIT_INPUT}) == 3
