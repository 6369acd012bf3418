import json
import subprocess
import sys

import pytest
from gmpy2 import mpq

from plval.cli import run_command
from plval.generate import preset_complex
from plval.hats import hat
from plval.io import load_complex, load_function, save_complex, save_function
from plval.pl import PLFunction


@pytest.fixture
def files(tmp_path, path3, edge):
    save_complex(path3, tmp_path / "k.json")
    save_function(hat(path3, 1), tmp_path / "hat.json")
    save_function(PLFunction(edge, (1, -1)), tmp_path / "line.json")
    save_function(PLFunction(path3, (0, -1, 0)), tmp_path / "neg.json")
    (tmp_path / "bad.json").write_text("{not json")
    return tmp_path


def run(capsys, *argv):
    code = run_command([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_chi(capsys, files):
    assert run(capsys, "chi", files / "k.json")[:2] == (0, "1\n")


def test_chi_of_preset_with_hole(capsys, tmp_path):
    save_complex(preset_complex("square-with-hole"), tmp_path / "h.json")
    assert run(capsys, "chi", tmp_path / "h.json")[1] == "0\n"


class TestValuation:
    def test_both_evaluators(self, capsys, files):
        code, out, _ = run(capsys, "valuation", files / "hat.json", "--evaluator", "both")
        reports = [json.loads(line) for line in out.splitlines()]
        assert code == 0
        assert [r["evaluator"] for r in reports] == ["topological", "recursive"]
        assert {r["value"] for r in reports} == {1}

    def test_signed(self, capsys, files):
        code, out, _ = run(capsys, "valuation", files / "line.json")
        assert code == 0 and json.loads(out)["value"] == 0

    def test_plus_rejects_negative(self, capsys, files):
        code, _, err = run(capsys, "valuation", "--plus", files / "neg.json")
        assert code == 2 and "error" in err

    def test_plus(self, capsys, files):
        code, out, _ = run(capsys, "valuation", "--plus", "--evaluator", "recursive", files / "hat.json")
        assert code == 0 and json.loads(out)["stats"]["calls"] >= 1


class TestEval:
    def test_quarter(self, capsys, files):
        assert run(capsys, "eval", files / "hat.json", "--point", "1/4")[:2] == (0, "1/2\n")

    def test_outside(self, capsys, files):
        assert run(capsys, "eval", files / "hat.json", "--point", "5")[0] == 2

    def test_bad_point(self, capsys, files):
        assert run(capsys, "eval", files / "hat.json", "--point", "a")[0] == 1
        assert run(capsys, "eval", files / "hat.json", "--point", "0,0")[0] == 1


class TestMalformed:
    def test_bad_json(self, capsys, files):
        assert run(capsys, "chi", files / "bad.json")[0] == 1

    def test_missing_file(self, capsys, files):
        assert run(capsys, "chi", files / "missing.json")[0] == 1

    def test_unknown_subcommand(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == 1 and "invalid choice" in err

    def test_missing_argument(self, capsys):
        assert run(capsys, "eval")[0] == 1


class TestTransformations:
    def test_combine_meet(self, capsys, files, edge, tmp_path):
        save_function(hat(edge, 0), tmp_path / "a.json")
        save_function(hat(edge, 1), tmp_path / "b.json")
        code, _, _ = run(capsys, "combine", "--op", "meet", tmp_path / "a.json", tmp_path / "b.json", "-o", tmp_path / "m.json")
        assert code == 0
        m = load_function(tmp_path / "m.json")
        assert max(m.values) == mpq(1, 2) and len(m.values) == 3

    def test_combine_different_polyhedra(self, capsys, tmp_path, edge):
        from .conftest import path_complex

        save_function(hat(edge, 0), tmp_path / "a.json")
        save_function(hat(path_complex([0, 2]), 0), tmp_path / "b.json")
        assert run(capsys, "combine", "--op", "add", tmp_path / "a.json", tmp_path / "b.json")[0] == 2

    @pytest.mark.parametrize("op, expected", [("add", (1, 1)), ("sub", (1, -1))])
    def test_add_sub(self, capsys, tmp_path, edge, op, expected):
        save_function(hat(edge, 0), tmp_path / "a.json")
        save_function(hat(edge, 1), tmp_path / "b.json")
        code, out, _ = run(capsys, "combine", "--op", op, tmp_path / "a.json", tmp_path / "b.json")
        assert code == 0 and tuple(json.loads(out)["values"]) == tuple(str(v) for v in expected)

    def test_parts(self, capsys, files):
        code, out, _ = run(capsys, "parts", files / "line.json", "-o", files / "line")
        assert code == 0 and out.split() == [str(files / "line.plus.json"), str(files / "line.minus.json")]
        pos = load_function(files / "line.plus.json")
        assert sorted(pos.values) == [0, 0, 1]

    def test_decompose(self, capsys, files):
        code, out, _ = run(capsys, "decompose", files / "hat.json")
        assert code == 0 and json.loads(out) == {"vertices": [1], "coefficients": ["1"]}

    def test_supplement(self, capsys, files):
        code, _, _ = run(capsys, "supplement", files / "hat.json", "-o", files / "s.json")
        assert code == 0
        assert load_complex(files / "s.json").f_vector() == (3, 2)

    def test_refine(self, capsys, files):
        code, out, _ = run(capsys, "refine", files / "k.json", "--hyperplane", "1;-1/4")
        assert code == 0
        assert len(json.loads(out)["vertices"]) == 4

    def test_refine_bad_hyperplane(self, capsys, files):
        assert run(capsys, "refine", files / "k.json", "--hyperplane", "1,2")[0] == 1


class TestGenerate:
    def test_writes_instance(self, capsys, tmp_path):
        out = tmp_path / "inst"
        code, printed, _ = run(capsys, "generate", "--preset", "square", "--depth", "2", "--hats", "3", "--seed", "7", "-o", out)
        assert code == 0 and len(printed.split()) == 4
        K = load_complex(out / "complex.json")
        f = load_function(out / "f2.json")
        assert f.triangulation == K
        assert json.loads((out / "f0.json").read_text())["complex"] == "complex.json"

    def test_reproducible(self, capsys, tmp_path):
        for name in ("a", "b"):
            run(capsys, "generate", "--preset", "square-with-hole", "--depth", "2", "--hats", "2", "--seed", "11", "-o", tmp_path / name)
        for fname in ("complex.json", "f0.json", "f1.json"):
            assert (tmp_path / "a" / fname).read_bytes() == (tmp_path / "b" / fname).read_bytes()

    def test_unknown_preset(self, capsys, tmp_path):
        assert run(capsys, "generate", "--preset", "torus", "-o", tmp_path / "x")[0] == 2


class TestCheck:
    @pytest.mark.parametrize("suite", ["axioms", "lemmas", "oracle"])
    def test_suites_pass(self, capsys, monkeypatch, suite):
        monkeypatch.setenv("PLVAL_COLOR", "0")
        code, out, _ = run(capsys, "check", "--suite", suite, "--seed", "3", "--cases", "2")
        assert code == 0
        assert out and all(line.startswith("PASS ") for line in out.splitlines())

    def test_color_forced(self, capsys, monkeypatch):
        monkeypatch.setenv("PLVAL_COLOR", "1")
        _, out, _ = run(capsys, "check", "--suite", "oracle", "--cases", "1")
        assert out.startswith("\033[32mPASS")

    def test_failure_exit_code(self, capsys, monkeypatch):
        from plval.suites import SuiteResult

        def failing(name, seed, cases):
            row = SuiteResult("demo")
            row.record(True)
            row.record(False, reason="forced")
            return [row]

        monkeypatch.setenv("PLVAL_COLOR", "0")
        monkeypatch.setattr("plval.cli.run_suite", failing)
        code, out, _ = run(capsys, "check", "--suite", "axioms", "--show", "1")
        assert code == 3
        assert out.startswith("FAIL") and "counterexample" in out and "forced" in out


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "plval", "chi", str(files / "k.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "1\n"


def test_evaluator_disagreement_exits_3(capsys, monkeypatch, files):
    from plval.valuation import ValuationReport

    monkeypatch.setattr("plval.cli.alpha_plus_recursive", lambda f: ValuationReport(7, "recursive", "x"))
    code, out, err = run(capsys, "valuation", "--plus", "--evaluator", "both", files / "hat.json")
    assert code == 3 and len(out.splitlines()) == 2 and "disagree" in err
