import io
import json
import math
import subprocess
import sys

import pytest

from solvable.cli import run


def invoke(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


class TestFamilies:
    def test_lists_six_families(self):
        code, text = invoke(["families"])
        assert code == 0
        entries = json.loads(text)
        assert len(entries) == 6
        assert {e["case"] for e in entries} == {
            "1", "s", "1-s^2", "s^2-1", "s^2", "s^2+1"}

    def test_with_parameters(self):
        code, text = invoke(["families", "--alpha", "-7", "--beta", "1"])
        entries = {e["case"]: e for e in json.loads(text)}
        s2 = entries["s^2"]
        assert s2["admissible"] is True
        assert s2["interval"] == [0, "inf"]
        assert s2["Lambda"] == 4.0
        assert s2["L"] == 3
        assert entries["s^2-1"]["admissible"] is False


class TestPoly:
    def test_coefficient_table(self):
        code, text = invoke(["poly", "--case", "one", "--alpha", "-2",
                             "--beta", "0", "--ell", "2"])
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0] == "ell,j,c_j"
        assert lines[-1] == "2,2,1"
        assert any(line == "2,0,-0.5" for line in lines)

    def test_inadmissible_parameters_exit_1(self):
        code, _ = invoke(["poly", "--case", "s^2-1", "--alpha", "-3",
                          "--beta", "1", "--ell", "1"])
        assert code == 1


class TestGenerate:
    def test_ground_state_energy_two(self):
        code, text = invoke(["generate", "--c1", "1", "--c2", "0",
                             "--n", "0", "--branch", "+",
                             "--which", "cuberoot"])
        assert code == 0
        obj = json.loads(text)
        assert obj["energy"] == 2
        assert obj["admissible"] is True
        assert "r^(1/6)" in obj["psi_expr"]

    def test_inadmissible_reported(self):
        code, text = invoke(["generate", "--c1", "1", "--c2", "-5",
                             "--n", "1", "--branch", "+",
                             "--which", "cuberoot"])
        assert code == 0
        assert json.loads(text)["admissible"] is False

    def test_sqrt_route(self):
        code, text = invoke(["generate", "--c1", "-1", "--c2", "-6.75",
                             "--n", "3", "--branch", "+",
                             "--which", "sqrt"])
        obj = json.loads(text)
        assert obj["admissible"] is True
        assert obj["energy"] == pytest.approx(-1.0)


class TestSolveParams:
    def test_quantsys_both_branches(self):
        code, text = invoke(["solve-params", "--mode", "quantsys",
                             "--c1", "1", "--c2", "0", "--n", "1"])
        entries = json.loads(text)
        assert len(entries) == 2
        energies = sorted(e["energy"] for e in entries)
        assert energies[0] == pytest.approx(-2 * math.sqrt(3))
        assert energies[1] == pytest.approx(2 * math.sqrt(3))

    def test_invsqrt_roots_with_flags(self):
        code, text = invoke(["solve-params", "--mode", "invsqrt",
                             "--c1", "-1", "--c2", "-6.75", "--n", "3"])
        entries = json.loads(text)
        assert any(abs(e["alpha"] + 2.0) < 1e-9 for e in entries
                   if e["admissible"])


class TestVerify:
    def test_spectrum_family(self):
        code, text = invoke(["verify", "spectrum", "--case", "one",
                             "--alpha", "-2", "--beta", "0", "--m", "0",
                             "--grid", "4000"])
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0] == "index,E_numeric,E_analytic,abs_err"
        rows = [line.split(",") for line in lines[1:6]]
        for row in rows:
            assert float(row[3]) < 5e-4

    def test_residual_family(self):
        code, text = invoke(["verify", "residual", "--system", "family",
                             "--case", "one", "--alpha", "-2", "--beta",
                             "0", "--ell", "1", "--m", "0", "--grid", "50"])
        lines = text.strip().splitlines()
        assert lines[0] == "x,residual"
        assert all(abs(float(line.split(",")[1])) < 1e-8
                   for line in lines[1:])

    def test_orthogonality(self):
        code, text = invoke(["verify", "orthogonality", "--case", "s",
                             "--alpha", "-1", "--beta", "2", "--m", "0",
                             "--lmax", "2"])
        lines = text.strip().splitlines()
        assert lines[0] == "ell,k,inner_s,inner_x,route_gap"
        for line in lines[1:]:
            parts = line.split(",")
            assert abs(float(parts[2])) < 1e-8
            assert abs(float(parts[3])) < 1e-8


class TestReproduceDW:
    def test_sqrt_route_terms(self):
        code, text = invoke(["reproduce-dw", "--theta", "1", "--rho", "0",
                             "--lambda", "-1", "--which", "1"])
        obj = json.loads(text)
        assert obj["energy"] == -1
        assert obj["potential_terms"]["-2"] == pytest.approx(-3 / 16)
        assert obj["potential_terms"]["-1"] == pytest.approx(-0.5)

    def test_expression_flags_reproduce_builtin_route(self):
        base = invoke(["reproduce-dw", "--theta", "1", "--rho", "0.5",
                       "--lambda", "-2", "--which", "1"])[1]
        custom = invoke(["reproduce-dw", "--theta", "1", "--rho", "0.5",
                         "--lambda", "-2", "--which", "1",
                         "--Ik", "x^2", "--sub", "sqrt(2*r)"])[1]
        a, b = json.loads(base), json.loads(custom)
        assert a["energy"] == b["energy"]
        for key, val in a["potential_terms"].items():
            assert b["potential_terms"][key] == pytest.approx(val)

    def test_family_flag_alias(self):
        code, text = invoke(["verify", "spectrum", "--family", "one",
                             "--alpha", "-2", "--beta", "0", "--m", "0",
                             "--grid", "1000", "--emax", "3"])
        assert code == 0
        assert text.splitlines()[0] == "index,E_numeric,E_analytic,abs_err"


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ["families", "--alpha", "-7", "--beta", "1"],
        ["poly", "--case", "s^2", "--alpha", "-7", "--beta", "1",
         "--ell", "3"],
        ["generate", "--c1", "1", "--c2", "0", "--n", "2", "--branch", "-",
         "--which", "cuberoot"],
        ["specfun", "eval", "--case", "one", "--alpha", "-2", "--beta",
         "1", "--ell", "2", "--m", "1", "--grid", "11"],
    ])
    def test_byte_identical_output(self, argv):
        _, first = invoke(argv)
        _, second = invoke(argv)
        assert first == second

    def test_byte_identical_across_processes(self):
        argv = [sys.executable, "-m", "solvable", "generate", "--c1", "1",
                "--c2", "0", "--n", "1", "--branch", "+",
                "--which", "cuberoot"]
        runs = [subprocess.run(argv, capture_output=True, check=True).stdout
                for _ in range(2)]
        assert runs[0] == runs[1]


class TestHelp:
    @pytest.mark.parametrize("argv", [
        ["--help"],
        ["families", "--help"], ["poly", "--help"],
        ["specfun", "eval", "--help"], ["potential", "--help"],
        ["eigenfunction", "--help"], ["generate", "--help"],
        ["solve-params", "--help"], ["verify", "residual", "--help"],
        ["verify", "spectrum", "--help"],
        ["verify", "orthogonality", "--help"],
        ["reproduce-dw", "--help"], ["acceptance", "--help"],
    ])
    def test_every_subcommand_has_help(self, argv, capsys):
        with pytest.raises(SystemExit) as exc:
            run(argv)
        assert exc.value.code == 0
        assert "usage" in capsys.readouterr().out.lower()


class TestAcceptanceCommand:
    def test_subset_runs_and_reports(self):
        code, text = invoke(["acceptance", "--only", "6,8"])
        assert code == 0
        assert "PASS criterion  6" in text
        assert "PASS criterion  8" in text
        assert "2/2 criteria passed" in text

    def test_known_red_criterion_fails_nonzero(self):
        code, text = invoke(["acceptance", "--only", "9"])
        assert code == 1
        assert "FAIL criterion  9" in text
