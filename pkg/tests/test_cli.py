import csv
import io
import json
import math
import subprocess
import sys

import pytest

from conjtrig import __version__
from conjtrig.cli import dumps, fmt_float, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


class TestOptimal:
    def test_n2(self):
        code, doc = run_json("optimal", "--n", "2", "--format", "json")
        assert code == 0
        r = doc["results"]
        assert r["a"] == pytest.approx([2 / 3, 1 / 3], abs=1e-15)
        assert r["theorem_value"] == pytest.approx(-1 / 3, abs=1e-15)
        assert r["phi_max"] == pytest.approx(4, abs=1e-12)
        assert doc["command"] == "optimal" and doc["version"] == __version__
        assert doc["inputs"] == {"format": "json", "n": 2}
        assert "normalization" in doc["tolerances"]

    def test_n1(self):
        code, doc = run_json("optimal", "--n", "1")
        assert code == 0
        assert doc["results"]["a"] == [1.0]
        assert doc["results"]["theorem_value"] == -1.0
        assert doc["results"]["phi_max"] == pytest.approx(2, abs=1e-12)

    def test_invalid_n(self):
        assert run("optimal", "--n", "0")[0] == 2

    def test_csv(self):
        code, text = run("optimal", "--n", "3", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(text)))
        assert code == 0 and len(rows) == 3
        assert math.fsum(float(r["a"]) for r in rows) == pytest.approx(1, abs=1e-14)


class TestRho:
    def test_sin3t(self):
        code, doc = run_json("rho", "--coeffs", "0,0,1")
        assert code == 0
        r = doc["results"]
        assert r["rho"] == -1.0
        ts = [z["t"] for z in r["zeros"]]
        assert ts == pytest.approx([0, math.pi / 3, 2 * math.pi / 3, math.pi], abs=1e-14)

    def test_single(self):
        code, doc = run_json("rho", "--coeffs", "1", "--which", "rho")
        assert code == 0 and doc["results"]["rho"] == -1.0
        assert "rho1" not in doc["results"]

    def test_normalization_failure(self):
        assert run("rho", "--coeffs", "0.5,0.4")[0] == 2

    def test_garbage(self):
        assert run("rho", "--coeffs", "a,b")[0] == 2
        assert run("rho")[0] == 2

    def test_degrees_flag_adds_display_only(self):
        _, plain = run_json("rho", "--coeffs", "0,0,1")
        _, deg = run_json("rho", "--coeffs", "0,0,1", "--degrees")
        z = deg["results"]["zeros"][1]
        assert z["t_degrees"] == pytest.approx(60, abs=1e-12)
        assert z["t"] == plain["results"]["zeros"][1]["t"]

    def test_coeffs_file(self, tmp_path):
        f = tmp_path / "a.txt"
        f.write_text("# sin 3t\n0\n0  # middle\n\n1\n")
        code, doc = run_json("rho", "--coeffs-file", str(f))
        assert code == 0 and doc["results"]["rho"] == -1.0

    def test_missing_file(self, tmp_path):
        assert run("rho", "--coeffs-file", str(tmp_path / "none.txt"))[0] == 2


class TestMargins:
    def test_both_methods(self):
        code, doc = run_json("margins", "--coeffs", "0.6666666667,0.3333333333", "--method", "both")
        assert code == 0
        r = doc["results"]
        assert r["geometric"]["k1"] == pytest.approx(1, abs=1e-8)
        assert r["geometric"]["k2"] == pytest.approx(3, abs=1e-8)
        assert r["discrepancy"] < 1e-6

    def test_single_term(self):
        _, doc = run_json("margins", "--coeffs", "1")
        g = doc["results"]["geometric"]
        assert (g["k1"], g["k2"]) == pytest.approx((1, 1), abs=1e-12)

    def test_bisection_matches_geometric(self):
        _, geo = run_json("margins", "--coeffs", "0,1")
        _, bis = run_json("margins", "--coeffs", "0,1", "--method", "bisection", "--tol", "1e-9")
        g, b = geo["results"]["geometric"], bis["results"]["bisection"]
        assert abs(g["k1"] - b["k1"]) <= 1e-6 and abs(g["k2"] - b["k2"]) <= 1e-6

    def test_bad_tol(self):
        assert run("margins", "--coeffs", "1", "--method", "bisection", "--tol", "0.5")[0] == 2


class TestVerify:
    def test_n2(self):
        code, doc = run_json("verify", "--n", "2", "--grid", "2000", "--rounds", "3", "--seed", "7")
        assert code == 0
        assert 0 <= doc["results"]["gap"] + 1e-6 and doc["results"]["gap"] < 1e-4

    def test_n1(self):
        code, doc = run_json("verify", "--n", "1")
        assert code == 0 and doc["results"]["gap"] == 0.0

    def test_cost_guard(self):
        assert run("verify", "--n", "6")[0] == 2

    def test_slack_exceeded_is_numerical(self):
        # a three-point grid with no refinement cannot get close
        code, doc = run_json("verify", "--n", "2", "--grid", "3", "--rounds", "0", "--slack", "1e-9")
        assert code == 4 and doc["results"]["gap"] > 1e-9

    def test_consistency_exit(self, monkeypatch):
        from conjtrig import cli
        from conjtrig.extremal import SearchReport
        from conjtrig.trigpoly import CoefficientVector

        def fake(n, *args, **kwargs):
            return SearchReport(n, 0.0, CoefficientVector([0.5, 0.5]), -1 / 3, 1, 0)

        monkeypatch.setattr(cli, "brute_force_sup", fake)
        assert run("verify", "--n", "2")[0] == 3

    def test_root_failure_is_numerical(self, monkeypatch):
        from conjtrig import cli
        from conjtrig.rootfind import RootFindError

        def boom(*args, **kwargs):
            raise RootFindError("no convergence")

        monkeypatch.setattr(cli, "zero_set", boom)
        assert run("rho", "--coeffs", "1")[0] == 4


class TestSimulate:
    def test_stabilized(self):
        code, doc = run_json("simulate", "--map", "logistic", "--r", "3.8", "--n", "2", "--steps", "500")
        assert code == 0
        r = doc["results"]
        assert r["converged"] is True and r["final_error"] < 1e-9
        assert r["multiplier_interval"] == pytest.approx([-3, 1], abs=1e-9)

    def test_plain_fails(self):
        code, doc = run_json("simulate", "--map", "logistic", "--r", "3.8", "--n", "1", "--steps", "500")
        assert code == 0 and doc["results"]["converged"] is False

    def test_plain_stable(self):
        code, doc = run_json("simulate", "--map", "logistic", "--r", "2.5", "--n", "1", "--steps", "200")
        assert code == 0 and doc["results"]["converged"] is True

    def test_divergence_reported(self):
        code, doc = run_json("simulate", "--r", "3.8", "--n", "1", "--x0", "5", "--steps", "50")
        assert code == 0
        assert doc["results"]["converged"] is False
        assert doc["results"]["diverged_at"] >= 1
        assert doc["results"]["final_error"] == math.inf

    def test_emit_trace(self, tmp_path):
        path = tmp_path / "trace.csv"
        code, _ = run("simulate", "--n", "2", "--steps", "100", "--emit-trace", str(path))
        rows = list(csv.DictReader(path.open()))
        assert code == 0 and len(rows) == 101
        assert float(rows[-1]["error"]) < 1e-3

    def test_custom_polynomial(self):
        code, doc = run_json("simulate", "--map", "poly", "--poly=-3.8,3.8,0",
                             "--fixed-point", str(1 - 1 / 3.8), "--n", "2")
        assert code == 0 and doc["results"]["converged"] is True

    @pytest.mark.parametrize("argv", [
        ("simulate", "--map", "poly"),
        ("simulate", "--r", "0.5"),
        ("simulate", "--n", "2", "--x0", "0.1,0.2,0.3"),
        ("simulate", "--n", "3", "--steps", "2"),
    ])
    def test_input_errors(self, argv):
        assert run(*argv)[0] == 2


def test_table():
    code, doc = run_json("table", "--nmax", "20")
    rows = doc["results"]["rows"]
    assert code == 0 and [r["n"] for r in rows] == list(range(1, 21))
    for r in rows:
        assert r["rho1"] == pytest.approx(r["theorem_value"], abs=1e-9)
        assert r["phi"] == pytest.approx(r["phi_max"], abs=1e-6)
        assert r["sum_abs"] == pytest.approx(1, abs=1e-10)
    code, text = run("table", "--nmax", "5", "--format", "csv")
    assert code == 0 and len(text.strip().splitlines()) == 6


@pytest.mark.parametrize("argv", [
    ("optimal", "--n", "7"),
    ("rho", "--coeffs", "0.2,0.3,0.5"),
    ("margins", "--coeffs", "0.2,0.3,0.5", "--method", "both"),
    ("verify", "--n", "2", "--grid", "200"),
    ("simulate", "--n", "3", "--steps", "300"),
    ("table", "--nmax", "6"),
])
def test_byte_identical_reruns(argv):
    assert run(*argv) == run(*argv)


@pytest.mark.parametrize("argv", [
    ("optimal", "--n", "9"),
    ("rho", "--coeffs", "0.2,0.3,0.5"),
    ("table", "--nmax", "8"),
])
def test_round_trip(argv):
    _, text = run(*argv)
    doc = json.loads(text)
    assert dumps(doc) + "\n" == text


def test_float_format_is_lossless():
    for x in (1 / 3, math.pi, -1e-300, 2.0 ** 60, 5e-324, 0.1):
        assert float(fmt_float(x)) == x
    assert fmt_float(1.0) == "1.0"
    assert fmt_float(-3.0) == "-3.0"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "conjtrig", "optimal", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["phi_max"] == pytest.approx(4)
