import io
import json
import math
import subprocess
import sys

import pytest

from gm_envelope.cli import main


def run(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_bounds_json_n2():
    code, out, err = run(["bounds", "--n", "2", "--mu", "1", "--sigma", "0.1", "--format", "json"])
    assert code == 0 and err == ""
    env = json.loads(out)
    assert env["command"] == "bounds" and env["format_version"] == 1
    assert env["inputs_echo"] == {"n": 2, "mu": 1.0, "sigma": 0.1}
    r = env["result"]
    assert r["lower_product"] == pytest.approx(0.99, rel=1e-14)
    assert r["upper_product"] == pytest.approx(0.99, rel=1e-14)
    assert r["gap_bound"] == pytest.approx(0.1)
    assert r["extremal_lower"] is not None


def test_bounds_conditional():
    code, out, _ = run(["bounds", "--n", "3", "--mu", "1", "--sigma", "0.8"])
    r = json.loads(out)["result"]
    assert code == 0
    assert r["lower_product"] == 0
    assert r["lower_log"] == "-inf"
    assert r["lower_attained"] is False
    assert r["regime"] == "Conditional"
    assert r["extremal_lower"] is None


def test_bounds_infeasible_exit_3():
    code, out, err = run(["bounds", "--n", "2", "--mu", "1", "--sigma", "2"])
    assert code == 3 and out == ""
    assert err.count("\n") == 1
    assert json.loads(err)["error"] == "NoPositiveSequence"


@pytest.mark.parametrize(
    "argv",
    [
        ["bounds", "--n", "2", "--mu", "1"],
        ["bounds", "--n", "1", "--mu", "1", "--sigma", "0"],
        ["bounds", "--n", "2", "--mu", "-1", "--sigma", "0"],
        ["bounds", "--n", "x", "--mu", "1", "--sigma", "0"],
        ["nosuch"],
        [],
    ],
)
def test_argument_errors_exit_2(argv):
    code, out, err = run(argv)
    assert code == 2 and out == ""
    assert err.count("\n") == 1
    assert "error" in json.loads(err)


def test_floats_have_17_digits():
    _, out, _ = run(["bounds", "--n", "3", "--mu", "1", "--sigma", "0.2"])
    env = json.loads(out)
    assert env["result"]["upper_product"] == pytest.approx(0.9456568542494923802, rel=1e-15)
    assert '"upper_product": 0.94565685424949' in out
    line = next(l for l in out.splitlines() if '"upper_product"' in l)
    digits = line.split(":")[1].strip().rstrip(",").replace("0.", "", 1)
    assert len(digits) == 17


def test_bounds_text_and_csv():
    code, out, _ = run(["bounds", "--n", "3", "--mu", "1", "--sigma", "0.2", "--format", "text"])
    assert code == 0 and "ForcedPositive" in out
    code, out, _ = run(["bounds", "--n", "3", "--mu", "1", "--sigma", "0.2", "--format", "csv"])
    rows = dict(line.split(",", 1) for line in out.strip().splitlines()[1:])
    assert rows["regime"] == "ForcedPositive"
    assert float(rows["extremal_upper.outlier_value"]) == pytest.approx(1 + 0.2 * math.sqrt(2))


def test_ladder_table():
    code, out, _ = run(["ladder", "--n", "5", "--mu", "1", "--sigma", "0.4"])
    r = json.loads(out)["result"]
    assert code == 0 and r["ordered"] is True
    values = [row["critical_value"] for row in r["rows"]]
    assert len(values) == 4 and all(a > b for a, b in zip(values, values[1:]))
    code, out, _ = run(["ladder", "--n", "5", "--mu", "1", "--sigma", "0.4", "--format", "csv"])
    assert out.splitlines()[0] == "i,critical_value,sign,log_abs,normalized,positive"
    code, _, err = run(["ladder", "--n", "5", "--mu", "1", "--sigma", "0"])
    assert code == 3 and json.loads(err)["error"] == "DegenerateLadder"


def test_curves_csv():
    code, out, _ = run(["curves", "--n", "4", "--points", "8"])
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "t,P1,P2,P3" and len(lines) == 10
    assert lines[1] == "0,1,1,1"


def test_verify_report():
    code, out, _ = run(["verify", "--n", "4", "--mu", "1", "--sigma", "0.4", "--count", "5000", "--seed", "3"])
    r = json.loads(out)["result"]
    assert code == 0
    assert r["containment_violations"] == 0 and r["all_positive_count"] == 5000
    assert r["forced_positive_ok"] is True and r["seed"] == 3


def test_compare_stdin(monkeypatch):
    code, out, _ = run(["compare"], stdin="0.5\n1.5\n1.0\n", monkeypatch=monkeypatch)
    r = json.loads(out)["result"]
    assert code == 0
    assert r["gap_actual"] == pytest.approx(0.091439703583930170554, rel=1e-13)
    assert r["product"]["in_sharp"] is True


def test_compare_errors(monkeypatch, tmp_path):
    code, _, err = run(["compare"], stdin="1\n-2\n", monkeypatch=monkeypatch)
    assert code == 3 and json.loads(err)["error"] == "NonPositiveInput"
    code, _, err = run(["compare"], stdin="1\nabc\n", monkeypatch=monkeypatch)
    assert code == 2 and json.loads(err)["error"] == "ParseError"
    code, _, err = run(["compare", str(tmp_path / "missing.txt")])
    assert code == 4 and json.loads(err)["error"] == "IOError"


def test_finance_envelope_csv_file(tmp_path):
    f = tmp_path / "r.csv"
    f.write_text("date,ret\n2020-01-02,0.01\n2020-01-03,-0.02\n2020-01-06,0.015\n")
    code, out, _ = run(["finance", "envelope", str(f), "--period", "daily"])
    r = json.loads(out)["result"]
    assert code == 0
    assert list(r) == ["n", "mu", "sigma", "lower_x", "upper_x", "lower_log", "upper_log", "actual_x", "regime"]
    assert r["lower_x"] <= r["actual_x"] <= r["upper_x"]
    assert r["actual_x"] == pytest.approx(1.01 * 0.98 * 1.015, rel=1e-14)


def test_finance_envelope_params_and_errors(tmp_path):
    code, out, _ = run(["finance", "envelope", "--n", "252", "--mu-n", "0.0003", "--sigma-n", "0.0098"])
    assert code == 0 and json.loads(out)["result"]["lower_x"] > 0
    code, _, err = run(["finance", "envelope", "--n", "3", "--mu-n", "0", "--sigma-n", "2"])
    assert code == 3
    code, _, err = run(["finance", "envelope"])
    assert code == 2
    f = tmp_path / "bad.csv"
    f.write_text("0.5\n-1.5\n")
    code, _, err = run(["finance", "envelope", str(f)])
    payload = json.loads(err)
    assert code == 3 and payload["error"] == "ImpossibleReturn" and "line 2" in payload["message"]


def test_finance_robust_sweep():
    code, out, _ = run(["finance", "robust", "--growth-mean", "1.0003", "--sigma0", "0.0098", "--epsilon", "1e-4"])
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "n,log_value,value"
    assert len(lines) == 12
    assert float(lines[-1].split(",")[2]) < 1e-3 * 1.5
    code, out2, _ = run(["finance", "robust", "--mean-return", "0.0003", "--sigma0", "0.0098", "--epsilon", "1e-4"])
    assert out2.splitlines()[1:] == [l for l in out.splitlines()[1:]] or code == 0
    code, _, err = run(["finance", "robust", "--sigma0", "0.0098", "--epsilon", "1e-4"])
    assert code == 2
    code, _, err = run(["finance", "robust", "--growth-mean", "1", "--sigma0", "0.01", "--epsilon", "0.02"])
    assert code == 3 and json.loads(err)["error"] == "InvalidRobustParams"


def _verify_cmd():
    return [sys.executable, "-m", "gm_envelope", "verify", "--n", "10", "--mu", "1", "--sigma", "0.2",
            "--count", "20000", "--seed", "42"]


def test_verify_byte_identical_across_processes():
    a = subprocess.run(_verify_cmd(), capture_output=True, check=True)
    b = subprocess.run(_verify_cmd(), capture_output=True, check=True, env={**__import__("os").environ, "GM_ENVELOPE_THREADS": "3"})
    assert a.stdout == b.stdout
    assert a.stdout
