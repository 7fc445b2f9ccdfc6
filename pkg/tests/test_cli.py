import csv
import io
import json
import math
import os
import subprocess
import sys

import pytest

from lommel_fresnel.cli import TARGETS, parse_grid, run, UsageError


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_eval_first_power_at_pi():
    code, out, _ = cli("eval", "--target", "moment.closed", "--n", "1", "--lambda", "3.14159265358979",
                       "--kind", "cos", "--format", "json")
    assert code == 0
    row = json.loads(out)
    assert abs(row["value"]) < 1e-12
    assert list(row)[:6] == ["target", "params", "value", "abs_error_estimate", "method", "truncation_used"]


def test_compare_acceptance_grid_all_pass():
    code, out, _ = cli("compare", "--target", "moment.closed", "--n", "0..13",
                       "--lambda", "0.5,1,2,5,10,20,50", "--kind", "both", "--tol", "1e-9", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 14 * 7 * 2
    assert {r["status"] for r in rows} == {"PASS"}


def test_csv_layout():
    code, out, _ = cli("table", "--target", "rational.exact", "--a", "0.5", "--lambda", "1,2", "--format", "csv")
    assert code == 0
    lines = out.split("\n")
    assert lines[0] == "target,params,value,abs_error_estimate,method,truncation_used,notes"
    assert "\r" not in out and out.endswith("\n")
    assert lines[1].startswith("rational.exact,a=0.5;lambda=1;kind=cos,")


def test_json_lines_round_trip_17_digits():
    code, out, _ = cli("table", "--target", "special.fresnel_C", "--lambda", "lin:0.5:2:4", "--format", "json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 4
    from lommel_fresnel.special_fn import fresnel_C
    for row in rows:
        assert row["value"] == fresnel_C(row["params"]["lambda"])


def test_plain_uses_twelve_digits():
    _, out, _ = cli("eval", "--target", "moment.closed", "--n", "0", "--lambda", "1")
    assert "value=0.9045242379 " in out  # %.12g drops trailing zeros


def test_identical_invocations_identical_bytes():
    argv = ("table", "--target", "asym.moment", "--n", "0,2", "--lambda", "log:20:80:3", "--N", "2",
            "--kind", "both", "--format", "csv")
    assert cli(*argv) == cli(*argv)
    argv = ("eval", "--target", "rational.I22", "--a", "0.3", "--lambda", "7", "--format", "json")
    assert cli(*argv) == cli(*argv)


def test_asym_rows_report_bound():
    code, out, _ = cli("asym", "--target", "asym.moment", "--n", "0,2,4,6", "--lambda", "20,40,80",
                       "--N", "1:3:3", "--kind", "both", "--format", "json")
    assert code == 0
    for row in map(json.loads, out.splitlines()):
        assert row["true_error"] <= 2 * row["abs_error_estimate"]


def test_compare_fail_gives_exit_one():
    # asking for more accuracy than the half-line oracle can certify
    code, out, _ = cli("compare", "--target", "rational.Ihalf1", "--a", "0.5", "--lambda", "2", "--tol", "1e-18")
    assert code == 1
    assert "FAIL" in out


@pytest.mark.parametrize("argv", [
    ("eval",),
    ("eval", "--target", "no.such"),
    ("frobnicate", "--target", "moment.closed"),
    ("eval", "--target", "moment.closed", "--n", "1", "--lambda", "1", "--a", "0.3"),
    ("eval", "--target", "moment.closed", "--n", "0..3", "--lambda", "1"),
    ("table", "--target", "moment.closed", "--n", "1", "--lambda", "1", "--tol", "1e-3"),
    ("eval", "--target", "moment.closed", "--n", "1", "--lambda", "1", "--kind", "tan"),
    ("eval", "--target", "moment.closed", "--n", "-1", "--lambda", "1"),
    ("eval", "--target", "lommel.value", "--mu", "-1/2", "--lambda", "1"),
    ("eval", "--target", "moment.closed", "--n", "1", "--lambda", "1", "--coeff-tables", "x.txt"),
    ("paper-check", "--n", "3"),
])
def test_usage_and_precondition_errors_exit_two(argv):
    code, out, err = cli(*argv)
    assert code == 2
    assert out == ""
    assert err.startswith("lommel-fresnel:")


def test_grid_syntax():
    assert parse_grid("1,2,5", "lambda") == [1.0, 2.0, 5.0]
    assert parse_grid("0..3", "n") == [0, 1, 2, 3]
    assert parse_grid("log:1:100:3", "lambda") == pytest.approx([1.0, 10.0, 100.0])
    assert parse_grid("0:1:5", "a") == pytest.approx([0, 0.25, 0.5, 0.75, 1])
    from fractions import Fraction
    assert parse_grid("-1/2,3/2", "mu") == [Fraction(-1, 2), Fraction(3, 2)]
    for bad in ("log:0:1:3", "1..", "lin:1:2", "abc"):
        with pytest.raises(UsageError):
            parse_grid(bad, "lambda")


def test_out_file(tmp_path):
    path = tmp_path / "rows.csv"
    code, out, _ = cli("table", "--target", "moment.series", "--n", "2", "--lambda", "0.5,1",
                       "--format", "csv", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_bytes().count(b"\n") == 3


def test_coefficient_tables_flag(tmp_path):
    from lommel_fresnel.rational_integrals import CoefficientTables, bundled_tables
    good = tmp_path / "good.txt"
    bundled_tables().save(good)
    code, out, _ = cli("compare", "--target", "rational.anger", "--nu", "2,3", "--a", "0.5",
                       "--lambda", "2", "--coeff-tables", str(good))
    assert code == 0 and out.count("PASS") == 2
    zero = tmp_path / "zero.txt"
    CoefficientTables.zeros([2, 3]).save(zero)
    code, out, _ = cli("compare", "--target", "rational.anger", "--nu", "2", "--a", "0.5",
                       "--lambda", "2", "--coeff-tables", str(zero))
    assert code == 1
    code, _, _ = cli("eval", "--target", "rational.anger", "--nu", "2", "--a", "0.5",
                     "--lambda", "2", "--coeff-tables", str(tmp_path / "missing.txt"))
    assert code == 2


def test_target_listing_covers_every_target():
    code, out, _ = cli("eval", "--target", "list")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == list(TARGETS)


def test_every_target_evaluates_somewhere():
    sample = {"n": "2", "m": "1", "mu": "3/2", "nu": "1", "eta": "1", "a": "0.5", "lambda": "2",
              "kind": "cos", "variant": "s", "N": "2", "K": "1"}
    overrides = {"special.aux_f_asym": {"lambda": "30"}, "special.aux_g_asym": {"lambda": "30"},
                 "asym.moment": {"lambda": "30"}, "asym.rational": {"lambda": "30"},
                 "asym.rational_lowest": {"lambda": "30"}, "asym.infinite_lowest": {"lambda": "30"},
                 "asym.hankel": {"lambda": "100"}, "asym.I12": {"lambda": "30", "a": "0.2"},
                 "rational.anger": {"nu": "2"}, "lommel.derivative_residual": {"mu": "1"},
                 "moment.series": {"lambda": "1"}, "moment.lommel_form": {"n": "3"},
                 "special.gamma_half": {"mu": "5/2"}}
    for name, target in TARGETS.items():
        values = dict(sample, **overrides.get(name, {}))
        argv = ["eval", "--target", name]
        for p in target.params:
            argv += [f"--{p}", values[p]]
        code, out, err = cli(*(argv + ["--format", "json"]))
        assert code == 0, (name, err)
        assert math.isfinite(json.loads(out)["value"])


def test_paper_check_report():
    code, out, _ = cli("paper-check")
    assert code == 0
    warns = [line for line in out.splitlines() if line.startswith("WARN")]
    assert len(warns) == 3
    text = " ".join(warns).lower()
    assert "reduction" in text and "bracket" in text
    assert out.splitlines()[-1].endswith("PASS")


def test_paper_check_json():
    code, out, _ = cli("paper-check", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "PASS"
    assert [c["id"] for c in doc["criteria"]] == list(range(1, 13))


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "lommel_fresnel", "eval", "--target", "special.greubel_eta",
                           "--n", "9"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "value=23" in proc.stdout


def test_precision_environment_is_honoured():
    env_run = subprocess.run(
        [sys.executable, "-m", "lommel_fresnel", "eval", "--target", "moment.closed", "--n", "12",
         "--lambda", "3", "--format", "json"],
        capture_output=True, text=True, check=False, env={**os.environ, "LOMMEL_PRECISION": "extended"})
    assert env_run.returncode == 0
    assert "extended" in json.loads(env_run.stdout)["notes"]
