import csv
import io
import json
import math
import subprocess
import sys

import pytest

from lommel_lab import cli
from lommel_lab import lommel as lm

import oracles


def run(capsys, *args):
    status = cli.main(list(args))
    out = capsys.readouterr().out
    return status, out


def strict_json(text):
    def reject(token):
        raise ValueError(f"non-strict JSON constant {token}")
    return json.loads(text, parse_constant=reject)


# --- eval --------------------------------------------------------------------

def test_eval_series_matches_oracle(capsys):
    status, out = run(capsys, "--command", "eval", "--mu", "0", "--nu", "0.5", "--z", "1",
                      "--route", "series")
    assert status == 0
    rec = strict_json(out)
    ref = float(oracles.lommel_product_series(0, 0.5, 1))
    assert rec["value"] == pytest.approx(ref, rel=1e-14)
    assert rec["max_route_discrepancy"] < 1e-8
    assert set(rec["also"]) == {"series", "sine", "cosine"}
    assert set(rec) == {"mu", "nu", "z", "route", "value", "also", "max_route_discrepancy"}


def test_eval_at_zero(capsys):
    status, out = run(capsys, "--command", "eval", "--mu", "0", "--nu", "0.5", "--z", "0")
    assert status == 0 and strict_json(out)["value"] == 0.0


def test_eval_pole_exit_1(capsys):
    status, out = run(capsys, "--command", "eval", "--mu", "0", "--nu", "1", "--z", "1")
    assert status == 1
    assert strict_json(out)["error"] == "ParameterPole"


def test_eval_domain_exit_2(capsys):
    status, _ = run(capsys, "--command", "eval", "--mu", "0", "--nu", "0.5", "--z", "-1")
    assert status == 2
    status, _ = run(capsys, "--command", "eval", "--mu", "-1", "--nu", "0.5", "--z", "1",
                    "--route", "sine")
    assert status == 2


def test_eval_includes_asymptotic_when_valid(capsys):
    status, out = run(capsys, "--command", "eval", "--mu", "0", "--nu", "0.5", "--z", "60",
                      "--route", "cosine")
    rec = strict_json(out)
    assert status == 0 and "asymptotic" in rec["also"] and rec["route"] == "cosine"


def test_eval_reports_convergence_failures_as_exit_3(capsys, monkeypatch):
    from lommel_lab.errors import ToleranceNotReached

    def boom(p, z, route):
        raise ToleranceNotReached("forced", None)

    monkeypatch.setattr(lm, "evaluate", boom)
    status, out = run(capsys, "--command", "eval", "--mu", "0", "--nu", "0.5", "--z", "1")
    assert status == 3 and strict_json(out)["exit_code"] == 3


# --- kernel / classify ------------------------------------------------------------

def test_kernel_command(capsys):
    status, out = run(capsys, "--command", "kernel", "--mu", "1", "--nu", "0.5")
    rec = strict_json(out)
    assert status == 0 and rec["profile"] == "decreasingtozero"
    assert all(s["df"] < 0 for s in rec["samples"])


def test_kernel_command_csv(capsys):
    status, out = run(capsys, "--command", "kernel", "--mu", "0", "--nu", "0.5", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert status == 0 and rows[0] == ["t", "f", "df"] and len(rows) == 20
    assert float(rows[10][1]) == pytest.approx(math.sqrt(2))


def test_classify_command(capsys):
    status, out = run(capsys, "--command", "classify", "--mu", "-1", "--nu", "0.5")
    rec = strict_json(out)
    assert status == 0
    assert rec["zero_region"] == "realzeroscosine" and rec["kernel_profile"] is None
    assert (rec["b1"], rec["b2"], rec["lp_plus"]) == (0.75, 1.25, "inregion")


# --- zeros ---------------------------------------------------------------------

def test_zeros_table(capsys):
    status, out = run(capsys, "--command", "zeros", "--mu", "0", "--nu", "0.5")
    rec = strict_json(out)
    assert status == 0 and len(rec["zeros"]) == 10
    roots = [r["root"] for r in rec["zeros"]]
    assert all(a < b for a, b in zip(roots, roots[1:]))
    assert all(r["bracket_lo"] < r["root"] < r["bracket_hi"] for r in rec["zeros"])
    assert all(r["asymptotic_error"] == abs(r["root"] - r["asymptotic_estimate"]) for r in rec["zeros"])


def test_zeros_csv_header_and_first_bracket(capsys):
    status, out = run(capsys, "--command", "zeros", "--mu", "-1", "--nu", "0.5", "--kmax", "3",
                      "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert status == 0
    assert rows[0] == ["k", "bracket_lo", "bracket_hi", "root", "residual",
                       "asymptotic_estimate", "asymptotic_error"]
    assert float(rows[1][1]) == math.pi / 2 and float(rows[1][2]) == 3 * math.pi / 2


def test_zeros_exit_4(capsys):
    status, out = run(capsys, "--command", "zeros", "--mu", "2", "--nu", "1")
    assert status == 4 and strict_json(out)["error"] == "NotInBracketedRegion"


# --- region-map ---------------------------------------------------------------------

def read_map(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def cell(rows, x, y):
    for r in rows[1:]:
        if float(r[0]) == x and float(r[1]) == y:
            return r[2]
    raise KeyError((x, y))


def test_zero_regions_map(tmp_path, capsys):
    out = tmp_path / "zr.csv"
    status, _ = run(capsys, "--command", "region-map", "--map", "zero-regions",
                    "--grid=-1.5:1.5:0:2.5:0.05", "--out", str(out))
    rows = read_map(out)
    assert status == 0 and rows[0] == ["mu", "nu", "class"]
    assert len(rows) == 1 + 61 * 51
    assert cell(rows, 0.0, 0.5) == "realzerossine"
    # row-major, mu outer
    assert [float(r[0]) for r in rows[1:52]] == [-1.5] * 51


def test_monotonicity_map(tmp_path, capsys):
    out = tmp_path / "m.csv"
    status, _ = run(capsys, "--command", "region-map", "--map", "monotonicity",
                    "--grid=-1:2:0:2:0.25", "--out", str(out))
    rows = read_map(out)
    assert status == 0 and cell(rows, 1.0, 0.5) == "decreasingtozero"
    assert cell(rows, -1.0, 0.5) == "outofdomain"


def test_lp_plus_map(capsys):
    status, out = run(capsys, "--command", "region-map", "--map", "lp-plus", "--grid", "0:3:0:3")
    rows = list(csv.reader(io.StringIO(out)))
    assert status == 0 and rows[0] == ["b1", "b2", "class"]
    assert len(rows) == 1 + 151 * 151  # default step 0.02
    assert cell(rows, 1.26, 1.74) == "inregion"
    status, out = run(capsys, "--command", "region-map", "--map", "lp-plus", "--grid", "0:3:0:3:0.05")
    assert cell(list(csv.reader(io.StringIO(out))), 0.75, 1.25) == "inregion"


def test_region_map_json(capsys):
    status, out = run(capsys, "--command", "region-map", "--grid", "0:0.1:0.4:0.5:0.05",
                      "--format", "json")
    rec = strict_json(out)
    assert status == 0 and rec["columns"] == ["mu", "nu", "class"] and len(rec["cells"]) == 9


@pytest.mark.parametrize("grid", ["0:1:0", "0:1:0:x", "0:1:0:1:0", "0:1:0:1:-0.1", "1:0:0:1", "0:1:0:nan"])
def test_region_map_malformed_grid(capsys, grid):
    status, out = run(capsys, "--command", "region-map", "--grid", grid)
    assert status == 2 and strict_json(out)["exit_code"] == 2


def test_region_map_needs_grid(capsys):
    status, _ = run(capsys, "--command", "region-map")
    assert status == 2


# --- verify ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def default_report():
    return cli.execute(cli.RunConfig(command="verify"))


def test_verify_default_run_passes(default_report):
    status, text = default_report
    lines = text.strip().splitlines()
    assert status == 0
    assert len(lines) - 1 >= 10
    assert all(line.startswith("PASS") for line in lines[:-1])


def test_verify_is_deterministic(capsys):
    args = ["--command", "verify", "--seed", "7", "--suite", "hyp2f1_zero_count_table",
            "--suite", "hyp2f1_half_closed_form", "--suite", "kernel_monotonicity"]
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second and first[0] == 0


def test_verify_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("LOMMEL_LAB_SEED", "11")
    _, out = run(capsys, "--command", "verify", "--suite", "gamma_recurrence")
    assert "(seed 11)" in out
    _, out = run(capsys, "--command", "verify", "--suite", "gamma_recurrence", "--seed", "3")
    assert "(seed 3)" in out


def test_verify_impossible_tolerance_exit_5(capsys):
    status, out = run(capsys, "--command", "verify", "--suite", "gamma_recurrence",
                      "--suite", "a_product_identity", "--tol", "1e-30", "--format", "json")
    rec = strict_json(out)
    assert status == 5 and rec["all_passed"] is False


def test_verify_unknown_suite(capsys):
    status, _ = run(capsys, "--command", "verify", "--suite", "nope")
    assert status == 2


def test_verify_writes_out_file(tmp_path, capsys):
    path = tmp_path / "report.csv"
    status, _ = run(capsys, "--command", "verify", "--suite", "lp_plus_symmetry",
                    "--format", "csv", "--out", str(path))
    rows = read_map(path)
    assert status == 0 and rows[0] == ["suite", "status", "samples", "worst", "tol"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lommel_lab", "--command", "classify",
                           "--mu", "2", "--nu", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert strict_json(proc.stdout)["zero_region"] == "positivenorealzeros"


def test_missing_parameters(capsys):
    status, out = run(capsys, "--command", "eval", "--mu", "0")
    assert status == 2
