import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from weightlab import cli
from weightlab.experiments import (EXIT_EXACT, EXIT_OK, EXIT_TOLERANCE, ExperimentReport, fit_slope,
                                   run_weighted_sharpness)
from weightlab.geometry import GridCircle
from weightlab.weights import Weight, write_weight_csv


def test_fit_slope_exact_power_law():
    x = np.array([1.0, 2.0, 4.0, 8.0])
    f = fit_slope(x, 3.0 * x**-0.5)
    assert np.isclose(f.slope, -0.5) and f.residual < 1e-12 and f.n == 4


def test_exit_codes_distinguish_failure_kinds():
    rep = ExperimentReport("x", {})
    rep.add("ok", 1.0, "", True)
    assert rep.exit_code() == EXIT_OK
    rep.add("tol", 1.0, "", False)
    assert rep.exit_code() == EXIT_TOLERANCE
    rep.add("exact", 1.0, "", False, exact=True)
    assert rep.exit_code() == EXIT_EXACT
    assert rep.to_dict()["pass"] is False


def test_slope_modes():
    rep = ExperimentReport("x", {})
    x = [1.0, 2.0, 4.0, 8.0]
    rep.add_slope("band", x, x, 1.0, 0.1)
    rep.add_slope("min", x, x, 1.2, 0.1, mode="min")
    rep.add_slope("max", x, x, 0.5, 0.1, mode="max")
    assert [c.passed for c in rep.checks] == [True, False, False]


def test_config_file_sets_defaults_and_flags_win(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("# oracle run\ngrid-n = 64\ndepth=8\nformat = csv\n")
    args = cli.parse_args(["oracle-diff", "--config", str(conf)])
    assert args.grid_n == 64 and args.depth == 8 and args.format == "csv"
    args = cli.parse_args(["oracle-diff", "--config", str(conf), "--grid-n", "128"])
    assert args.grid_n == 128
    conf.write_text("bogus = 1\n")
    with pytest.raises(SystemExit):
        cli.parse_args(["oracle-diff", "--config", str(conf)])


def test_oracle_diff_json_and_csv(tmp_path):
    out = tmp_path / "o.json"
    assert cli.main(["oracle-diff", "--grid-n", "64", "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert set(d) >= {"meta", "rows", "fit", "pass"} and d["pass"] is True
    assert d["meta"]["seed"] == 0
    out = tmp_path / "o.csv"
    assert cli.main(["oracle-diff", "--grid-n", "64", "--format", "csv", "--out", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 10 and set(rows[0]) == {"input", "cauchy_rel", "bergman_rel"}


def test_ap_const_from_weight_csv(tmp_path):
    g = GridCircle(256)
    write_weight_csv(Weight.constant(g, 3.0), tmp_path / "w.csv")
    out = tmp_path / "a.json"
    assert cli.main(["ap-const", "--weight-csv", str(tmp_path / "w.csv"), "--out", str(out)]) == 0
    assert np.isclose(json.loads(out.read_text())["rows"][0]["value"], 1.0)


def test_weighted_sharpness_row_is_deterministic():
    kw = dict(p=2.0, delta_list=(0.2, 0.1), N=1024, depth=10, seed=3)
    a, b = run_weighted_sharpness(**kw), run_weighted_sharpness(**kw)
    assert a.rows == b.rows


def test_module_entry_point(tmp_path):
    out = tmp_path / "o.json"
    r = subprocess.run([sys.executable, "-m", "weightlab", "oracle-diff", "--grid-n", "64",
                        "--out", str(out)], capture_output=True, text=True)
    assert r.returncode == 0 and "PASS cauchy_rel_max" in r.stderr
