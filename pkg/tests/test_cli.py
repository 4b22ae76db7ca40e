import csv
import io
import json
import os
import subprocess
import sys

import pytest

from delegation import cli
from delegation.figures import COLUMNS

SINGLE = """
[population]
sigma_f = 1
sigma_s = 1
[preferences]
alpha = 0
c_rev = 0.1
[policy]
tau1 = 1
[mc]
n_samples = 50000
"""

TWO = """
[population.a]
sigma_f = 1
sigma_s = 1
[population.b]
sigma_f = 1
sigma_s = 1
[mix]
lambda_a = 0.65
[preferences]
alpha = 0.3
c_rev = 0.1
[sweep]
tau1 = 0:2:0.5
[policy]
tau1 = 0.5
[mc]
n_trials = 500
"""


@pytest.fixture
def config(tmp_path):
    def write(text, name="run.ini"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_json(capsys, config):
    code, out, _ = run(capsys, "solve", "--config", config(SINGLE))
    assert code == 0
    d = json.loads(out)
    assert d["viable"] is True and d["tau_star"] > 0
    assert d["v_star"] == pytest.approx(d["tau_star"], rel=1e-12)
    assert "diagnostics" not in d
    code, out, _ = run(capsys, "solve", "--config", config(SINGLE), "-v")
    assert json.loads(out)["diagnostics"]["residual"] == pytest.approx(0, abs=1e-12)


def test_solve_two_groups(capsys, config):
    text = TWO.replace("[population.b]\nsigma_f = 1\nsigma_s = 1",
                       "[population.b]\nsigma_f = 1\nsigma_s = 1\nbeta = 1")
    code, out, _ = run(capsys, "solve", "--config", config(text))
    a, b = json.loads(out)["groups"]
    assert b["tau_star"] == pytest.approx(a["tau_star"] - 0.7) and b["v_star"] == a["v_star"]


def test_fairness_identical_groups_csv(capsys, config):
    code, out, _ = run(capsys, "fairness", "--config", config(TWO))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["tau1"]) for r in rows] == [0, 0.5, 1, 1.5, 2]
    assert all(float(r["e_d"]) == 0 for r in rows)


def test_delegated_and_sweep_csv(capsys, config, tmp_path):
    text = SINGLE + "[sweep]\nalpha = 0:1:0.5\ntau1 = 0, 1\n"
    out_path = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "sweep", "--config", config(text), "--out", str(out_path))
    assert code == 0 and out == ""
    lines = out_path.read_text().splitlines()
    assert lines[0] == "alpha,tau1,delta_quality,delta_utility,viable" and len(lines) == 7
    code, out, _ = run(capsys, "delegated", "--config", config(text), "--format", "json")
    rows = json.loads(out)
    assert rows[0]["tau1"] == 0.0 and rows[0]["utility_per_hire"] == pytest.approx(0.7978845608)


def test_joint_and_compare(capsys, config):
    code, out, _ = run(capsys, "joint", "--config", config(TWO))
    d = json.loads(out)
    assert code == 0 and d["share_a"] == 0.65 and d["r_b"] == pytest.approx(0.35)
    code, out, _ = run(capsys, "compare", "--config", config(SINGLE))
    d = json.loads(out)
    assert code == 0 and d["delta_utility"] - d["delta_quality"] > 0
    code, out, _ = run(capsys, "compare", "--config", config(SINGLE), "--format", "csv")
    assert out.startswith("alpha,") and len(out.splitlines()) == 2


def test_simulate_targets(capsys, config):
    for target in ("delegated", "direct"):
        code, out, _ = run(capsys, "simulate", "--config", config(SINGLE), "--target", target)
        d = json.loads(out)
        assert code == 0 and d["target"] == target and d["seed"] == 0
        assert abs(d["estimate"] - d["closed_form"]) <= 4 * d["std_error"]
    code, out, _ = run(capsys, "simulate", "--config", config(TWO), "--target", "fairness",
                       "--seed", "5")
    d = json.loads(out)
    assert d["seed"] == 5 and d["k_hires"] == 100 and d["closed_form"] == 0.0


def test_repro_figures(capsys, tmp_path):
    code, out, _ = run(capsys, "repro-figures", "--out", str(tmp_path / "figs"))
    assert code == 0
    assert sorted(json.loads(out)["written"]) == sorted(f"{n}.csv" for n in COLUMNS)
    for name, cols in COLUMNS.items():
        with open(tmp_path / "figs" / f"{name}.csv") as fh:
            assert fh.readline().strip() == ",".join(cols)


def _error_line(err):
    (line,) = err.strip().splitlines()
    assert line.startswith("error: kind=")
    kind, _, msg = line[len("error: kind="):].partition(" message=")
    return kind, json.loads(msg)


def test_usage_errors_exit_2(capsys, config, tmp_path):
    code, _, err = run(capsys, "solve", "--config", str(tmp_path / "missing.ini"))
    assert code == 2 and _error_line(err)[0] == "usage"
    code, _, err = run(capsys, "joint", "--config", config(SINGLE))
    assert code == 2 and "population.a" in _error_line(err)[1]
    code, _, err = run(capsys, "solve", "--config", config("[population]\nsigma_f = 1\n"))
    assert code == 2
    code, _, err = run(capsys, "bogus")
    assert code == 2


def test_model_errors_exit_1(capsys, config):
    code, _, err = run(capsys, "solve", "--config", config(SINGLE), "--set", "preferences.c_rev=0")
    assert code == 1 and _error_line(err)[0] == "domain"
    code, _, err = run(capsys, "fairness", "--config", config(TWO), "--set", "sweep.tau1=1000")
    assert code == 1 and _error_line(err)[0] == "degenerate-threshold"
    code, _, err = run(capsys, "simulate", "--config", config(SINGLE), "--set", "policy.tau1=6")
    assert code == 1 and _error_line(err)[0] == "insufficient-samples"


def test_module_entry_point(config):
    env = dict(os.environ, DELEGATION_THREADS="2")
    res = subprocess.run([sys.executable, "-m", "delegation", "solve", "--config", config(SINGLE)],
                         capture_output=True, text=True, env=env, check=True)
    assert json.loads(res.stdout)["viable"] is True
