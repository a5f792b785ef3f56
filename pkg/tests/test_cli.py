import csv
import io
import json
import subprocess
import sys

import pytest

from auxham.cli import fmt, main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_simulate_csv(capsys):
    code, out, _ = run(["simulate", "--model", "vdp", "--epsilon", "0.1", "--omega", "1",
                        "--t-end", "50", "--samples", "11"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["t", "x", "xdot", "y", "ydot"]
    assert len(rows) == 12
    assert rows[1][:2] == ["0", "0.5"]


def test_cells_round_trip():
    v = 0.1 + 0.2
    assert fmt(v) == "0.30000000000000004" and float(fmt(v)) == v
    assert float(fmt(1 / 3)) == 1 / 3


def test_outputs_are_deterministic(capsys):
    argv = ["simulate", "--model", "symmetric", "--epsilon", "0.2", "--t-end", "10",
            "--y0", "0.1", "--samples", "50"]
    first = run(argv, capsys)[1]
    assert run(argv, capsys)[1] == first


def test_limit_cycle_json(capsys):
    code, out, _ = run(["limit-cycle", "--epsilon", "0.1"], capsys)
    data = json.loads(out)
    assert code == 0
    assert len(data["harmonics"]) == 5
    assert list(data) == sorted(data)
    assert abs(data["amplitude"] - 2) < 0.05


def test_compare_sweep(capsys, tmp_path):
    dest = tmp_path / "cmp.csv"
    code, _, _ = run(["compare", "--sweep", "epsilon=0.2,0.05,0.1", "--jobs", "2",
                      "--out", str(dest)], capsys)
    assert code == 0
    rows = list(csv.DictReader(dest.open()))
    assert list(rows[0]) == ["epsilon", "measured_freq", "predicted_freq", "abs_err"]
    assert [float(r["epsilon"]) for r in rows] == [0.2, 0.05, 0.1]  # sweep order kept
    for r in rows:
        eps = float(r["epsilon"])
        assert float(r["abs_err"]) <= 0.02 * eps**3 + 5e-7


@pytest.mark.parametrize("argv", [
    ["conserve-check", "--kind", "bateman", "--lam", "0.1", "--t-end", "50",
     "--x0", "0.5", "--xdot0", "0.3", "--y0", "0.2", "--ydot0", "-0.1"],
    ["conserve-check", "--kind", "vdp_simple", "--epsilon", "0.1", "--t-end", "50",
     "--x0", "0.8", "--xdot0", "-0.4", "--y0", "0.3", "--ydot0", "0.6"],
])
def test_conserve_check_pass(argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0 and out.strip().endswith("PASS")


def test_conserve_check_rejects_forced(capsys):
    code, _, err = run(["conserve-check", "--kind", "forced_vdp", "--F1", "1"], capsys)
    assert code == 1
    assert "not autonomous; use power-balance" in err


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"model": "dsho", "lam": 0.1, "t_end": 3.0, "samples": 4}))
    code, out, _ = run(["simulate", "--config", str(cfg), "--samples", "6"], capsys)
    assert code == 0 and len(out.splitlines()) == 7


def test_config_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"epsilon": 0.1,\n "t_end" 3}')
    code, _, err = run(["simulate", "--config", str(bad)], capsys)
    assert code == 1 and "bad.json:2:" in err
    bad.write_text('{"nonsense": 1}')
    code, _, err = run(["simulate", "--config", str(bad)], capsys)
    assert code == 1 and "nonsense" in err
    code, _, err = run(["compare", "--sweep", "zeta=1,2"], capsys)
    assert code == 1 and "zeta" in err
    code, _, _ = run(["simulate", "--omega", "-1"], capsys)
    assert code == 1


def test_blowup_exit_code(capsys):
    code, out, err = run(["simulate", "--model", "symmetric", "--epsilon", "1", "--alpha", "-1",
                          "--x0", "3", "--t-end", "50"], capsys)
    assert code == 2
    assert "partial output" in err and out.startswith("t,x,xdot,y,ydot")


def test_perturb_and_floquet(capsys, tmp_path):
    modes = tmp_path / "modes.json"
    code, out, _ = run(["perturb", "--epsilon", "0.4", "--modes-out", str(modes)], capsys)
    data = json.loads(out)
    assert code == 0 and data["frequency"] == pytest.approx(0.99)
    assert len(data["k1_modes"]) == 18
    assert len(json.loads(modes.read_text())["k1"]) == 18
    code, out, _ = run(["floquet", "--epsilon", "0.0", "--minimal"], capsys)
    assert code == 0 and json.loads(out)["det"] == pytest.approx(1.0)


def test_galley(capsys):
    code, out, _ = run(["galley", "--epsilon", "0.1", "--t-end", "5", "--samples", "3"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0][:3] == ["t", "q1", "q2"]
    # y starts at zero so q1 = q2 and N = 0
    assert float(rows[1][5]) == 0.0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "auxham", "simulate", "--t-end", "1",
                          "--samples", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("t,x,xdot,y,ydot\n")
