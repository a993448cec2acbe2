"""Command line: outputs reproduce library calls bit-for-bit; exit codes."""
import csv
import io
import json
import math
import subprocess
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

from hadamard_ops import DomainError, HadamardOperator, TestFunction, apply_grid, grid_points, samples_csv
from hadamard_ops.cli import main, parse_grid
from hadamard_ops.specfile import load_spec, parse_spec

DEMO = Path(__file__).resolve().parents[1] / "specs" / "demo.json"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_eig_box_table(capsys):
    code, out, err = run(capsys, "eig", "--spec", DEMO, "--dist", "box", "--alpha-max", 3)
    assert code == 0 and "certificate" in err and "eps=1" in err
    table = rows(out)
    assert table[0] == ["alpha_1", "re", "im", "err"]
    vals = [float(r[1]) for r in table[1:]]
    np.testing.assert_allclose(vals, [math.log(2), 0.5, 0.375, 7 / 24], atol=1e-10)


def test_eig_identity_table(capsys):
    code, out, _ = run(capsys, "eig", "--spec", DEMO, "--dist", "unit", "--alpha-max", 5)
    assert code == 0
    assert all(r[1] == "1" and r[2] == "0" for r in rows(out)[1:])


def test_eig_matches_library_bit_for_bit(capsys, tmp_path):
    target = tmp_path / "eig.csv"
    code, _, _ = run(capsys, "eig", "--spec", DEMO, "--dist", "theta_box", "--alpha-max", 4, "--out", target)
    spec = load_spec(DEMO)
    expected = HadamardOperator(spec.distribution("theta_box"), spec.config).table(4).to_csv()
    assert code == 0 and target.read_text() == expected


def test_eig_rejects_point_at_origin(capsys):
    code, out, err = run(capsys, "eig", "--spec", DEMO, "--dist", "origin", "--alpha-max", 2)
    assert code == 2 and out == "" and "support_in_W_eps" in err


def test_apply_delta_is_dilated_bump(capsys):
    code, out, _ = run(capsys, "apply", "--spec", DEMO, "--dist", "delta2", "--testfn", "bump15", "--grid", "-3:3:13")
    assert code == 0
    phi = TestFunction.bump(1.5, 0.6)
    for r in rows(out)[1:]:
        y = float(r[0])
        assert float(r[1]) == pytest.approx(phi([[2 * y]])[0], abs=1e-15)


def test_apply_matches_library_bit_for_bit(capsys):
    code, out, _ = run(capsys, "apply", "--spec", DEMO, "--dist", "box", "--testfn", "bump15", "--grid", "-1:2.5:8")
    spec = load_spec(DEMO)
    pts = grid_points(parse_grid("-1:2.5:8"))
    expected = samples_csv(pts, apply_grid(spec.distribution("box"), spec.test_function("bump15"), pts, spec.config))
    assert code == 0 and out == expected


def test_apply_oscillatory_kernel_matches_fourier_closed_form(capsys):
    code, out, err = run(capsys, "apply", "--spec", DEMO, "--dist", "exp_osc", "--testfn", "phi", "--grid", "-1:1:5")
    assert code == 0 and "Euler-form" in err
    phi = TestFunction.bump(0.3, 1.0)
    from hadamard_ops import fourier_sample

    for r in rows(out)[1:]:
        y, F = float(r[0]), complex(float(r[1]), float(r[2]))
        if y == 0:
            assert abs(F) < 1e-9
        else:
            ref = math.copysign(1, y) / y * fourier_sample(phi, [0], [1 / y]).value
            assert abs(F - ref) <= 1e-6 * abs(ref)


def test_apply_gate_for_kernel_without_decay(capsys):
    base = ["apply", "--spec", DEMO, "--dist", "half_line", "--testfn", "phi"]
    code, out, err = run(capsys, *base, "--grid", "-1:1:5")
    assert code == 2 and "oh_witness" in err and out == ""
    code, out, err = run(capsys, *base, "--grid", "-1:1:4", "--unsafe-off-hyperplane")
    assert code == 0 and "warning" in err and len(rows(out)) == 5
    code, _, err = run(capsys, *base, "--grid", "-1:1:5", "--unsafe-off-hyperplane")
    assert code == 2 and "hyperplane" in err


def test_verify_single_suite_writes_json(capsys, tmp_path):
    target = tmp_path / "rep.json"
    code, _, err = run(capsys, "verify", "--suite", "euler_identities", "--out", target)
    data = json.loads(target.read_text())
    assert code == 0 and data["passed"] and len(data["suites"]) == 1
    assert "suite euler_identities: PASS" in err


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nope")
    assert code == 2 and "unknown suite" in err


def test_tolerance_precedence(monkeypatch):
    from hadamard_ops.cli import _config, build_parser

    spec = load_spec(DEMO)
    args = build_parser().parse_args(["eig"])
    assert _config(args, spec).rel_tol == 1e-10
    monkeypatch.setenv("HADAMARD_TOL", "1e-7")
    assert _config(args, spec).rel_tol == 1e-7
    args = build_parser().parse_args(["eig", "--tol", "1e-6"])
    assert _config(args, spec).rel_tol == 1e-6


def test_bad_tolerance_env_rejected(capsys, monkeypatch):
    monkeypatch.setenv("HADAMARD_TOL", "tight")
    code, _, err = run(capsys, "eig", "--spec", DEMO, "--dist", "box", "--alpha-max", 1)
    assert code == 2 and "tolerance" in err


def test_missing_arguments_and_files(capsys, tmp_path):
    assert run(capsys, "eig", "--spec", DEMO, "--dist", "box")[0] == 2
    assert run(capsys, "eig", "--spec", tmp_path / "missing.json", "--dist", "box", "--alpha-max", 1)[0] == 2
    assert run(capsys, "eig", "--spec", DEMO, "--dist", "nobody", "--alpha-max", 1)[0] == 2
    bad = ["apply", "--spec", DEMO, "--dist", "box", "--testfn", "phi"]
    assert run(capsys, *bad, "--grid", "0:1")[0] == 2
    assert run(capsys, *bad, "--grid", "0:1:3,0:1:3")[0] == 2


def test_spec_schema_rejects_unknown_fields():
    obj = json.loads(DEMO.read_text())
    assert parse_spec(obj).to_json()["d"] == 1
    for mutate in (
        lambda o: o.update(extra=1),
        lambda o: o["config"].update(seed=3),
        lambda o: o["distributions"]["unit"][0].update(mass=2),
        lambda o: o.update(version="2"),
        lambda o: o.update(d=2),
    ):
        broken = json.loads(DEMO.read_text())
        mutate(broken)
        with pytest.raises(DomainError):
            parse_spec(broken)


def test_spec_round_trip():
    spec = load_spec(DEMO)
    again = parse_spec(json.loads(json.dumps(spec.to_json())))
    assert again.distributions == spec.distributions
    assert again.test_functions == spec.test_functions
    assert again.config == replace(spec.config)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hadamard_ops.cli", "eig", "--spec", str(DEMO), "--dist", "unit", "--alpha-max", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("alpha_1,re,im,err")
