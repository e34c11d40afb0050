"""Command-line interface: exit codes, file formats, determinism."""

import json
import subprocess
import sys

import numpy as np
import pytest

from ads_null_flows.cli import main


def run(args, tmp_path):
    return main(["--set", "integrator_rel_tol=1e-10",
                 "--set", "integrator_abs_tol=1e-12", *args])


def test_hierarchy_writes_polynomials(tmp_path):
    out = tmp_path / "h"
    assert main(["hierarchy", "--n-max", "2", "--lien", "--verify",
                 "-o", str(out)]) == 0
    text = (out / "hierarchy.txt").read_text()
    assert "p_2 = u2 - 3*u^2" in text
    assert "a_1 = 4*u" in text
    assert "b_1 = -8" in text
    doc = json.loads((out / "hierarchy.json").read_text())
    assert doc["meta"]["recipe"] == "hierarchy"
    assert doc["polynomials"][0]["p_text"] == "1"


def test_hierarchy_n0_trivial(tmp_path):
    out = tmp_path / "h0"
    assert main(["hierarchy", "--n-max", "0", "--lien", "-o", str(out)]) == 0
    text = (out / "hierarchy.txt").read_text()
    assert "p_0 = 1" in text and "a_0 = 4" in text


def test_floquet_csv(tmp_path):
    out = tmp_path / "f"
    assert main(["floquet", "--mu", "0.4", "--q", "3/5", "--count", "1",
                 "-o", str(out)]) == 0
    rows = [l for l in (out / "floquet.csv").read_text().splitlines()
            if not l.startswith("#")]
    assert rows[0] == "index,h,tau,order"
    index, h, tau, order = rows[1].split(",")
    assert float(h) == pytest.approx(0.6674427700743268, abs=1e-6)
    assert int(order) == 10


def test_floquet_search_exhausted_exit_code(tmp_path):
    out = tmp_path / "fx"
    code = main(["--set", "scan_h_ceiling=2.0", "floquet", "--mu", "0.6",
                 "--q", "0", "--count", "2", "-o", str(out)])
    assert code == 1


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["floquet", "--mu", "0.4"])   # missing --q
    assert exc.value.code == 2


def test_constant_command_files(tmp_path):
    out = tmp_path / "c"
    assert main(["constant", "--mn", "7,3", "-o", str(out)]) == 0
    doc = json.loads((out / "constant_7_3.json").read_text())
    assert doc["meta"]["kappa"] == "-29/20"
    assert doc["meta"]["spin"] == "1/2"
    assert doc["meta"]["torus_knot"] == [-2, 5]
    assert doc["meta"]["orbit_type"] == "(E,E)"
    first = doc["samples"][0]
    assert {"s", "x", "y", "z", "matrix"} <= set(first)
    assert first["matrix"] == [1.0, 0.0, 0.0, 1.0]
    assert (first["x"], first["y"], first["z"]) == (2.0, 0.0, 0.0)
    obj = (out / "constant_7_3.obj").read_text().splitlines()
    assert obj[2] == "o curve"
    assert obj[3].startswith("v ")
    assert obj[-1].startswith("l 1 2 ")
    cous = (out / "constant_7_3_cousin_plus.csv").read_text().splitlines()
    assert cous[2] == "s,x,y"


def test_constant_case2_metadata(tmp_path):
    out = tmp_path / "c2"
    assert main(["constant", "--kappa", "-1", "--s-span", "6", "-o", str(out)]) == 0
    doc = json.loads((out / "constant_k-1.json").read_text())
    assert doc["meta"]["case"] == "(P,E)"
    assert "ideal_boundary" in doc["meta"]
    assert main(["constant", "--kappa", "2", "--s-span", "6", "-o", str(out)]) == 0
    doc = json.loads((out / "constant_k2.json").read_text())
    assert doc["meta"]["case"] == "(H,H)"


def test_stationary_snapshot_t0_identical(tmp_path):
    out = tmp_path / "s"
    assert main(["stationary", "--mu", "0.9", "--q", "2/5", "--t", "0",
                 "-o", str(out)]) == 0
    base = json.loads((out / "stationary_base.json").read_text())
    snap = json.loads((out / "stationary_t0.json").read_text())
    assert base["samples"] == snap["samples"]
    assert base["meta"]["orbit_type"] == "(E,E)"
    assert base["meta"]["closed"] is True


def test_outputs_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["constant", "--mn", "8,3", "-o", str(out)]) == 0
    assert (a / "constant_8_3.json").read_bytes() == (b / "constant_8_3.json").read_bytes()
    assert (a / "constant_8_3.obj").read_bytes() == (b / "constant_8_3.obj").read_bytes()


def test_check_command_passes():
    assert main(["check"]) == 0


def test_check_fails_with_broken_tolerance():
    code = main(["--set", "tol_metric=1e-18", "check"])
    assert code == 1


def test_console_entry_point_help():
    proc = subprocess.run([sys.executable, "-m", "ads_null_flows.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "hierarchy" in proc.stdout and "kksh" in proc.stdout


def test_kksh_find_mu_star(tmp_path):
    out = tmp_path / "k"
    code = main(["kksh", "--mn", "1,6", "--h", "2", "--find-mu-star",
                 "--invariant-grid", "2", "-o", str(out)])
    assert code == 0
    doc = json.loads((out / "kksh_t0.json").read_text())
    assert doc["meta"]["mu_star"] == pytest.approx(0.61503966, abs=1e-6)
    assert doc["meta"]["orbit_type"] == "(H,E)"
    assert doc["meta"]["rho"] == pytest.approx(3.93231, abs=1e-3)
