"""End-to-end CLI tests: table schemas, error contract, format mirroring,
and byte-level determinism of file outputs."""

import csv
import io
import json
import math
import re
import subprocess
import sys

import pytest

from topolattice.cli import main

_ERROR_RE = re.compile(r"^error: [\w.\-\[\]]+: .+$")


def _run(argv, capsys):
    """In-process invocation; returns (exit_code, stdout, stderr)."""
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


# ========================= happy paths =========================


def test_bands1d_header_and_band_edges(capsys):
    code, out, err = _run(["bands1d", "--gamma", "0.5", "--samples", "5"], capsys)
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "mu,lambda_minus,lambda_plus,omega_minus,omega_plus"
    assert len(lines) == 6
    rows = _rows(out)
    mid = rows[2]
    assert float(mid["mu"]) == 0.0
    assert float(mid["lambda_minus"]) == 0.0
    assert float(mid["lambda_plus"]) == 4.0


def test_zak_classification_column(capsys):
    code, out, _ = _run(["zak", "--gamma", "0.5", "--band", "plus"], capsys)
    assert code == 0
    row = _rows(out)[0]
    assert row["classified"] == "0"
    code, out, _ = _run(["zak", "--gamma", "-0.3"], capsys)
    row = _rows(out)[0]
    assert row["classified"] == "pi"
    assert abs(float(row["value"]) - math.pi) < 1e-4


def test_edge1d_root_oracle_and_decay(capsys):
    code, out, _ = _run(["edge1d", "--gamma-left", "-0.5",
                         "--gamma-right", "0.5", "--cells", "50"], capsys)
    assert code == 0
    rows = _rows(out)
    assert len(rows) == 1
    row = rows[0]
    assert row["verified"] == "1"
    # 9-significant-digit serialization allows ~5e-9 read-back error
    assert abs(float(row["root_omega"]) - math.sqrt(2)) < 5e-9
    assert abs(float(row["decay_right"]) - 1 / 3) < 5e-9
    assert float(row["oracle_diff"]) < 1e-8


def test_edge1d_same_sign_reports_no_roots(capsys):
    code, out, _ = _run(["edge1d", "--gamma-left", "0.5",
                         "--gamma-right", "0.5"], capsys)
    assert code == 0
    assert _rows(out) == []


def test_bands2d_row_count_and_corner_gap(capsys):
    code, out, _ = _run(["bands2d", "--beta", "0.05", "--grid", "16"], capsys)
    assert code == 0
    rows = _rows(out)
    assert len(rows) == 256
    # grid includes the zone corner at (2/3, 1/3) when grid-1 % 3 == 0
    corner = [r for r in rows
              if abs(float(r["kappa1"]) - 2 / 3) < 1e-9
              and abs(float(r["kappa2"]) - 1 / 3) < 1e-9]
    assert corner, "inclusive grid must contain the K corner for grid=16"
    gap = float(corner[0]["lambda_plus"]) - float(corner[0]["lambda_minus"])
    assert gap == pytest.approx(3 / 0.95 - 3 / 1.05, rel=1e-6)


def test_dirac_table(capsys):
    code, out, _ = _run(["dirac", "--directions", "8"], capsys)
    assert code == 0
    rows = _rows(out)
    assert len(rows) == 8
    for r in rows:
        assert abs(abs(float(r["slope_plus"])) - math.sqrt(3) / 2) < 1e-4
        assert r["multiplicity_two"] == "1"


def test_chern_and_berry_single_rows(capsys):
    code, out, _ = _run(["chern", "--beta", "0.05", "--band", "minus"], capsys)
    assert code == 0
    row = _rows(out)[0]
    assert float(row["value"]) == pytest.approx(0.195796348, abs=1e-8)
    code, out, _ = _run(["berry", "--beta", "0.1", "--band", "plus"], capsys)
    row = _rows(out)[0]
    assert abs(float(row["phase"])) < 1e-8


def test_ribbon_flags_exactly_two_gap_modes(capsys):
    code, out, _ = _run(["ribbon", "--beta", "0.1", "--kpar",
                         str(math.pi), "--width", "10"], capsys)
    assert code == 0
    hot = [r for r in _rows(out) if r["in_gap"] == "1"]
    assert len(hot) == 2
    vals = sorted(float(r["omega_sq"]) for r in hot)
    assert vals[0] == pytest.approx(2.2222222, abs=1e-6)
    assert vals[1] == pytest.approx(3.6363636, abs=1e-6)


def test_edge2d_columns_and_ribbon_agreement(capsys):
    code, out, _ = _run(["edge2d", "--beta", "0.1", "--kpar-samples", "3",
                         "--width", "10"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ("k_par,lambda_minus,lambda_plus,omega1_sq,omega2_sq,"
                        "omega3_sq,omega4_sq,ribbon_omega1_sq,ribbon_omega2_sq")
    for r in _rows(out):
        assert abs(float(r["ribbon_omega1_sq"]) - float(r["omega1_sq"])) < 1e-3
        assert abs(float(r["ribbon_omega2_sq"]) - float(r["omega2_sq"])) < 1e-3


# ========================= simulate =========================


@pytest.fixture()
def sim_config(tmp_path):
    cfg = {
        "model": {"kind": "chain", "gamma_left": -0.5, "gamma_right": 0.5,
                  "cells": 10},
        "initial": {"kind": "edge_mode"},
        "dt": 0.05,
        "steps": 40,
        "probes": [18, 20],
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    return path


def test_simulate_writes_energy_and_profile(sim_config, tmp_path, capsys):
    out = tmp_path / "run.csv"
    code, _, err = _run(["simulate", str(sim_config), "--out", str(out)], capsys)
    assert code == 0, err
    energy = _rows(out.read_text())
    assert len(energy) == 41
    assert set(energy[0]) == {"step", "time", "energy", "probe_18", "probe_20"}
    E = [float(r["energy"]) for r in energy]
    assert max(abs(e - E[0]) for e in E) / E[0] < 1e-2
    profile = _rows((tmp_path / "run_profile.csv").read_text())
    assert len(profile) == 40  # 10 cells/side * 2 sites
    assert {r["site"] for r in profile} == {"a", "b"}


def test_simulate_csv_to_stdout_requires_out(sim_config, capsys):
    code, _, err = _run(["simulate", str(sim_config)], capsys)
    assert code == 2
    assert err.startswith("error: out:")


def test_simulate_json_single_document(sim_config, capsys):
    code, out, _ = _run(["simulate", str(sim_config), "--format", "json"],
                        capsys)
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"energy", "profile"}
    assert len(doc["energy"]) == 41


def test_simulate_field_level_diagnostics(tmp_path, capsys):
    bad = {"model": {"kind": "chain", "gamma_left": -0.5,
                     "gamma_right": 0.5}, "initial": {"kind": "edge_mode"},
           "dt": 0.05}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _, err = _run(["simulate", str(path)], capsys)
    assert code == 2
    assert err.strip() == "error: steps: required field missing"


def test_simulate_rejects_unstable_dt(tmp_path, capsys):
    cfg = {"model": {"kind": "chain", "gamma_left": -0.5, "gamma_right": 0.5,
                     "cells": 10},
           "initial": {"kind": "point_impulse"}, "dt": 2.0, "steps": 5}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, _, err = _run(["simulate", str(path)], capsys)
    assert code == 3
    assert err.startswith("error: dt: exceeds the stability bound")


# ========================= error contract =========================


@pytest.mark.parametrize("argv,exit_code,field", [
    (["zak", "--gamma", "0"], 3, "gamma"),
    (["zak", "--gamma", "0.5", "--n", "4"], 2, "n"),
    (["bands1d", "--gamma", "1.2"], 2, "gamma"),
    (["chern", "--beta", "0"], 3, "beta"),
    (["chern", "--beta", "0.1", "--n", "33"], 2, "n"),
    (["chern", "--beta", "0.1", "--radius", "9.0"], 2, "radius"),
    (["berry", "--beta", "0.1", "--n", "100"], 2, "n"),
    (["dirac", "--beta", "0.2"], 3, "beta"),
    (["edge2d", "--beta", "0"], 3, "beta"),
    (["edge1d", "--gamma-left", "0", "--gamma-right", "0.5"], 3, "gamma-left"),
    (["ribbon", "--beta", "0.1", "--kpar", "9.9"], 2, "kpar"),
    (["bands2d", "--beta", "0.1", "--grid", "1"], 2, "grid"),
])
def test_single_line_error_contract(argv, exit_code, field, capsys):
    code, out, err = _run(argv, capsys)
    assert code == exit_code
    assert out == ""
    lines = err.splitlines()
    assert len(lines) == 1
    assert _ERROR_RE.match(lines[0]), f"malformed diagnostic: {lines[0]!r}"
    assert lines[0].startswith(f"error: {field}:")


def test_unknown_arguments_exit_2(capsys):
    code, _, err = _run(["zak", "--gamma", "0.5", "--bogus"], capsys)
    assert code == 2
    assert err.startswith("error: args:")


# ========================= format mirroring =========================


def test_json_mirrors_csv_rows(capsys):
    args = ["chern", "--beta", "0.1", "--band", "plus"]
    _, out_csv, _ = _run(args + ["--format", "csv"], capsys)
    _, out_json, _ = _run(args + ["--format", "json"], capsys)
    crow = _rows(out_csv)[0]
    jrow = json.loads(out_json)[0]
    assert set(crow) == set(jrow)
    for key, cval in crow.items():
        jval = jrow[key]
        if isinstance(jval, str):
            assert cval == jval
        else:
            assert float(cval) == pytest.approx(float(jval), abs=0), \
                f"{key}: csv {cval!r} vs json {jval!r}"


def test_csv_numbers_use_nine_significant_digits(capsys):
    _, out, _ = _run(["bands1d", "--gamma", "0.3", "--samples", "7"], capsys)
    for row in _rows(out):
        for v in row.values():
            mantissa = v.split("e")[0].replace("-", "").replace(".", "")
            assert len(mantissa.lstrip("0")) <= 9, f"too many digits: {v}"


# ========================= determinism =========================


def _cli_bytes(argv, path):
    proc = subprocess.run(
        [sys.executable, "-m", "topolattice.cli", *argv, "--out", str(path)],
        capture_output=True)
    assert proc.returncode == 0, proc.stderr.decode()
    return path.read_bytes()


@pytest.mark.parametrize("argv", [
    ["bands1d", "--gamma", "-0.4", "--samples", "33"],
    ["zak", "--gamma", "0.7", "--band", "plus"],
    ["chern", "--beta", "0.1", "--format", "json"],
    ["edge1d", "--gamma-left", "-0.2", "--gamma-right", "0.8", "--cells", "20"],
])
def test_repeated_runs_are_byte_identical(argv, tmp_path):
    b1 = _cli_bytes(argv, tmp_path / "a.dat")
    b2 = _cli_bytes(argv, tmp_path / "b.dat")
    assert b1 == b2
    assert b"\r" not in b1


def test_output_file_written_atomically(tmp_path, capsys):
    # the target keeps its old bytes when a later table fails to build,
    # because writes go to a temp file first and are renamed on success
    target = tmp_path / "out.csv"
    target.write_text("sentinel")
    code, _, _ = _run(["zak", "--gamma", "0", "--out", str(target)], capsys)
    assert code == 3
    assert target.read_text() == "sentinel"
