"""Acceptance gate: one test per advertised end-to-end guarantee, each at
its stated tolerance and runtime budget.

Criteria 2 and 7 are asserted exactly as stated even though two of their
sub-clauses are known to fail for physical reasons (documented in
README.md, "Known divergences"): the square-root-two closed-form root is
spurious when gamma_left > 0 > gamma_right, clamped walls that cut a weak
bond host in-gap boundary modes for negative gamma, and a width-40 ribbon
cannot reproduce slowly-decaying edge branches to 1e-6.  The assertions
report every failing sub-case; they are left red on purpose rather than
weakened.
"""

import itertools
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from topolattice import (
    ChainParams,
    HoneycombParams,
    SimState,
    assemble_chain,
    assemble_ribbon,
    chern_discrete,
    berry_bz_boundary,
    dirac_check,
    dispersion_2d,
    edge_frequencies_2d,
    final_eqn_roots_1d,
    gap_survey,
    interface_bands,
    k_point,
    loop_phase,
    simulate,
    spectrum,
    stability_limit,
    transfer_2d,
    transfer_matrix_1d,
    zak_discrete,
)
from topolattice.honeycomb2d import WaveVector2, K_POINTS_REDUCED

RT2 = math.sqrt(2.0)


def test_criterion_1_zak_phases_quantized():
    """Zak phase equals 0 (gamma > 0) or pi (gamma < 0) within 1e-6 for
    gamma in {+-0.1, +-0.3, +-0.5, +-0.9}, both bands, N = 2048; < 1 s."""
    t0 = time.perf_counter()
    bad = []
    for gamma in (0.1, 0.3, 0.5, 0.9, -0.1, -0.3, -0.5, -0.9):
        target = 0.0 if gamma > 0 else math.pi
        for band in ("minus", "plus"):
            z = zak_discrete(ChainParams(gamma), band, 2048)
            if abs(z.value - target) > 1e-6:
                bad.append(f"gamma={gamma} band={band}: {z.value}")
    elapsed = time.perf_counter() - t0
    assert not bad, "; ".join(bad)
    assert elapsed < 1.0, f"took {elapsed:.2f}s"


def test_criterion_2_1d_interface_modes_vs_finite_oracle():
    """For every opposite-sign (gamma_L, gamma_R) pair drawn from
    {+-0.2, +-0.5, +-0.8}: closed-form root at sqrt(2) within 1e-12, a
    clamped 50-cell/side eigenvalue within 1e-8 of 2, and fitted decays
    within 1e-3 of (1-|g|)/(1+|g|) per side.  Same-sign pairs: no in-gap
    eigenvalue (distance >= 1e-4).  < 10 s total."""
    t0 = time.perf_counter()
    values = [s * v for s in (1, -1) for v in (0.2, 0.5, 0.8)]
    failures = []
    for gl, gr in itertools.product(values, repeat=2):
        left, right = ChainParams(gl), ChainParams(gr)
        tag = f"({gl:+.1f},{gr:+.1f})"
        rep = spectrum(assemble_chain(left, right, 50, "fixed"))
        if gl * gr < 0:
            roots = final_eqn_roots_1d(left, right)
            if not any(abs(r - RT2) <= 1e-12 for r in roots):
                failures.append(f"{tag} closed-form root missing: {roots}")
            gap_sq = [m.omega_sq for m in rep.gap_modes]
            near = min(gap_sq, key=lambda v: abs(v - 2.0), default=None)
            if near is None or abs(near - 2.0) > 1e-8:
                failures.append(f"{tag} no finite eigenvalue near 2: {near}")
                continue
            # the eigenvalue at 2 can be twofold degenerate (interface plus
            # wall mode); take the interface-localized representative
            candidates = [m for m in rep.gap_modes
                          if abs(m.omega_sq - 2.0) <= 1e-8]
            mode = max(candidates, key=lambda m: m.interface_fraction)
            for side, g, got in (("left", gl, mode.decay_left),
                                 ("right", gr, mode.decay_right)):
                want = (1 - abs(g)) / (1 + abs(g))
                if not abs(got - want) <= 1e-3:
                    failures.append(
                        f"{tag} {side} decay {got:.6f} != {want:.6f}")
        else:
            lo, hi = rep.gap_window
            evs = rep.eigenvalues
            inside = (evs > lo) & (evs < hi)
            if inside.any():
                failures.append(
                    f"{tag} in-gap eigenvalues {evs[inside][:4]}")
            elif np.minimum(np.abs(evs - lo), np.abs(evs - hi)).min() < 1e-4:
                failures.append(f"{tag} eigenvalue hugs the gap edge")
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0, f"took {elapsed:.2f}s"
    assert not failures, f"{len(failures)} sub-cases: " + "; ".join(failures)


def test_criterion_3_dirac_point():
    """beta = 0, a = 1: both bands equal 3 at the zone corners to machine
    precision (read: |lambda - 3| <= 1e-13), finite-difference cone slopes
    within 1e-3 of sqrt(3)/2 across >= 8 directions at h = 1e-4, and the
    Bloch matrix at K1 equals 3*Identity entrywise to machine precision."""
    p = HoneycombParams(beta=0.0, a=1.0)
    for name in ("K1", "K4"):
        s = dispersion_2d(p, k_point(name))
        assert abs(s.lambda_minus - 3.0) <= 1e-13
        assert abs(s.lambda_plus - 3.0) <= 1e-13
    rep = dirac_check(p, "K1", h_steps=(1e-3, 1e-4), n_directions=8)
    target = math.sqrt(3.0) / 2.0
    assert np.max(np.abs(rep.slopes_plus[:, -1] - target)) <= 1e-3
    assert np.max(np.abs(rep.slopes_minus[:, -1] + target)) <= 1e-3
    assert rep.m_matrix_residual <= 1e-13
    assert rep.multiplicity_two


def test_criterion_4_gap_opening_survey():
    """beta = 0.05: minimum gap over a 128x128 grid equals
    3/0.95 - 3/1.05 = 0.3007519 within 2e-3, attained within one grid cell
    of a zone corner."""
    gmin, kmin = gap_survey(HoneycombParams(beta=0.05), 128)
    assert abs(gmin - (3 / 0.95 - 3 / 1.05)) <= 2e-3, f"min gap {gmin}"
    cell = 1.0 / 128
    best = min(
        max(_wrap_dist(kmin.kappa1, kr[0]), _wrap_dist(kmin.kappa2, kr[1]))
        for kr in K_POINTS_REDUCED.values())
    assert best <= cell + 1e-12, f"minimizer {kmin} is {best} from a corner"


def _wrap_dist(x, y):
    d = abs(x - y) % 1.0
    return min(d, 1.0 - d)


def test_criterion_5_berry_phase_bz_boundary_vanishes():
    """Whole-zone boundary Berry phase = 0 within 1e-8 for
    beta in {+-0.1, +-0.3}, both bands, N = 600."""
    for beta in (0.1, -0.1, 0.3, -0.3):
        for band in ("minus", "plus"):
            phase = berry_bz_boundary(HoneycombParams(beta=beta), band, 600)
            assert abs(phase) <= 1e-8, f"beta={beta} {band}: {phase}"


def test_criterion_6_valley_chern_structure():
    """K1 = K3 = K5, K2 = K4 = K6, K1 + K4 = 0, all within 1e-10; the plus
    band's sign is opposite to beta and the minus band's matches it, for
    beta in {+-0.05, +-0.1, +-0.3} (r = 0.05|K1|, N = 512); < 5 s."""
    t0 = time.perf_counter()
    for beta in (0.05, 0.1, 0.3, -0.05, -0.1, -0.3):
        p = HoneycombParams(beta=beta)
        plus = {v: chern_discrete(p, v, "plus").value for v in K_POINTS_REDUCED}
        minus_k1 = chern_discrete(p, "K1", "minus").value
        for a, b in (("K1", "K3"), ("K1", "K5"), ("K2", "K4"), ("K2", "K6")):
            assert abs(plus[a] - plus[b]) <= 1e-10, f"beta={beta}: {a} vs {b}"
        assert abs(plus["K1"] + plus["K4"]) <= 1e-10, f"beta={beta}"
        assert math.copysign(1, plus["K1"]) == -math.copysign(1, beta)
        assert math.copysign(1, minus_k1) == math.copysign(1, beta)
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0, f"took {elapsed:.2f}s"


def test_criterion_7_2d_edge_frequencies_and_ribbon():
    """a = 1, beta = 0.1, 33 k_par samples: the first two closed-form
    frequencies lie in the open gap, the third below, the fourth above, at
    every sample; a width-40 ribbon reproduces the in-gap pair within 1e-6;
    spot values 2.2222222 and 3.6363636 at k_par = pi; < 30 s."""
    t0 = time.perf_counter()
    p = HoneycombParams(beta=0.1, a=1.0)
    failures = []
    for j in range(33):
        kp = 2.0 * math.pi * j / 32.0
        ef = edge_frequencies_2d(p, kp)
        ib = interface_bands(p, kp)
        w1, w2, w3, w4 = ef.omega_sq
        if not (ib.lambda_minus < w1 < ib.lambda_plus
                and ib.lambda_minus < w2 < ib.lambda_plus):
            failures.append(f"k={kp:.4f}: in-gap classification broken")
        if not (w3 < ib.lambda_minus + 1e-12 and w4 > ib.lambda_plus - 1e-12):
            failures.append(f"k={kp:.4f}: outer classification broken")
        rep = spectrum(assemble_ribbon(p, kp, 40))
        got = sorted(m.omega_sq for m in rep.gap_modes)
        want = sorted((w1, w2))
        if len(got) != 2:
            failures.append(f"k={kp:.4f}: {len(got)} in-gap ribbon modes")
            continue
        diff = max(abs(g - t) for g, t in zip(got, want))
        if diff > 1e-6:
            failures.append(f"k={kp:.4f}: ribbon off by {diff:.3e}")
        if j == 16:  # k_par = pi
            assert abs(got[0] - 2.2222222) <= 1e-7
            assert abs(got[1] - 3.6363636) <= 1e-7
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0, f"took {elapsed:.2f}s"
    assert not failures, f"{len(failures)} sub-cases: " + "; ".join(failures)


def test_criterion_8_numerical_hygiene():
    """1000 random valid transfer matrices stay unimodular within 1e-12
    (unit determinant in 1D, unit-modulus determinant in 2D, where the
    determinant is the phase z/conj(z)); Verlet secular energy drift
    <= 1e-6 over 1e4 steps; loop phases gauge-invariant within 1e-12."""
    rng = np.random.default_rng(20240811)

    for _ in range(1000):
        gamma = float(rng.choice([-1, 1]) * rng.uniform(0.05, 0.95))
        Om = float(rng.uniform(-1, 1) * 2 * abs(gamma) * 0.999)
        side = "right" if rng.random() < 0.5 else "left"
        T = transfer_matrix_1d(ChainParams(gamma), side, math.sqrt(2 - Om))
        assert abs(np.linalg.det(T) - 1.0) <= 1e-12

    count = 0
    while count < 1000:
        beta = float(rng.choice([-1, 1]) * rng.uniform(0.02, 0.5))
        kp = float(rng.uniform(0.0, 2 * math.pi))
        if abs(1 + np.exp(1j * kp)) < 1e-3:
            continue
        p = HoneycombParams(beta=beta)
        ib = interface_bands(p, kp)
        osq = float(rng.uniform(ib.lambda_minus + 1e-9, ib.lambda_plus - 1e-9))
        side = "right" if rng.random() < 0.5 else "left"
        tr = transfer_2d(p, side, kp, osq)
        assert abs(abs(np.linalg.det(tr.matrix)) - 1.0) <= 1e-12
        count += 1

    model = assemble_chain(ChainParams(-0.5), ChainParams(0.5), 50, "fixed")
    mode = max(spectrum(model).gap_modes, key=lambda m: m.interface_fraction)
    dt = stability_limit(model)
    res = simulate(model, SimState(0.0, mode.profile.astype(float),
                                   np.zeros(model.n_dofs)), dt, 10000)
    slope = np.polyfit(res.times, res.energies, 1)[0]
    drift = abs(slope * (res.times[-1] - res.times[0])) / res.energies[0]
    assert drift <= 1e-6, f"secular drift {drift:.3e}"

    p = HoneycombParams(beta=0.1)
    center = k_point("K1").cartesian
    radius = 0.05 * np.linalg.norm(center)
    thetas = -math.pi + 2 * math.pi * np.arange(256) / 256
    vecs = []
    for th in thetas:
        kc = center + radius * np.array([math.cos(th), math.sin(th)])
        s = dispersion_2d(p, WaveVector2.from_cartesian(kc), want_vectors=True)
        vecs.append(s.eigenvectors[0])
    vecs = np.asarray(vecs)
    base = loop_phase(vecs)[1]
    for seed in range(5):
        phases = np.random.default_rng(seed).uniform(0, 2 * np.pi, len(vecs))
        gauged = vecs * np.exp(1j * phases)[:, None]
        assert abs(loop_phase(gauged)[1] - base) <= 1e-12


_CLI_CASES = [
    ["bands1d", "--gamma", "0.5", "--samples", "41"],
    ["zak", "--gamma", "-0.7", "--band", "plus"],
    ["edge1d", "--gamma-left", "-0.5", "--gamma-right", "0.5",
     "--cells", "30"],
    ["bands2d", "--beta", "0.05", "--grid", "16"],
    ["dirac", "--directions", "8"],
    ["chern", "--beta", "0.1", "--band", "minus"],
    ["berry", "--beta", "-0.3", "--band", "plus", "--format", "json"],
    ["edge2d", "--beta", "0.1", "--kpar-samples", "3", "--width", "10"],
    ["ribbon", "--beta", "0.1", "--kpar", "1.0", "--width", "10"],
    ["simulate"],  # config path appended per-run
]


def test_criterion_9_cli_determinism(tmp_path):
    """Every subcommand, run twice with identical inputs, produces
    byte-identical output files."""
    cfg = tmp_path / "sim.json"
    cfg.write_text(json.dumps({
        "model": {"kind": "chain", "gamma_left": -0.5, "gamma_right": 0.5,
                  "cells": 10},
        "initial": {"kind": "point_impulse", "cell": 1, "site": "a"},
        "dt": 0.05, "steps": 50, "probes": [18]}))
    for case in _CLI_CASES:
        argv = case + ([str(cfg)] if case[0] == "simulate" else [])
        outputs = []
        for run in (1, 2):
            out = tmp_path / f"{case[0]}_{run}.dat"
            proc = subprocess.run(
                [sys.executable, "-m", "topolattice.cli", *argv,
                 "--out", str(out)],
                capture_output=True)
            assert proc.returncode == 0, (case[0], proc.stderr.decode())
            blob = out.read_bytes()
            sibling = tmp_path / f"{case[0]}_{run}_profile.dat"
            if sibling.exists():
                blob += sibling.read_bytes()
            outputs.append(blob)
        assert outputs[0] == outputs[1], f"{case[0]}: outputs differ"
