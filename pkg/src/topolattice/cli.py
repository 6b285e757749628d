"""Command-line front-end: deterministic, machine-readable tables for every
library capability.

Conventions (shared by all subcommands):

- ``--out PATH`` writes the table there (atomic replace); without it the
  table is printed to stdout.
- ``--format csv|json``: CSV is UTF-8 with LF endings, a header row, and
  9-significant-digit numbers; JSON mirrors the CSV rows as an array of
  objects with the same field names and the same rounded numbers.
- Failures exit nonzero with a single stderr line ``error: <field>:
  <reason>``; exit code 2 flags parameter validation, 3 a numerical
  precondition (gap closed, stability bound, ...).
- ``--seed`` is accepted on every subcommand and reserved for randomized
  diagnostics; the standard tables are fully deterministic.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from typing import Optional

import numpy as np

from . import chain1d, finite, honeycomb2d

# ============================ error plumbing ===============================


class CliError(Exception):
    """Carries the machine-parsable (field, reason, exit_code) triple."""

    def __init__(self, field: str, reason: str, exit_code: int = 2):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason
        self.exit_code = exit_code


class _Parser(argparse.ArgumentParser):
    # argparse's own diagnostics funnel through here; re-raise so main()
    # can emit the single-line error contract instead of usage spam
    def error(self, message):
        raise CliError("args", message)


# ============================ serialization ================================

def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if math.isnan(x):
            return ""
        if x == 0.0:
            x = 0.0  # normalize -0
        return "%.9g" % x
    return str(value)


def _json_cell(value):
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    x = float(value)
    if math.isnan(x):
        return None
    return float("%.9g" % x) if x != 0.0 else 0.0


def _table_csv(columns, rows) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_csv_cell(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def _table_json(columns, rows):
    return [{c: _json_cell(row[c]) for c in columns} for row in rows]


def _atomic_write(path: str, text: str) -> None:
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".tl-tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _sibling_path(out: str, suffix: str) -> str:
    stem, ext = os.path.splitext(out)
    return f"{stem}_{suffix}{ext}"


def _emit(args, tables: dict) -> None:
    """tables maps name -> (columns, rows); the first entry is the main one.

    Single-table commands serialize as a bare CSV table / JSON array.  With
    several tables, CSV writes the main one to --out and the rest to
    ``<stem>_<name>.<ext>`` (so --out is required), while JSON bundles all
    of them into one document keyed by table name.
    """
    fmt = args.format
    if fmt == "json":
        if len(tables) == 1:
            (cols, rows), = tables.values()
            doc = _table_json(cols, rows)
        else:
            doc = {name: _table_json(cols, rows)
                   for name, (cols, rows) in tables.items()}
        text = json.dumps(doc, indent=1) + "\n"
        if args.out:
            _atomic_write(args.out, text)
        else:
            sys.stdout.write(text)
        return
    if args.out is None and len(tables) > 1:
        raise CliError("out", "this command writes multiple CSV tables; "
                              "--out is required with --format csv")
    main_name = next(iter(tables))
    for name, (cols, rows) in tables.items():
        text = _table_csv(cols, rows)
        if args.out is None:
            sys.stdout.write(text)
        else:
            path = args.out if name == main_name else _sibling_path(args.out, name)
            _atomic_write(path, text)


# =========================== shared validation =============================

def _check_gamma(value: float, field: str, allow_zero: bool = False) -> float:
    if not (math.isfinite(value) and abs(value) < 1.0):
        raise CliError(field, f"must satisfy |{field}| < 1, got {value}")
    if value == 0.0 and not allow_zero:
        raise CliError(field, "gap closed at gamma = 0", exit_code=3)
    return value


def _check_beta(value: float, field: str = "beta",
                allow_zero: bool = True) -> float:
    if not (math.isfinite(value) and abs(value) < 1.0):
        raise CliError(field, f"must satisfy |{field}| < 1, got {value}")
    if value == 0.0 and not allow_zero:
        raise CliError(field, "band gap closed at beta = 0", exit_code=3)
    return value


def _chain_params(gamma: float) -> chain1d.ChainParams:
    return chain1d.ChainParams(gamma=gamma)


# ============================== subcommands ================================

def _cmd_bands1d(args):
    gamma = _check_gamma(args.gamma, "gamma", allow_zero=True)
    if args.samples < 2:
        raise CliError("samples", f"must be >= 2, got {args.samples}")
    params = _chain_params(gamma)
    cols = ["mu", "lambda_minus", "lambda_plus", "omega_minus", "omega_plus"]
    rows = []
    for mu in np.linspace(-np.pi, np.pi, args.samples):
        s = chain1d.dispersion_1d(params, float(mu))
        rows.append({"mu": s.mu,
                     "lambda_minus": s.lambda_minus,
                     "lambda_plus": s.lambda_plus,
                     "omega_minus": math.sqrt(max(s.lambda_minus, 0.0)),
                     "omega_plus": math.sqrt(s.lambda_plus)})
    return {"": (cols, rows)}


def _cmd_zak(args):
    gamma = _check_gamma(args.gamma, "gamma")
    if args.n < 16:
        raise CliError("n", f"must be >= 16, got {args.n}")
    if args.band not in ("minus", "plus"):
        raise CliError("band", f"must be minus|plus, got {args.band!r}")
    z = chain1d.zak_discrete(_chain_params(gamma), args.band, args.n)
    if abs(z.value) <= 1e-4:
        classified = "0"
    elif abs(z.value - np.pi) <= 1e-4:
        classified = "pi"
    else:
        classified = "unclassified"
    cols = ["gamma", "band", "n_points", "value", "raw_sum", "classified"]
    return {"": (cols, [{"gamma": gamma, "band": args.band,
                         "n_points": z.n_points, "value": z.value,
                         "raw_sum": z.raw_sum, "classified": classified}])}


def _cmd_edge1d(args):
    gl = _check_gamma(args.gamma_left, "gamma-left")
    gr = _check_gamma(args.gamma_right, "gamma-right")
    if args.cells < 4:
        raise CliError("cells", f"must be >= 4, got {args.cells}")
    left, right = _chain_params(gl), _chain_params(gr)
    raw_roots = chain1d.final_eqn_roots_1d(left, right)
    modes = chain1d.edge_modes_1d(left, right, n_profile_cells=args.cells)
    report = finite.spectrum(finite.assemble_chain(left, right, args.cells,
                                                   "fixed"))
    oracle_vals = [m.omega_sq for m in report.gap_modes]

    cols = ["root_omega", "verified", "omega_sq", "c1", "c2",
            "decay_left", "decay_right", "oracle_omega_sq", "oracle_diff"]
    rows = []
    prof_rows = []
    for omega in raw_roots:
        mode = next((m for m in modes if abs(m.omega - omega) < 1e-9), None)
        osq = omega * omega
        oracle = min(oracle_vals, key=lambda v: abs(v - osq), default=None)
        rows.append({
            "root_omega": omega,
            "verified": mode is not None,
            "omega_sq": osq,
            "c1": None if mode is None else mode.c1,
            "c2": None if mode is None else mode.c2,
            "decay_left": None if mode is None else mode.decay_left,
            "decay_right": None if mode is None else mode.decay_right,
            "oracle_omega_sq": oracle,
            "oracle_diff": None if oracle is None else abs(oracle - osq),
        })
    for i, mode in enumerate(modes):
        for cell, ua, ub in sorted(mode.profile):
            prof_rows.append({"mode_index": i, "cell": cell,
                              "u_a": ua, "u_b": ub})
    tables = {"modes": (cols, rows)}
    if args.out or args.format == "json":
        tables["profile"] = (["mode_index", "cell", "u_a", "u_b"], prof_rows)
    return tables


def _cmd_bands2d(args):
    beta = _check_beta(args.beta)
    if args.grid < 2:
        raise CliError("grid", f"must be >= 2, got {args.grid}")
    if args.a <= 0:
        raise CliError("a", f"must be positive, got {args.a}")
    params = honeycomb2d.HoneycombParams(beta=beta, a=args.a)
    ticks = np.linspace(0.0, 1.0, args.grid)
    cols = ["kappa1", "kappa2", "lambda_minus", "lambda_plus"]
    rows = []
    for k1 in ticks:
        for k2 in ticks:
            s = honeycomb2d.dispersion_2d(
                params, honeycomb2d.WaveVector2(float(k1), float(k2), args.a))
            rows.append({"kappa1": float(k1), "kappa2": float(k2),
                         "lambda_minus": s.lambda_minus,
                         "lambda_plus": s.lambda_plus})
    return {"": (cols, rows)}


def _cmd_dirac(args):
    if args.beta != 0.0:
        raise CliError("beta", "must be 0: a nonzero mass contrast opens the "
                               "band gap and removes the Dirac point",
                       exit_code=3)
    if args.valley not in ("K1", "K4"):
        raise CliError("valley", f"must be K1|K4, got {args.valley!r}")
    try:
        h_steps = tuple(float(tok) for tok in args.h_steps.split(","))
    except ValueError:
        raise CliError("h-steps", f"not a comma list of floats: {args.h_steps!r}")
    if args.directions < 8:
        raise CliError("directions", f"must be >= 8, got {args.directions}")
    params = honeycomb2d.HoneycombParams(beta=0.0, a=args.a)
    try:
        rep = honeycomb2d.dirac_check(params, args.valley, h_steps,
                                      args.directions)
    except ValueError as exc:
        raise CliError("h-steps", str(exc))
    cols = ["direction_angle", "slope_minus", "slope_plus", "lambda_star",
            "m_matrix_residual", "multiplicity_two"]
    rows = [{"direction_angle": float(th),
             "slope_minus": float(rep.slopes_minus[i, -1]),
             "slope_plus": float(rep.slopes_plus[i, -1]),
             "lambda_star": rep.lambda_star,
             "m_matrix_residual": rep.m_matrix_residual,
             "multiplicity_two": rep.multiplicity_two}
            for i, th in enumerate(rep.direction_angles)]
    return {"": (cols, rows)}


def _cmd_chern(args):
    beta = _check_beta(args.beta, allow_zero=False)
    if args.valley not in honeycomb2d.K_POINTS_REDUCED:
        raise CliError("valley", f"must be one of K1..K6, got {args.valley!r}")
    if args.band not in ("minus", "plus"):
        raise CliError("band", f"must be minus|plus, got {args.band!r}")
    if args.n < 64 or args.n % 2:
        raise CliError("n", f"must be even and >= 64, got {args.n}")
    params = honeycomb2d.HoneycombParams(beta=beta, a=args.a)
    k1_norm = 4.0 * np.pi / (3.0 * args.a)
    radius = args.radius if args.radius is not None else 0.05 * k1_norm
    if not 0.0 < radius <= 0.1 * k1_norm:
        raise CliError("radius",
                       f"must be in (0, 0.1*|K1|] = (0, {0.1 * k1_norm:.9g}], "
                       f"got {radius}")
    res = honeycomb2d.chern_discrete(params, args.valley, args.band,
                                     radius, args.n, args.pairing)
    cols = ["beta", "valley", "band", "radius", "n_points", "raw_sum", "value"]
    return {"": (cols, [{"beta": beta, "valley": res.valley, "band": res.band,
                         "radius": res.radius, "n_points": res.n_points,
                         "raw_sum": res.raw_sum, "value": res.value}])}


def _cmd_berry(args):
    beta = _check_beta(args.beta, allow_zero=False)
    if args.band not in ("minus", "plus"):
        raise CliError("band", f"must be minus|plus, got {args.band!r}")
    if args.n <= 0 or args.n % 6:
        raise CliError("n", f"must be a positive multiple of 6, got {args.n}")
    params = honeycomb2d.HoneycombParams(beta=beta, a=args.a)
    phase = honeycomb2d.berry_bz_boundary(params, args.band, args.n)
    cols = ["beta", "band", "n_points", "phase"]
    return {"": (cols, [{"beta": beta, "band": args.band,
                         "n_points": args.n, "phase": phase}])}


def _cmd_edge2d(args):
    beta = _check_beta(args.beta, allow_zero=False)
    if args.kpar_samples < 2:
        raise CliError("kpar-samples", f"must be >= 2, got {args.kpar_samples}")
    if args.width < 8:
        raise CliError("width", f"must be >= 8, got {args.width}")
    params = honeycomb2d.HoneycombParams(beta=beta, a=args.a)
    cols = ["k_par", "lambda_minus", "lambda_plus", "omega1_sq", "omega2_sq",
            "omega3_sq", "omega4_sq", "ribbon_omega1_sq", "ribbon_omega2_sq"]
    rows = []
    for kp in np.linspace(0.0, 2.0 * np.pi / args.a, args.kpar_samples):
        kp = float(kp)
        ef = honeycomb2d.edge_frequencies_2d(params, kp)
        bands = honeycomb2d.interface_bands(params, kp)
        rep = finite.spectrum(finite.assemble_ribbon(params, kp, args.width))
        in_gap = sorted(m.omega_sq for m in rep.gap_modes)
        r1 = r2 = None
        if len(in_gap) == 2:
            lo, hi = in_gap
            t1, t2 = ef.omega_sq[0], ef.omega_sq[1]
            if abs(lo - t1) + abs(hi - t2) <= abs(lo - t2) + abs(hi - t1):
                r1, r2 = lo, hi
            else:
                r1, r2 = hi, lo
        rows.append({"k_par": kp,
                     "lambda_minus": bands.lambda_minus,
                     "lambda_plus": bands.lambda_plus,
                     "omega1_sq": ef.omega_sq[0], "omega2_sq": ef.omega_sq[1],
                     "omega3_sq": ef.omega_sq[2], "omega4_sq": ef.omega_sq[3],
                     "ribbon_omega1_sq": r1, "ribbon_omega2_sq": r2})
    return {"": (cols, rows)}


def _cmd_ribbon(args):
    beta = _check_beta(args.beta)
    if args.width < 8:
        raise CliError("width", f"must be >= 8, got {args.width}")
    if args.topology not in ("ring", "clamped"):
        raise CliError("topology", f"must be ring|clamped, got {args.topology!r}")
    params = honeycomb2d.HoneycombParams(beta=beta, a=args.a)
    if not 0.0 <= args.kpar <= 2.0 * np.pi / args.a + 1e-12:
        raise CliError("kpar", f"must lie in [0, 2pi/a], got {args.kpar}")
    model = finite.assemble_ribbon(params, args.kpar, args.width, args.topology)
    rep = finite.spectrum(model)
    lo, hi = rep.gap_window
    cols = ["index", "omega_sq", "in_gap"]
    rows = [{"index": i, "omega_sq": float(v), "in_gap": bool(lo < v < hi)}
            for i, v in enumerate(rep.eigenvalues)]
    return {"": (cols, rows)}


# ----------------------------- simulate -----------------------------------

_INITIAL_KINDS = ("edge_mode", "bloch_packet", "point_impulse")


def _cfg_get(cfg: dict, field: str, kind: type, default=None, required=False):
    parts = field.split(".")
    node = cfg
    for p in parts[:-1]:
        node = node.get(p, {})
    if parts[-1] not in node:
        if required:
            raise CliError(field, "required field missing")
        return default
    value = node[parts[-1]]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise CliError(field, f"expected {kind.__name__}, got {value!r}")
    return value


def _build_sim_model(cfg: dict):
    kind = _cfg_get(cfg, "model.kind", str, required=True)
    if kind == "chain":
        gl = _cfg_get(cfg, "model.gamma_left", float, required=True)
        gr = _cfg_get(cfg, "model.gamma_right", float, required=True)
        if not abs(gl) < 1:
            raise CliError("model.gamma_left", f"must satisfy |gamma| < 1, got {gl}")
        if not abs(gr) < 1:
            raise CliError("model.gamma_right", f"must satisfy |gamma| < 1, got {gr}")
        cells = _cfg_get(cfg, "model.cells", int, default=50)
        boundary = _cfg_get(cfg, "model.boundary", str, default="fixed")
        if boundary not in ("fixed", "free"):
            raise CliError("model.boundary", f"must be fixed|free, got {boundary!r}")
        if cells < 4:
            raise CliError("model.cells", f"must be >= 4, got {cells}")
        return finite.assemble_chain(chain1d.ChainParams(gl),
                                     chain1d.ChainParams(gr), cells, boundary)
    if kind == "ribbon":
        beta = _cfg_get(cfg, "model.beta", float, required=True)
        if not abs(beta) < 1:
            raise CliError("model.beta", f"must satisfy |beta| < 1, got {beta}")
        a = _cfg_get(cfg, "model.a", float, default=1.0)
        k_par = _cfg_get(cfg, "model.k_par", float, required=True)
        width = _cfg_get(cfg, "model.width", int, default=40)
        topology = _cfg_get(cfg, "model.topology", str, default="ring")
        if topology not in ("ring", "clamped"):
            raise CliError("model.topology", f"must be ring|clamped, got {topology!r}")
        if width < 8:
            raise CliError("model.width", f"must be >= 8, got {width}")
        if not 0.0 <= k_par <= 2.0 * np.pi / a + 1e-12:
            raise CliError("model.k_par", f"must lie in [0, 2pi/a], got {k_par}")
        params = honeycomb2d.HoneycombParams(beta=beta, a=a)
        return finite.assemble_ribbon(params, k_par, width, topology)
    raise CliError("model.kind", f"must be chain|ribbon, got {kind!r}")


def _build_initial(cfg: dict, model) -> finite.SimState:
    kind = _cfg_get(cfg, "initial.kind", str, required=True)
    n = model.n_dofs
    complex_model = np.iscomplexobj(model.stiffness)
    dtype = complex if complex_model else float
    pos = np.zeros(n, dtype=dtype)
    vel = np.zeros(n, dtype=dtype)
    if kind == "edge_mode":
        rep = finite.spectrum(model)
        if not rep.gap_modes:
            raise CliError("initial.kind",
                           "no in-gap mode exists for this model", exit_code=3)
        index = _cfg_get(cfg, "initial.mode_index", int, default=None)
        if index is None:
            mode = max(rep.gap_modes, key=lambda m: m.interface_fraction)
        elif 0 <= index < len(rep.gap_modes):
            mode = rep.gap_modes[index]
        else:
            raise CliError("initial.mode_index",
                           f"must be in [0, {len(rep.gap_modes)}), got {index}")
        pos = mode.profile.astype(dtype)
    elif kind == "bloch_packet":
        mu = _cfg_get(cfg, "initial.mu", float, default=float(np.pi / 2))
        width = _cfg_get(cfg, "initial.width_cells", float, default=8.0)
        center = _cfg_get(cfg, "initial.center", float, default=0.0)
        if width <= 0:
            raise CliError("initial.width_cells", f"must be positive, got {width}")
        for cell, site in model.dof_labels():
            if site != "a":
                continue
            x = cell + (0.5 if cell < 0 else -0.5)
            env = math.exp(-0.5 * ((x - center) / width) ** 2)
            pos[model.dof_index(cell, "a")] = env * math.cos(mu * x)
    elif kind == "point_impulse":
        cell = _cfg_get(cfg, "initial.cell", int, default=1)
        site = _cfg_get(cfg, "initial.site", str, default="a")
        if site not in ("a", "b"):
            raise CliError("initial.site", f"must be a|b, got {site!r}")
        try:
            vel[model.dof_index(cell, site)] = 1.0
        except ValueError:
            raise CliError("initial.cell", f"cell {cell} outside the model")
    else:
        raise CliError("initial.kind",
                       f"must be one of {'|'.join(_INITIAL_KINDS)}, got {kind!r}")
    return finite.SimState(time=0.0, positions=pos, velocities=vel)


def _cmd_simulate(args):
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise CliError("config", f"cannot read {args.config!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliError("config", f"invalid JSON: {exc}")
    if not isinstance(cfg, dict):
        raise CliError("config", "top level must be an object")

    model = _build_sim_model(cfg)
    state = _build_initial(cfg, model)
    dt = _cfg_get(cfg, "dt", float, required=True)
    steps = _cfg_get(cfg, "steps", int, required=True)
    if dt <= 0:
        raise CliError("dt", f"must be positive, got {dt}")
    if steps < 1:
        raise CliError("steps", f"must be >= 1, got {steps}")
    probes = cfg.get("probes", [])
    if not isinstance(probes, list) or any(
            not isinstance(p, int) or isinstance(p, bool) for p in probes):
        raise CliError("probes", "must be a list of integer dof indices")
    for p in probes:
        if not 0 <= p < model.n_dofs:
            raise CliError("probes", f"dof {p} outside [0, {model.n_dofs})")

    limit = finite.stability_limit(model)
    if dt > limit * (1.0 + 1e-12):
        raise CliError("dt", f"exceeds the stability bound 0.2/omega_max = "
                             f"{limit:.9g}", exit_code=3)
    result = finite.simulate(model, state, dt, steps, probes)

    complex_series = np.iscomplexobj(result.probe_series)
    energy_cols = ["step", "time", "energy"]
    for p in probes:
        if complex_series:
            energy_cols += [f"probe_{p}_re", f"probe_{p}_im"]
        else:
            energy_cols.append(f"probe_{p}")
    energy_rows = []
    for i in range(len(result.energies)):
        row = {"step": i, "time": float(result.times[i]),
               "energy": float(result.energies[i])}
        for j, p in enumerate(probes):
            v = result.probe_series[i, j]
            if complex_series:
                row[f"probe_{p}_re"] = float(np.real(v))
                row[f"probe_{p}_im"] = float(np.imag(v))
            else:
                row[f"probe_{p}"] = float(np.real(v))
        energy_rows.append(row)

    labels = model.dof_labels()
    prof_cols = ["dof", "cell", "site", "energy"]
    prof_rows = [{"dof": i, "cell": labels[i][0], "site": labels[i][1],
                  "energy": float(result.final_profile[i])}
                 for i in range(model.n_dofs)]
    return {"energy": (energy_cols, energy_rows),
            "profile": (prof_cols, prof_rows)}


# =============================== wiring ====================================

_COMMANDS = {
    "bands1d": _cmd_bands1d,
    "zak": _cmd_zak,
    "edge1d": _cmd_edge1d,
    "bands2d": _cmd_bands2d,
    "dirac": _cmd_dirac,
    "chern": _cmd_chern,
    "berry": _cmd_berry,
    "edge2d": _cmd_edge2d,
    "ribbon": _cmd_ribbon,
    "simulate": _cmd_simulate,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", type=str, default=None,
                        help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized diagnostics (reserved)")

    parser = _Parser(prog="topolattice",
                     description="Band topology and interface modes of 1D/2D "
                                 "spring-mass lattices")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bands1d", parents=[common],
                       help="diatomic chain dispersion on a uniform mu grid")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--samples", type=int, default=201)

    p = sub.add_parser("zak", parents=[common],
                       help="discrete Zak phase of one band")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--n", type=int, default=2048)
    p.add_argument("--band", default="minus")

    p = sub.add_parser("edge1d", parents=[common],
                       help="1D interface modes: closed form vs finite chain")
    p.add_argument("--gamma-left", type=float, required=True)
    p.add_argument("--gamma-right", type=float, required=True)
    p.add_argument("--cells", type=int, default=50)

    p = sub.add_parser("bands2d", parents=[common],
                       help="honeycomb bands on a reduced-coordinate grid")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--a", type=float, default=1.0)

    p = sub.add_parser("dirac", parents=[common],
                       help="Dirac-cone slopes at a K corner (beta = 0)")
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--valley", default="K1")
    p.add_argument("--h-steps", default="1e-3,1e-4",
                   help="comma list of decreasing step sizes")
    p.add_argument("--directions", type=int, default=8)

    p = sub.add_parser("chern", parents=[common],
                       help="discrete valley Chern number")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--valley", default="K1")
    p.add_argument("--band", default="plus")
    p.add_argument("--radius", type=float, default=None,
                   help="loop radius (default 0.05*|K1|)")
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--pairing", choices=("plain", "mass"), default="plain")

    p = sub.add_parser("berry", parents=[common],
                       help="Berry phase around the BZ boundary")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--band", default="plus")
    p.add_argument("--n", type=int, default=600)
    p.add_argument("--a", type=float, default=1.0)

    p = sub.add_parser("edge2d", parents=[common],
                       help="interface band edges and edge frequencies vs k_par")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--kpar-samples", type=int, default=33)
    p.add_argument("--width", type=int, default=40)

    p = sub.add_parser("ribbon", parents=[common],
                       help="full ribbon spectrum at one k_par")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--kpar", type=float, required=True)
    p.add_argument("--width", type=int, default=40)
    p.add_argument("--topology", default="ring")

    p = sub.add_parser("simulate", parents=[common],
                       help="velocity-Verlet run from a JSON config")
    p.add_argument("config", type=str)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        tables = _COMMANDS[args.command](args)
        _emit(args, tables)
    except CliError as exc:
        print(f"error: {exc.field}: {exc.reason}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        # library-level precondition that slipped past CLI validation
        print(f"error: args: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
