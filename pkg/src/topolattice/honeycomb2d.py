"""Honeycomb spring-mass lattice: Bloch bands, Dirac cones, valley Chern
numbers, and interface edge frequencies.

THEORY
------
Each unit cell carries masses m_a = m(1+beta), m_b = m(1-beta) joined by
unit springs along the three nearest-neighbour bonds.  In reduced wave
coordinates kappa = kappa1 b1 + kappa2 b2 the Bloch reduction gives the
(mass-weighted, non-Hermitian but real-spectrum) 2x2 matrix

    M(kappa) = [[3/(1+beta), conj(d)/(1+beta)],
                [d/(1-beta),        3/(1-beta)]],
    d(kappa) = -1 - e^{i 2 pi kappa1} - e^{i 2 pi kappa2},

whose eigenvalues (squared frequencies) are

    lambda_pm = (3 +- S)/(1-beta^2),   S = sqrt(9 beta^2 + (1-beta^2)|d|^2).

At beta = 0 the bands touch conically at the hexagon corners K1..K6 where
d = 0; any beta != 0 opens a gap of width 6|beta|/(1-beta^2).  Small loops
around the K corners pick up quantized-in-sign discrete Berry phases (valley
Chern numbers), while the loop around the full Brillouin-zone boundary
carries zero phase.  A zigzag seam between beta and -beta half-planes (or
the periodic two-seam closure used by the ribbon oracle) supports interface
bands whose squared frequencies have the closed forms omega_1^2..omega_4^2
implemented in ``edge_frequencies_2d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .numerics import null_vector_2x2

__all__ = [
    "HoneycombParams",
    "WaveVector2",
    "Dispersion2DSample",
    "DiracReport",
    "ChernResult",
    "InterfaceBands",
    "Transfer2D",
    "EdgeFrequencies2D",
    "K_POINTS_REDUCED",
    "k_point",
    "hexagon_vertices",
    "lattice_vectors",
    "reciprocal_vectors",
    "d_function",
    "bloch_matrix_2d",
    "dispersion_2d",
    "dirac_check",
    "loop_phase",
    "chern_discrete",
    "berry_bz_boundary",
    "interface_bands",
    "transfer_2d",
    "edge_frequencies_2d",
    "gap_survey",
]

_SQRT3 = math.sqrt(3.0)


# ========================== parameters & vectors ===========================

@dataclass(frozen=True)
class HoneycombParams:
    """Mass contrast beta in (-1,1), lattice constant a, stiffness k, mean
    mass m (k and m only rescale frequencies; formulas below take k=m=1)."""

    beta: float
    a: float = 1.0
    k: float = 1.0
    m: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.beta) and abs(self.beta) < 1.0):
            raise ValueError(f"HoneycombParams: |beta| must be < 1, got {self.beta}")
        if not (self.a > 0 and self.k > 0 and self.m > 0):
            raise ValueError("HoneycombParams: a, k, m must be positive")

    @property
    def m_a(self) -> float:
        return self.m * (1.0 + self.beta)

    @property
    def m_b(self) -> float:
        return self.m * (1.0 - self.beta)


def lattice_vectors(a: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Direct lattice vectors a1 = a(1,0), a2 = a(1/2, sqrt(3)/2)."""
    return np.array([a, 0.0]), np.array([0.5 * a, 0.5 * _SQRT3 * a])


def reciprocal_vectors(a: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Reciprocal vectors b1 = (2pi/a)(1, -1/sqrt3), b2 = (2pi/a)(0, 2/sqrt3)."""
    c = 2.0 * np.pi / a
    return np.array([c, -c / _SQRT3]), np.array([0.0, 2.0 * c / _SQRT3])


@dataclass(frozen=True)
class WaveVector2:
    """Wave vector in reduced coordinates kappa = kappa1 b1 + kappa2 b2."""

    kappa1: float
    kappa2: float
    a: float = 1.0

    @property
    def cartesian(self) -> np.ndarray:
        c = 2.0 * np.pi / self.a
        return np.array([c * self.kappa1,
                         c * (2.0 * self.kappa2 - self.kappa1) / _SQRT3])

    @classmethod
    def from_cartesian(cls, xy, a: float = 1.0) -> "WaveVector2":
        x, y = float(xy[0]), float(xy[1])
        k1 = a * x / (2.0 * np.pi)
        k2 = a * (x + _SQRT3 * y) / (4.0 * np.pi)
        return cls(kappa1=k1, kappa2=k2, a=a)


# Brillouin-zone corners in reduced coordinates (a-independent); K1 sits at
# cartesian (4 pi / 3a, 0) and the six corners step counterclockwise by 60
# degrees.  K1, K3, K5 are one sublattice-equivalent triple, K2, K4, K6 the
# other.
K_POINTS_REDUCED = {
    "K1": (2.0 / 3.0, 1.0 / 3.0),
    "K2": (1.0 / 3.0, 2.0 / 3.0),
    "K3": (-1.0 / 3.0, 1.0 / 3.0),
    "K4": (-2.0 / 3.0, -1.0 / 3.0),
    "K5": (-1.0 / 3.0, -2.0 / 3.0),
    "K6": (1.0 / 3.0, -1.0 / 3.0),
}


def k_point(name: str, a: float = 1.0) -> WaveVector2:
    """Named Brillouin-zone corner K1..K6."""
    if name not in K_POINTS_REDUCED:
        raise ValueError(f"k_point: unknown corner {name!r} (expected K1..K6)")
    k1, k2 = K_POINTS_REDUCED[name]
    return WaveVector2(kappa1=k1, kappa2=k2, a=a)


def hexagon_vertices(a: float = 1.0) -> list[WaveVector2]:
    """The six BZ corners in counterclockwise traversal order K1..K6."""
    return [k_point(f"K{i}", a) for i in range(1, 7)]


# ============================ Bloch dispersion =============================

def _d_reduced(k1, k2):
    """Vectorized d ( -1 - e^{i2pi k1} - e^{i2pi k2} ) on reduced coords."""
    return -1.0 - np.exp(2j * np.pi * np.asarray(k1)) \
        - np.exp(2j * np.pi * np.asarray(k2))


def d_function(kappa: WaveVector2) -> complex:
    """Structure factor d(kappa) = -1 - e^{i 2pi kappa1} - e^{i 2pi kappa2}."""
    return complex(_d_reduced(kappa.kappa1, kappa.kappa2))


def bloch_matrix_2d(params: HoneycombParams, kappa: WaveVector2) -> np.ndarray:
    """The 2x2 Bloch matrix M(kappa) (mass-divided; eigenvalues omega^2)."""
    b = params.beta
    d = d_function(kappa)
    return np.array([
        [3.0 / (1.0 + b), np.conj(d) / (1.0 + b)],
        [d / (1.0 - b), 3.0 / (1.0 - b)],
    ])


def _band_vectors(beta: float, d, band: str) -> np.ndarray:
    """Mass-weight-normalized eigenvectors of M for one band, vectorized in d.

    Two algebraically parallel candidate forms exist per band; each
    degenerates to the zero vector at d = 0 for one sign of beta, so the
    sign of beta selects the form that stays bounded away from zero.  Both
    forms (and the selection, which depends only on beta) map kappa -> -kappa
    to the exact complex conjugate, which the loop-phase routines rely on.

    Raises:
        ValueError: at a true degeneracy (beta = 0 and d = 0) where the
            eigenspace has multiplicity two.
    """
    d = np.asarray(d, dtype=complex)
    abs_d2 = d.real * d.real + d.imag * d.imag
    s = np.sqrt(9.0 * beta * beta + (1.0 - beta * beta) * abs_d2)
    if np.any(s < 1e-14):
        raise ValueError(
            "eigenvectors undefined at a Dirac degeneracy (multiplicity two)")
    if band == "plus":
        if beta >= 0.0:
            w1, w2 = np.conj(d) * (1.0 - beta), 3.0 * beta + s
        else:
            w1, w2 = s - 3.0 * beta, d * (1.0 + beta)
    elif band == "minus":
        if beta <= 0.0:
            w1, w2 = np.conj(d) * (1.0 - beta), 3.0 * beta - s
        else:
            w1, w2 = s + 3.0 * beta, -d * (1.0 + beta)
    else:
        raise ValueError(f"band must be minus|plus, got {band!r}")
    w1 = np.asarray(w1, dtype=complex)
    w2 = np.asarray(w2, dtype=complex)
    w1, w2 = np.broadcast_arrays(w1, w2)
    chi = np.sqrt((1.0 + beta) * (w1.real ** 2 + w1.imag ** 2)
                  + (1.0 - beta) * (w2.real ** 2 + w2.imag ** 2))
    return np.stack([w1 / chi, w2 / chi], axis=-1)


@dataclass(frozen=True)
class Dispersion2DSample:
    """Both bands at one wave vector; eigenvectors optional.

    Stored eigenvectors satisfy the mass-weighted normalization
    v* . diag(1+beta, 1-beta) . v = 1.
    """

    kappa: WaveVector2
    d_value: complex
    lambda_minus: float
    lambda_plus: float
    eigenvectors: Optional[tuple[np.ndarray, np.ndarray]] = None


def dispersion_2d(params: HoneycombParams, kappa: WaveVector2,
                  want_vectors: bool = False) -> Dispersion2DSample:
    """Squared-frequency bands lambda_pm(kappa), optionally with eigenvectors.

    Raises:
        ValueError: eigenvectors requested at a Dirac degeneracy
            (beta = 0 and d(kappa) = 0), where the multiplicity is two.
    """
    b = params.beta
    d = d_function(kappa)
    abs_d2 = d.real * d.real + d.imag * d.imag
    s = math.sqrt(9.0 * b * b + (1.0 - b * b) * abs_d2)
    denom = 1.0 - b * b
    vectors = None
    if want_vectors:
        vectors = (_band_vectors(b, d, "minus").reshape(2),
                   _band_vectors(b, d, "plus").reshape(2))
    return Dispersion2DSample(kappa=kappa, d_value=d,
                              lambda_minus=(3.0 - s) / denom,
                              lambda_plus=(3.0 + s) / denom,
                              eigenvectors=vectors)


# ============================== Dirac points ===============================

@dataclass(frozen=True)
class DiracReport:
    """Cone diagnostics at one K corner (beta = 0 only).

    slopes_minus/plus have shape (n_directions, len(h_steps)) and hold the
    one-sided finite-difference estimates (lambda(K + h w) - lambda(K))/h;
    the cone is non-smooth at K, so centered differences would be wrong.
    multiplicity_two is the machine-level check that M(K) equals 3 I.
    """

    valley: str
    lambda_star: float
    direction_angles: np.ndarray
    h_steps: tuple
    slopes_minus: np.ndarray
    slopes_plus: np.ndarray
    m_matrix_residual: float
    multiplicity_two: bool


def dirac_check(params: HoneycombParams, valley: str = "K1",
                h_steps: Sequence[float] = (1e-3, 1e-4),
                n_directions: int = 8) -> DiracReport:
    """Verify the conical band touching at a K corner of the beta=0 lattice.

    The expansion lambda_pm = 3 +- (a sqrt(3)/2) |kappa - K| + O(|.|^2)
    predicts direction-independent slopes +-a sqrt(3)/2.

    Raises:
        ValueError: beta != 0 (spectrum is gapped, no Dirac point), valley
            not in {K1, K4}, fewer than 8 directions, or h_steps not a
            decreasing positive sequence.
    """
    if params.beta != 0.0:
        raise ValueError("dirac_check: beta != 0 opens a band gap; "
                         "no Dirac point exists")
    if valley not in ("K1", "K4"):
        raise ValueError(f"dirac_check: valley must be K1 or K4, got {valley!r}")
    if n_directions < 8:
        raise ValueError("dirac_check: need at least 8 directions")
    hs = tuple(float(h) for h in h_steps)
    if not hs or any(h <= 0 for h in hs) \
            or any(h2 >= h1 for h1, h2 in zip(hs, hs[1:])):
        raise ValueError("dirac_check: h_steps must be positive and decreasing")

    center = k_point(valley, params.a)
    base = dispersion_2d(params, center)
    lambda_star = 0.5 * (base.lambda_minus + base.lambda_plus)
    m_mat = bloch_matrix_2d(params, center)
    residual = float(np.abs(m_mat - 3.0 * np.eye(2)).max())

    angles = 2.0 * np.pi * np.arange(n_directions) / n_directions
    slopes_minus = np.empty((n_directions, len(hs)))
    slopes_plus = np.empty((n_directions, len(hs)))
    c0 = center.cartesian
    for i, th in enumerate(angles):
        w = np.array([math.cos(th), math.sin(th)])
        for j, h in enumerate(hs):
            kk = WaveVector2.from_cartesian(c0 + h * w, params.a)
            sample = dispersion_2d(params, kk)
            slopes_minus[i, j] = (sample.lambda_minus - base.lambda_minus) / h
            slopes_plus[i, j] = (sample.lambda_plus - base.lambda_plus) / h
    return DiracReport(valley=valley, lambda_star=lambda_star,
                       direction_angles=angles, h_steps=hs,
                       slopes_minus=slopes_minus, slopes_plus=slopes_plus,
                       m_matrix_residual=residual,
                       multiplicity_two=(residual <= 1e-12))


# ========================= discrete Berry phases ===========================

def loop_phase(vectors: np.ndarray,
               weight: Optional[np.ndarray] = None) -> tuple[float, float]:
    """Accumulated discrete Berry phase of a closed loop of eigenvectors.

    vectors has shape (N, 2); the loop closes from sample N-1 back to 0.
    Returns (raw_sum, value) where raw_sum = sum_j Im log <v_j, v_{j+1}> and
    value = -(1/2pi) * (raw_sum reduced into the branch (-pi, pi]).  The
    optional weight inserts a diagonal metric into the pairing.

    Raises:
        ValueError: any per-step overlap magnitude below 1e-12 (the loop is
            too coarsely discretized for the phase to be trustworthy).
    """
    v = np.asarray(vectors, dtype=complex)
    nxt = np.roll(v, -1, axis=0)
    if weight is not None:
        nxt = nxt * np.asarray(weight)[None, :]
    overlaps = np.sum(np.conj(v) * nxt, axis=1)
    if np.any(np.abs(overlaps) < 1e-12):
        raise ValueError("loop_phase: discretization too coarse "
                         "(per-step overlap magnitude below 1e-12)")
    raw = float(np.sum(np.angle(overlaps)))
    wrapped = (raw + np.pi) % (2.0 * np.pi) - np.pi
    if wrapped <= -np.pi:
        wrapped = np.pi  # branch is (-pi, pi]
    return raw, -wrapped / (2.0 * np.pi)


@dataclass(frozen=True)
class ChernResult:
    """Discrete valley Chern number from a small loop around one K corner."""

    valley: str
    band: str
    radius: float
    n_points: int
    raw_sum: float
    value: float


def chern_discrete(params: HoneycombParams, valley: str, band: str,
                   radius: Optional[float] = None, n_points: int = 512,
                   pairing: str = "plain") -> ChernResult:
    """Discrete valley Chern number on a circle of given radius around a K corner.

    Loop points are kappa_j = K + r (cos theta_j, sin theta_j) in cartesian
    coordinates with theta_j = -pi + (j-1) 2pi/N.  Overlaps use the plain
    Hermitian inner product of mass-weight-normalized eigenvectors
    (pairing="mass" switches to the mass-weighted pairing for comparison).
    The quantity is quantized in sign, not value: band minus carries the
    sign of beta, band plus the opposite, and corners K1/K4 give exact
    negations of each other.

    Raises:
        ValueError: beta = 0 (degenerate band, no valley), radius above
            0.1*|K1| (loop would leave the valley), n_points odd or < 64,
            unknown pairing, or an overlap magnitude below 1e-12.
    """
    if params.beta == 0.0:
        raise ValueError("chern_discrete: beta = 0 is degenerate (no gap)")
    if band not in ("minus", "plus"):
        raise ValueError(f"chern_discrete: band must be minus|plus, got {band!r}")
    if pairing not in ("plain", "mass"):
        raise ValueError(f"chern_discrete: pairing must be plain|mass, got {pairing!r}")
    center = k_point(valley, params.a)  # validates the valley name
    k1_norm = 4.0 * np.pi / (3.0 * params.a)
    r = 0.05 * k1_norm if radius is None else float(radius)
    if not 0.0 < r <= 0.1 * k1_norm:
        raise ValueError(f"chern_discrete: radius must be in (0, 0.1*|K1|] "
                         f"= (0, {0.1 * k1_norm:.6g}], got {r}")
    n = int(n_points)
    if n < 64 or n % 2 != 0:
        raise ValueError("chern_discrete: n_points must be even and >= 64")

    thetas = -np.pi + 2.0 * np.pi * np.arange(n) / n
    pts = center.cartesian[None, :] \
        + r * np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
    k1 = params.a * pts[:, 0] / (2.0 * np.pi)
    k2 = params.a * (pts[:, 0] + _SQRT3 * pts[:, 1]) / (4.0 * np.pi)
    vecs = _band_vectors(params.beta, _d_reduced(k1, k2), band)
    weight = None
    if pairing == "mass":
        weight = np.array([1.0 + params.beta, 1.0 - params.beta])
    raw, value = loop_phase(vecs, weight)
    return ChernResult(valley=valley, band=band, radius=r, n_points=n,
                       raw_sum=raw, value=value)


def berry_bz_boundary(params: HoneycombParams, band: str,
                      n_points: int = 600) -> float:
    """Accumulated Berry phase around the hexagonal Brillouin-zone boundary.

    n_points must be a positive multiple of 6 so all six corners K1..K6 are
    loop nodes (n_points/6 equispaced samples per edge).  The path maps onto
    itself under kappa -> -kappa, so the accumulated phase cancels pairwise
    and the return value is zero up to rounding for any gapped beta.

    Raises:
        ValueError: beta = 0, n_points not a positive multiple of 6, or an
            overlap magnitude below 1e-12.
    """
    if params.beta == 0.0:
        raise ValueError("berry_bz_boundary: beta = 0 is degenerate (no gap)")
    n = int(n_points)
    if n <= 0 or n % 6 != 0:
        raise ValueError("berry_bz_boundary: n_points must be a positive "
                         "multiple of 6")
    m = n // 6
    verts = np.array([v.cartesian for v in hexagon_vertices(params.a)])
    t = np.arange(m)[:, None] / m
    segs = [verts[i][None, :] + t * (verts[(i + 1) % 6] - verts[i])[None, :]
            for i in range(6)]
    pts = np.concatenate(segs, axis=0)
    k1 = params.a * pts[:, 0] / (2.0 * np.pi)
    k2 = params.a * (pts[:, 0] + _SQRT3 * pts[:, 1]) / (4.0 * np.pi)
    vecs = _band_vectors(params.beta, _d_reduced(k1, k2), band)
    raw, _ = loop_phase(vecs)
    return raw


# ============================== gap survey =================================

def gap_survey(params: HoneycombParams, n: int = 128,
               centered: bool = True) -> tuple[float, WaveVector2]:
    """Minimum of (lambda_plus - lambda_minus) over an n x n reduced grid.

    centered=True samples cell midpoints (j+1/2)/n, which halves the worst
    distance from a grid node to the K corners compared with the node grid
    j/n and correspondingly tightens the grid-resolution error of the
    minimum.  Returns (min_gap, arg-min wave vector).
    """
    if n < 2:
        raise ValueError("gap_survey: n must be >= 2")
    idx = (np.arange(n) + 0.5) / n if centered else np.arange(n) / n
    g1, g2 = np.meshgrid(idx, idx, indexing="ij")
    d = _d_reduced(g1, g2)
    b = params.beta
    s = np.sqrt(9.0 * b * b + (1.0 - b * b) * (d.real ** 2 + d.imag ** 2))
    gaps = 2.0 * s / (1.0 - b * b)
    flat = int(np.argmin(gaps))
    i, j = divmod(flat, n)
    return float(gaps[i, j]), WaveVector2(float(idx[i]), float(idx[j]), params.a)


# =========================== interface problem =============================

@dataclass(frozen=True)
class InterfaceBands:
    """Gap edges lambda_pm(k_par) of the interface-projected bulk bands."""

    k_par: float
    n_branch: int
    d_abs: float
    lambda_minus: float
    lambda_plus: float


def interface_bands(params: HoneycombParams, k_par: float) -> InterfaceBands:
    """Projected band edges at interface wave number k_par in [0, 2pi/a].

    The transverse minimization selects n in {0,1} with
    (-1)^n cos(k_par a^2/2) < 0 (either n when the cosine vanishes) and
    evaluates |d| = |1 + (-1)^n 2 cos(k_par a^2/2)| at that branch.
    """
    a = params.a
    if not 0.0 <= k_par <= 2.0 * np.pi / a + 1e-12:
        raise ValueError(f"interface_bands: k_par={k_par} outside [0, 2pi/a]")
    c = math.cos(0.5 * k_par * a * a)
    n_branch = 1 if c > 0.0 else 0
    d_abs = abs(1.0 + (1.0 if n_branch == 0 else -1.0) * 2.0 * c)
    b = params.beta
    s = math.sqrt(9.0 * b * b + (1.0 - b * b) * d_abs * d_abs)
    denom = 1.0 - b * b
    return InterfaceBands(k_par=k_par, n_branch=n_branch, d_abs=d_abs,
                          lambda_minus=(3.0 - s) / denom,
                          lambda_plus=(3.0 + s) / denom)


@dataclass(frozen=True)
class Transfer2D:
    """Interface transfer matrix and its decaying eigenpair at (k_par, omega^2).

    matrix is None in the decoupled limit z = 0 (k_par a^2 = pi), where the
    lattice splits into finite blocks and the decaying eigenvalue is taken
    as 0 by convention (one-step decay).
    """

    side: str
    k_par: float
    omega_sq: float
    tau: float
    sigma: float
    z: complex
    xi: float
    matrix: Optional[np.ndarray]
    decaying_eigenvalue: complex
    decaying_eigenvector: np.ndarray


def transfer_2d(params: HoneycombParams, side: str, k_par: float,
                omega_sq: float) -> Transfer2D:
    """Transfer matrix across one cell row, with the |lambda| < 1 eigenpair.

    With tau = 3-(1+beta) omega^2, sigma = 3-(1-beta) omega^2,
    z = 1+e^{i k_par a^2} and xi = tau sigma - 1 - |z|^2, the right-side
    matrix is T_R = (1/conj(z)) [[-|z|^2, conj(z) sigma], [-z tau,
    tau sigma - 1]] and T_L is its complex conjugate.  Its eigenvalues solve
    conj(z) lam^2 - xi lam + z = 0; the subunit root is evaluated in the
    cancellation-free form 2z/(xi + sign(xi) sqrt(xi^2 - 4|z|^2)).

    Raises:
        ValueError: omega_sq outside the open gap (no decaying eigenpair),
            or xi^2 - 4|z|^2 < 0 (omega_sq outside the admissible set).
    """
    if side not in ("left", "right"):
        raise ValueError(f"transfer_2d: side must be left|right, got {side!r}")
    bands = interface_bands(params, k_par)
    if not bands.lambda_minus < omega_sq < bands.lambda_plus:
        raise ValueError(
            f"transfer_2d: omega_sq={omega_sq} outside the open gap "
            f"({bands.lambda_minus}, {bands.lambda_plus})"
        )
    b = params.beta
    phi = k_par * params.a * params.a
    z = 1.0 + complex(math.cos(phi), math.sin(phi))
    tau = 3.0 - (1.0 + b) * omega_sq
    sigma = 3.0 - (1.0 - b) * omega_sq
    abs_z2 = z.real * z.real + z.imag * z.imag
    xi = tau * sigma - 1.0 - abs_z2

    if abs(z) < 1e-12:
        return Transfer2D(side=side, k_par=k_par, omega_sq=omega_sq, tau=tau,
                          sigma=sigma, z=z, xi=xi, matrix=None,
                          decaying_eigenvalue=0.0 + 0.0j,
                          decaying_eigenvector=np.array([1.0 + 0.0j, 0.0 + 0.0j]))

    disc = xi * xi - 4.0 * abs_z2
    if disc < 0.0:
        raise ValueError(
            f"transfer_2d: xi^2 - 4|z|^2 = {disc} < 0; omega_sq={omega_sq} "
            "is outside the admissible set"
        )
    sgn = 1.0 if xi >= 0.0 else -1.0
    lam_r = 2.0 * z / (xi + sgn * math.sqrt(disc))
    zc = np.conj(z)
    t_right = np.array([
        [-abs_z2 / zc, sigma],
        [-z * tau / zc, (tau * sigma - 1.0) / zc],
    ])
    if side == "right":
        t, lam = t_right, lam_r
    else:
        t, lam = np.conj(t_right), np.conj(lam_r)
    vec = null_vector_2x2(t, lam)
    return Transfer2D(side=side, k_par=k_par, omega_sq=omega_sq, tau=tau,
                      sigma=sigma, z=z, xi=xi, matrix=t,
                      decaying_eigenvalue=complex(lam),
                      decaying_eigenvector=vec)


@dataclass(frozen=True)
class EdgeFrequencies2D:
    """The four candidate interface frequencies at one k_par.

    omega_sq holds (omega_1^2 .. omega_4^2); only the first two fall in the
    open gap.  For those, amplitudes holds the (c1, c2) pair reconstructed
    from the first interface equation, decay the per-cell factor |lambda_R|,
    and matching_residuals the scaled residual of the second interface
    equation -- zero only for the branch the straight seam actually binds
    (the other branch lives on the complementary seam type).
    """

    k_par: float
    omega_sq: tuple
    in_gap: tuple
    amplitudes: tuple
    decay: tuple
    matching_residuals: tuple


def edge_frequencies_2d(params: HoneycombParams, k_par: float) -> EdgeFrequencies2D:
    """Closed-form edge-frequency candidates and their interface matching.

    With |z|^2 = 4 cos^2(k_par a^2 / 2) and c = 1 - beta^2:

        omega_1^2 = (2 + sqrt(4 beta^2 + c |z|^2)) / c
        omega_2^2 = (4 - sqrt(16 beta^2 + c |z|^2)) / c
        omega_3^2 = (2 - sqrt(4 beta^2 + c |z|^2)) / c
        omega_4^2 = (4 + sqrt(16 beta^2 + c |z|^2)) / c

    Raises:
        ValueError: beta = 0 (gap may close; no interface problem) or k_par
            outside [0, 2pi/a].
    """
    if params.beta == 0.0:
        raise ValueError("edge_frequencies_2d: beta = 0 closes the gap")
    b = params.beta
    bands = interface_bands(params, k_par)  # validates k_par
    phi_half = 0.5 * k_par * params.a * params.a
    abs_z2 = 4.0 * math.cos(phi_half) ** 2
    c = 1.0 - b * b
    r_a = math.sqrt(4.0 * b * b + c * abs_z2)
    r_b = math.sqrt(16.0 * b * b + c * abs_z2)
    omegas = ((2.0 + r_a) / c, (4.0 - r_b) / c,
              (2.0 - r_a) / c, (4.0 + r_b) / c)
    in_gap = tuple(bands.lambda_minus < w < bands.lambda_plus for w in omegas)

    amplitudes, decay, residuals = [], [], []
    for j in (0, 1):
        if not in_gap[j]:
            continue
        tr = transfer_2d(params, "right", k_par, omegas[j])
        lam = tr.decaying_eigenvalue
        factor = float((tr.tau * tr.sigma - np.conj(tr.z) * (lam + tr.z)).real)
        sigma = tr.sigma
        scale = max(1.0, abs(factor), abs(sigma))
        if abs(sigma) > 1e-12 * scale:
            amps = (1.0, factor / sigma)
        elif abs(factor) > 1e-12 * scale:
            amps = (0.0, 1.0)  # first equation forces c1 = 0
        else:
            amps = (1.0, 1.0)  # doubly degenerate: any pair matches
        res = max(abs(amps[0] * factor - amps[1] * sigma),
                  abs(amps[1] * factor - amps[0] * sigma))
        residuals.append(res / (scale * max(abs(amps[0]), abs(amps[1]))))
        amplitudes.append(amps)
        decay.append(abs(lam))
    return EdgeFrequencies2D(k_par=k_par, omega_sq=omegas, in_gap=in_gap,
                             amplitudes=tuple(amplitudes), decay=tuple(decay),
                             matching_residuals=tuple(residuals))
