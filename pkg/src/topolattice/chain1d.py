"""Diatomic spring-mass chain: dispersion, Zak phase, transfer matrices,
interface modes.

THEORY
------
A unit cell j carries two unit masses a_j, b_j.  The intra-cell spring is
k1 = k(1+gamma), the inter-cell spring (b_j to a_{j+1}) is k2 = k(1-gamma),
with |gamma| < 1.  With k = m = 1, Bloch waves u_{j+1} = e^{i mu} u_j reduce
the equations of motion to the 2x2 eigenvalue problem

    [[2, conj(a)], [a, 2]] v = omega^2 v,   a(mu) = -(1+gamma) - (1-gamma) e^{i mu},

so the two bands are lambda_pm(mu) = 2 +- |a(mu)| and the band gap (in
frequency omega) is I(gamma) = (sqrt(2(1-|gamma|)), sqrt(2(1+|gamma|))).
The discrete Zak phase of either band is quantized: 0 for gamma > 0, pi for
gamma < 0.  Joining a gamma_L chain (j <= -1) to a gamma_R chain (j >= 1)
through a k2_L bridge can bind an interface mode in the common gap; its
amplitudes decay per cell by the subunit eigenvalue of the side's transfer
matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .numerics import find_roots_bracketed, null_vector_2x2

__all__ = [
    "ChainParams",
    "Bands1DSample",
    "BandGap1D",
    "ZakResult",
    "Transfer1D",
    "EdgeMode1D",
    "dispersion_1d",
    "band_gap_1d",
    "common_gap_1d",
    "zak_discrete",
    "transfer_1d",
    "transfer_matrix_1d",
    "final_eqn_residual_1d",
    "final_eqn_roots_1d",
    "edge_mode_1d",
    "edge_modes_1d",
]


# =============================== parameters ================================

@dataclass(frozen=True)
class ChainParams:
    """Physical parameters of one diatomic chain.

    gamma is the dimensionless stiffness contrast (k1 = k(1+gamma),
    k2 = k(1-gamma)); k_mean and mass only set physical time/frequency
    scales and are 1 in the nondimensional band formulas.
    """

    gamma: float
    k_mean: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and abs(self.gamma) < 1.0):
            raise ValueError(f"ChainParams: |gamma| must be < 1, got {self.gamma}")
        if not (self.k_mean > 0 and self.mass > 0):
            raise ValueError("ChainParams: k_mean and mass must be positive")

    @property
    def k1(self) -> float:
        return self.k_mean * (1.0 + self.gamma)

    @property
    def k2(self) -> float:
        return self.k_mean * (1.0 - self.gamma)


# ============================ Bloch dispersion =============================

def a_coefficient(gamma: float, mu: float) -> complex:
    """Off-diagonal Bloch coefficient a(mu) = -(1+gamma) - (1-gamma) e^{i mu}."""
    return -(1.0 + gamma) - (1.0 - gamma) * np.exp(1j * mu)


@dataclass(frozen=True)
class Bands1DSample:
    """One dispersion sample: both squared-frequency bands at wave number mu."""

    mu: float
    lambda_minus: float
    lambda_plus: float
    a_of_mu: complex

    def eigenvector(self, band: str) -> np.ndarray:
        """Bloch eigenvector v_pm = (conj(a)/(pm|a|), 1)/sqrt(2).

        Raises:
            ValueError: at |a(mu)| = 0 (gamma = 0, mu = +-pi) the two bands
                are degenerate and no single eigenvector is defined.
        """
        aa = abs(self.a_of_mu)
        if aa == 0.0:
            raise ValueError("Bands1DSample.eigenvector: degenerate point |a|=0")
        s = 1.0 if band == "plus" else -1.0
        return np.array([np.conj(self.a_of_mu) / (s * aa), 1.0]) / np.sqrt(2.0)


def dispersion_1d(params: ChainParams, mu: float) -> Bands1DSample:
    """Both Bloch bands of the chain at wave number mu in [-pi, pi]."""
    if not -np.pi <= mu <= np.pi:
        raise ValueError(f"dispersion_1d: mu={mu} outside [-pi, pi]")
    a = a_coefficient(params.gamma, mu)
    aa = abs(a)
    return Bands1DSample(mu=mu, lambda_minus=2.0 - aa, lambda_plus=2.0 + aa,
                         a_of_mu=a)


@dataclass(frozen=True)
class BandGap1D:
    """Band gap in frequency omega; empty iff gamma = 0 (endpoints coincide)."""

    lo: float
    hi: float
    empty: bool


def band_gap_1d(params: ChainParams) -> BandGap1D:
    """I(gamma) = (sqrt(2(1-|gamma|)), sqrt(2(1+|gamma|)))."""
    g = abs(params.gamma)
    return BandGap1D(lo=math.sqrt(2.0 * (1.0 - g)), hi=math.sqrt(2.0 * (1.0 + g)),
                     empty=(g == 0.0))


def common_gap_1d(left: ChainParams, right: ChainParams) -> BandGap1D:
    """Intersection of the two band gaps (nonempty whenever both gamma != 0)."""
    gl, gr = band_gap_1d(left), band_gap_1d(right)
    lo = max(gl.lo, gr.lo)
    hi = min(gl.hi, gr.hi)
    return BandGap1D(lo=lo, hi=hi, empty=(gl.empty or gr.empty or not lo < hi))


# =============================== Zak phase =================================

@dataclass(frozen=True)
class ZakResult:
    """Discrete Zak phase of one band.

    ``value`` is the accumulated phase reduced into [0, 2pi); ``raw_sum``
    keeps the unreduced sum for diagnostics.
    """

    band: str
    n_points: int
    value: float
    raw_sum: float
    per_step_terms: Optional[np.ndarray] = None


def zak_discrete(params: ChainParams, band: str, n_points: int,
                 keep_terms: bool = False) -> ZakResult:
    """Discrete Zak phase -sum_n Im log <v(mu_n), v(mu_{n+1})>.

    The sum runs over mu_n = n pi / N for n = -N .. N-1 with the
    principal-branch logarithm, then is reduced modulo 2pi into [0, 2pi).
    Quantized to 0 (gamma > 0) or pi (gamma < 0).

    Raises:
        ValueError: gamma = 0 (gap closed: eigenvector undefined at mu=pi),
            bad band name, or n_points < 16.
    """
    if params.gamma == 0.0:
        raise ValueError("zak_discrete: gap closed at gamma=0 "
                         "(eigenvector undefined at mu=+-pi)")
    if band not in ("minus", "plus"):
        raise ValueError(f"zak_discrete: band must be minus|plus, got {band!r}")
    if n_points < 16:
        raise ValueError("zak_discrete: n_points must be >= 16")
    N = int(n_points)
    mus = np.arange(-N, N + 1) * (np.pi / N)
    a = a_coefficient(params.gamma, mus)
    aa = np.abs(a)
    s = 1.0 if band == "plus" else -1.0
    # rows of v(mu_n); the constant second component 1/sqrt(2) drops out of
    # the phases but is kept so overlaps are honest inner products
    v0 = np.conj(a) / (s * aa) / np.sqrt(2.0)
    overlaps = np.conj(v0[:-1]) * v0[1:] + 0.5
    terms = np.angle(overlaps)
    raw = -float(np.sum(terms))
    value = raw % (2.0 * np.pi)
    if 2.0 * np.pi - value < 1e-9:  # phases a hair below 2pi are phases near 0
        value = 0.0
    return ZakResult(band=band, n_points=N, value=value, raw_sum=raw,
                     per_step_terms=terms if keep_terms else None)


# ============================ transfer matrices ============================

def transfer_matrix_1d(params: ChainParams, side: str, omega: float) -> np.ndarray:
    """Raw 2x2 transfer matrix at any frequency (det = 1).

    Right side: maps (u_a(j), u_b(j)) to (u_a(j+1), u_b(j+1)) for j >= 1.
    Left side: maps (u_a(-j), u_b(-j)) to (u_a(-j-1), u_b(-j-1)), i.e. one
    step away from the interface.
    """
    g = params.gamma
    Om = 2.0 - omega * omega
    if side == "right":
        return np.array([
            [-(1.0 + g) / (1.0 - g), Om / (1.0 - g)],
            [-Om / (1.0 - g), (Om * Om - (1.0 - g) ** 2) / (1.0 - g * g)],
        ])
    if side == "left":
        return np.array([
            [(Om * Om - (1.0 - g) ** 2) / (1.0 - g * g), -Om / (1.0 - g)],
            [Om / (1.0 - g), -(1.0 + g) / (1.0 - g)],
        ])
    raise ValueError(f"transfer_matrix_1d: side must be left|right, got {side!r}")


@dataclass(frozen=True)
class Transfer1D:
    """Transfer matrix with its decaying eigenpair at an in-gap frequency."""

    side: str
    omega: float
    matrix: np.ndarray
    decaying_eigenvalue: float
    decaying_eigenvector: np.ndarray


def transfer_1d(params: ChainParams, side: str, omega: float) -> Transfer1D:
    """Transfer matrix and decaying eigenpair for omega inside the band gap.

    The decaying eigenvalue is

        lam = [Om^2 - 2 - 2 g^2 + sqrt((4 - Om^2)(4 g^2 - Om^2))] / (2 (1 - g^2))

    with Om = 2 - omega^2; |lam| < 1 strictly inside the gap, and the
    eigenvector is extracted from the rows of (T - lam I) (stable even where
    the matrix becomes diagonal).

    Raises:
        ValueError: omega outside the closed gap (no uniquely decaying
            eigenpair exists there).
    """
    gap = band_gap_1d(params)
    if gap.empty or not (gap.lo <= omega <= gap.hi):
        raise ValueError(
            f"transfer_1d: omega={omega} outside the closed gap "
            f"[{gap.lo}, {gap.hi}] -- no uniquely decaying eigenpair"
        )
    g = params.gamma
    Om = 2.0 - omega * omega
    rad = (4.0 - Om * Om) * (4.0 * g * g - Om * Om)
    lam = (Om * Om - 2.0 - 2.0 * g * g + math.sqrt(max(rad, 0.0))) \
        / (2.0 * (1.0 - g * g))
    T = transfer_matrix_1d(params, side, omega)
    vec = null_vector_2x2(T.astype(complex), lam)
    if np.abs(vec.imag).max() < 1e-14:
        vec = vec.real.copy()
    return Transfer1D(side=side, omega=omega, matrix=T,
                      decaying_eigenvalue=lam, decaying_eigenvector=vec)


# ============================ interface solver =============================

def final_eqn_residual_1d(gamma_left: float, gamma_right: float, Om: float) -> float:
    """Residual whose in-gap zeros locate interface modes (Om = 2 - omega^2).

    Evaluates B_L * B_R - 4 (1 - gamma_L)^2 Om^2 with

        B_L = Om^2 - 4 g_L - sqrt((4 - Om^2)(4 g_L^2 - Om^2)),
        B_R = Om^2 + 2 (g_R - g_L) Om - 4 g_R - sqrt((4 - Om^2)(4 g_R^2 - Om^2)).

    Returns NaN where either square-root argument is negative (outside the
    common gap); scan points there are skipped by the root finder.
    """
    gl, gr = gamma_left, gamma_right
    rad_l = (4.0 - Om * Om) * (4.0 * gl * gl - Om * Om)
    rad_r = (4.0 - Om * Om) * (4.0 * gr * gr - Om * Om)
    if rad_l < 0.0 or rad_r < 0.0:
        return float("nan")
    b_l = Om * Om - 4.0 * gl - math.sqrt(rad_l)
    b_r = Om * Om + 2.0 * (gr - gl) * Om - 4.0 * gr - math.sqrt(rad_r)
    return b_l * b_r - 4.0 * (1.0 - gl) ** 2 * Om * Om


@dataclass(frozen=True)
class EdgeMode1D:
    """A verified interface-localized mode of the joint chain.

    profile lists (cell index j, u_a, u_b) for j = 1..n on the right and
    j = -1..-n on the left; decay_left/right are the per-cell amplitude
    ratios |u_{j+1}|/|u_j| away from the interface.
    """

    omega: float
    c1: float
    c2: float
    profile: list
    decay_left: float
    decay_right: float
    matching_residual: float = field(default=0.0, compare=False)


def _matching_matrix(gamma_left: float, gamma_right: float, Om: float,
                     e_r: np.ndarray, e_l: np.ndarray) -> np.ndarray:
    """2x2 homogeneous system for the interface amplitudes (c1, c2).

    Row 1 is the equation of motion of a_1 (bridged to b_{-1} by k2_L), row 2
    that of b_{-1}; u_1 = c1 e_R and u_{-1} = c2 e_L.
    """
    gl, gr = gamma_left, gamma_right
    return np.array([
        [(Om + gr - gl) * e_r[0] - (1.0 + gr) * e_r[1], -(1.0 - gl) * e_l[1]],
        [-(1.0 - gl) * e_r[0], Om * e_l[1] - (1.0 + gl) * e_l[0]],
    ])


def edge_mode_1d(left: ChainParams, right: ChainParams,
                 n_profile_cells: int = 10,
                 grid: int = 1024, tol: float = 1e-12) -> Optional[EdgeMode1D]:
    """Interface mode of the joint chain, or None when no mode exists.

    Scans the residual ``final_eqn_residual_1d`` over the common gap
    (Om = 2 - omega^2), then checks each root against the actual interface
    matching system built from the decaying transfer eigenvectors: a root is
    a mode only if that 2x2 system is singular with a nontrivial (c1, c2).
    Roots of the residual where the matching system stays regular are
    artifacts of the residual's eigenvector parametrization degenerating and
    are discarded.  If several roots verify, the lowest frequency is
    returned (all of them are available via ``edge_modes_1d``).
    """
    modes = edge_modes_1d(left, right, n_profile_cells, grid, tol)
    return modes[0] if modes else None


def _scan_residual_roots(left: ChainParams, right: ChainParams,
                         grid: int, tol: float) -> list[float]:
    """Roots of the residual in Om over the (slightly shrunk) common gap."""
    if left.gamma == 0.0 or right.gamma == 0.0:
        raise ValueError("interface scan: both gamma must be nonzero")
    gap = common_gap_1d(left, right)
    if gap.empty:
        raise ValueError("interface scan: common gap is empty")
    g = min(abs(left.gamma), abs(right.gamma))
    half = 2.0 * g * (1.0 - 1e-9)

    def residual(Om: float) -> float:
        return final_eqn_residual_1d(left.gamma, right.gamma, Om)

    return find_roots_bracketed(residual, -half, half, grid=grid, tol=tol)


def final_eqn_roots_1d(left: ChainParams, right: ChainParams,
                       grid: int = 1024, tol: float = 1e-12) -> list[float]:
    """All in-gap zeros of the closed-form residual, as frequencies omega.

    No matching verification is applied here: the residual's eigenvector
    parametrization degenerates at Om = 0 whenever either gamma is
    negative, so the returned list can contain omega = sqrt(2) entries that
    do not correspond to an actual interface mode.  Use edge_modes_1d for
    the verified subset.
    """
    oms = _scan_residual_roots(left, right, grid, tol)
    return sorted(math.sqrt(2.0 - Om) for Om in oms)


def edge_modes_1d(left: ChainParams, right: ChainParams,
                  n_profile_cells: int = 10,
                  grid: int = 1024, tol: float = 1e-12) -> list[EdgeMode1D]:
    """All verified interface modes, ascending in frequency (may be empty)."""
    roots = _scan_residual_roots(left, right, grid, tol)
    modes = []
    for Om in roots:
        mode = _verify_root(left, right, Om, n_profile_cells)
        if mode is not None:
            modes.append(mode)
    modes.sort(key=lambda m: m.omega)
    return modes


def _verify_root(left: ChainParams, right: ChainParams, Om: float,
                 n_cells: int) -> Optional[EdgeMode1D]:
    omega = math.sqrt(2.0 - Om)
    t_r = transfer_1d(right, "right", omega)
    t_l = transfer_1d(left, "left", omega)
    e_r = np.real(t_r.decaying_eigenvector)
    e_l = np.real(t_l.decaying_eigenvector)
    M = _matching_matrix(left.gamma, right.gamma, Om, e_r, e_l)
    scale = np.abs(M).max()
    if scale == 0.0:
        c = np.array([1.0, 1.0])
    else:
        # null vector from the larger row; reject if the system is regular
        rows = [M[0], M[1]]
        norms = [np.linalg.norm(r) for r in rows]
        r = rows[int(np.argmax(norms))]
        c = np.array([-r[1], r[0]])
        nc = np.linalg.norm(c)
        if nc == 0.0:
            c = np.array([1.0, 1.0])
        else:
            c = c / nc
        res = np.linalg.norm(M @ c) / scale
        if res > 1e-8:
            return None  # residual root without an actual matching solution
    # normalize c1 = 1 where well conditioned, else c2 = 1
    if abs(c[0]) >= 1e-8 * abs(c[1]):
        c = c / c[0]
    else:
        c = c / c[1]
    c1, c2 = float(c[0]), float(c[1])
    lam_r, lam_l = t_r.decaying_eigenvalue, t_l.decaying_eigenvalue
    profile = []
    for j in range(1, n_cells + 1):
        u = c1 * lam_r ** (j - 1) * e_r
        profile.append((j, float(u[0]), float(u[1])))
    for j in range(1, n_cells + 1):
        u = c2 * lam_l ** (j - 1) * e_l
        profile.append((-j, float(u[0]), float(u[1])))
    M_res = float(np.linalg.norm(_matching_matrix(left.gamma, right.gamma, Om,
                                                  e_r, e_l) @ [c1, c2]))
    if M_res > 1e-8 * max(1.0, abs(c1), abs(c2)):
        return None
    return EdgeMode1D(omega=omega, c1=c1, c2=c2, profile=profile,
                      decay_left=abs(lam_l), decay_right=abs(lam_r),
                      matching_residual=M_res)
