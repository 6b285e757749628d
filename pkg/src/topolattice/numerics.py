"""Self-contained numerical primitives for the lattice modules.

Everything here is hand-rolled on top of plain arrays: a closed-form 2x2
eigensolver for matrices with real spectrum, a dense Hermitian eigensolver
(cyclic Jacobi rotations, numba-compiled), a bracketing root scanner, and a
velocity-Verlet step.  numpy is used as an array container only; no LAPACK
routine is called from library code.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from numba import njit

__all__ = [
    "EigenDecomposition",
    "SimState",
    "eig2_hermitianlike",
    "eig_hermitian_dense",
    "find_roots_bracketed",
    "verlet_step",
    "null_vector_2x2",
]


# ============================= small helpers ================================

def _require_finite(A: np.ndarray, where: str) -> None:
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{where}: non-finite entries")


def null_vector_2x2(A: np.ndarray, lam: float) -> np.ndarray:
    """Unit-norm null vector of (A - lam*I) for a 2x2 matrix.

    Both rows of (A - lam*I) provide a candidate; the larger one is kept,
    which stays well-conditioned when one row degenerates (e.g. diagonal
    matrices, or transfer matrices at special frequencies).
    """
    c1 = np.array([A[0, 1], lam - A[0, 0]], dtype=complex)
    c2 = np.array([lam - A[1, 1], A[1, 0]], dtype=complex)
    n1 = np.vdot(c1, c1).real
    n2 = np.vdot(c2, c2).real
    scale = max(abs(A[0, 0]), abs(A[0, 1]), abs(A[1, 0]), abs(A[1, 1]), abs(lam), 1.0)
    if max(n1, n2) <= (1e-14 * scale) ** 2:
        # A is (numerically) lam*I: every vector works; return a basis vector
        return np.array([1.0 + 0.0j, 0.0j])
    v = c1 if n1 >= n2 else c2
    return v / np.sqrt(np.vdot(v, v).real)


# =========================== 2x2 closed-form eig ============================

def eig2_hermitianlike(A) -> tuple[tuple[float, np.ndarray], tuple[float, np.ndarray]]:
    """Closed-form eigenpairs of a 2x2 matrix with a real spectrum.

    The input must be similar to a Hermitian matrix through a positive
    diagonal weight (true for the Bloch matrices of both lattice models),
    so both eigenvalues are real and the discriminant is nonnegative up to
    rounding.

    Args:
        A: 2x2 array-like, real or complex.

    Returns:
        ((lam_lo, v_lo), (lam_hi, v_hi)): eigenvalues ascending, eigenvectors
        unit norm (plain Euclidean) and nonzero.

    Raises:
        ValueError: if the discriminant is below -1e-12 (the spectrum is not
            real: the input violates the similarity precondition), or the
            input is not 2x2 / not finite.
    """
    A = np.asarray(A, dtype=complex)
    if A.shape != (2, 2):
        raise ValueError("eig2_hermitianlike: input must be 2x2")
    _require_finite(A, "eig2_hermitianlike")
    tr = (A[0, 0] + A[1, 1]).real
    det = (A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]).real
    disc = tr * tr - 4.0 * det
    if disc < -1e-12:
        raise ValueError(
            f"eig2_hermitianlike: negative discriminant {disc:.3e} "
            "(spectrum not real)"
        )
    s = np.sqrt(max(disc, 0.0))
    lam_lo = 0.5 * (tr - s)
    lam_hi = 0.5 * (tr + s)
    v_lo = null_vector_2x2(A, lam_lo)
    if s <= 1e-14 * max(abs(tr), 1.0):
        # double eigenvalue: return an orthonormal pair
        v_hi = np.array([-np.conj(v_lo[1]), np.conj(v_lo[0])])
    else:
        v_hi = null_vector_2x2(A, lam_hi)
    return (lam_lo, v_lo), (lam_hi, v_hi)


# ========================== dense Hermitian solver ==========================

@dataclass(frozen=True)
class EigenDecomposition:
    """Full spectrum of a Hermitian matrix.

    Attributes:
        eigenvalues: real array, ascending.
        eigenvectors: complex (or real) matrix whose columns are unit-norm
            eigenvectors, ordered to match ``eigenvalues``.
        sweeps: number of Jacobi sweeps used.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int


@njit(cache=True)
def _jacobi_cyclic_complex(A, V, off_target, max_sweeps):  # pragma: no cover
    n = A.shape[0]
    for sweep in range(max_sweeps):
        off2 = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                x = A[p, q]
                off2 += x.real * x.real + x.imag * x.imag
        if np.sqrt(2.0 * off2) <= off_target:
            return sweep
        thresh = off_target / n
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = np.sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if mag <= thresh:
                    continue
                app = A[p, p].real
                aqq = A[q, q].real
                phase = apq / mag
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # plane rotation G: G[:,p] = (c, -s*conj(phase)),
                #                   G[:,q] = (s,  c*conj(phase))
                gqp = -s * np.conj(phase)
                gqq = c * np.conj(phase)
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = akp * c + akq * gqp
                    A[k, q] = akp * s + akq * gqq
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = apk * c + aqk * np.conj(gqp)
                    A[q, k] = apk * s + aqk * np.conj(gqq)
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = complex(A[p, p].real, 0.0)
                A[q, q] = complex(A[q, q].real, 0.0)
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = vkp * c + vkq * gqp
                    V[k, q] = vkp * s + vkq * gqq
    return -1


@njit(cache=True)
def _jacobi_cyclic_real(A, V, off_target, max_sweeps):  # pragma: no cover
    n = A.shape[0]
    for sweep in range(max_sweeps):
        off2 = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                x = A[p, q]
                off2 += x * x
        if np.sqrt(2.0 * off2) <= off_target:
            return sweep
        thresh = off_target / n
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= thresh:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = akp * c - akq * s
                    A[k, q] = akp * s + akq * c
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = apk * c - aqk * s
                    A[q, k] = apk * s + aqk * c
                A[p, q] = 0.0
                A[q, p] = 0.0
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = vkp * c - vkq * s
                    V[k, q] = vkp * s + vkq * c
    return -1


def eig_hermitian_dense(A, max_sweeps: int = 100) -> EigenDecomposition:
    """Full eigendecomposition of a dense Hermitian matrix by cyclic Jacobi.

    Sweeps run until the off-diagonal Frobenius norm falls below
    1e-12 * ||A||_F.  Real symmetric input is detected and solved in real
    arithmetic (same algorithm, cheaper rotations).

    Args:
        A: square Hermitian array-like, dimension <= 4096.  Hermiticity is
            required within 1e-14 (absolute, entrywise).
        max_sweeps: safety cap; exceeding it raises.

    Returns:
        EigenDecomposition with ascending eigenvalues and unit-norm
        eigenvector columns.

    Raises:
        ValueError: non-square / too large / non-Hermitian input.
        RuntimeError: no convergence within ``max_sweeps`` sweeps (ill-formed
            input).
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("eig_hermitian_dense: input must be square")
    n = A.shape[0]
    if n > 4096:
        raise ValueError(f"eig_hermitian_dense: dimension {n} exceeds 4096")
    if n == 0:
        return EigenDecomposition(np.empty(0), np.empty((0, 0)), 0)
    herm_defect = np.abs(A - A.conj().T).max()
    if herm_defect > 1e-14:
        raise ValueError(
            f"eig_hermitian_dense: input not Hermitian (defect {herm_defect:.3e})"
        )
    norm_f = float(np.linalg.norm(np.asarray(A, dtype=complex)))
    if norm_f == 0.0:
        return EigenDecomposition(np.zeros(n), np.eye(n), 0)
    off_target = 1e-12 * norm_f

    is_real = not np.iscomplexobj(A) or np.abs(A.imag).max() == 0.0
    if is_real:
        work = np.array(A.real, dtype=np.float64, order="C")
        work = 0.5 * (work + work.T)
        vecs = np.eye(n, dtype=np.float64)
        sweeps = _jacobi_cyclic_real(work, vecs, off_target, max_sweeps)
    else:
        work = np.array(A, dtype=np.complex128, order="C")
        work = 0.5 * (work + work.conj().T)
        vecs = np.eye(n, dtype=np.complex128)
        sweeps = _jacobi_cyclic_complex(work, vecs, off_target, max_sweeps)
    if sweeps < 0:
        raise RuntimeError(
            f"eig_hermitian_dense: no convergence after {max_sweeps} sweeps"
        )
    w = np.real(np.diag(work)).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    vecs = vecs[:, order]
    vecs = vecs / np.sqrt(np.sum(np.abs(vecs) ** 2, axis=0))[None, :]
    return EigenDecomposition(w, vecs, int(sweeps))


# ============================ root bracketing ==============================

def find_roots_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    grid: int = 1024,
    tol: float = 1e-12,
) -> list[float]:
    """All sign-change roots of f on [lo, hi] found by a uniform grid scan.

    The interval is split into ``grid`` subintervals.  Grid points where f
    evaluates to exactly zero are recorded as roots; every subinterval whose
    endpoints have opposite signs is bisected down to width <= ``tol``.
    Non-finite samples are skipped (no bracket is formed across them).

    A root where f touches zero without changing sign is found only if a
    grid point lands on it -- a documented limitation of sign-change
    scanning.

    Returns:
        Ascending list of distinct roots (empty when nothing is found).
    """
    if not (lo < hi):
        raise ValueError("find_roots_bracketed: need lo < hi")
    if grid < 1:
        raise ValueError("find_roots_bracketed: grid must be >= 1")
    xs = np.linspace(lo, hi, grid + 1)
    fs = np.array([f(float(x)) for x in xs], dtype=float)
    valid = np.isfinite(fs)

    roots: list[float] = []
    for i in range(grid + 1):
        if valid[i] and fs[i] == 0.0:
            roots.append(float(xs[i]))
    for i in range(grid):
        if not (valid[i] and valid[i + 1]):
            continue
        fa, fb = fs[i], fs[i + 1]
        if fa == 0.0 or fb == 0.0 or fa * fb > 0.0:
            continue
        a, b = float(xs[i]), float(xs[i + 1])
        while b - a > tol:
            m = 0.5 * (a + b)
            fm = f(m)
            if not np.isfinite(fm):
                break  # cannot refine through an invalid point
            if fm == 0.0:
                a = b = m
                break
            if fa * fm < 0.0:
                b = m
            else:
                a, fa = m, fm
        roots.append(0.5 * (a + b))

    roots.sort()
    out: list[float] = []
    for r in roots:
        if not out or r - out[-1] > max(tol, 1e-15 * max(abs(r), 1.0)):
            out.append(r)
    return out


# ============================ velocity Verlet ==============================

@dataclass(frozen=True)
class SimState:
    """Time-domain state of a finite model (positions may be complex for
    Bloch-reduced operators)."""

    time: float
    positions: np.ndarray
    velocities: np.ndarray

    def __post_init__(self):
        if np.shape(self.positions) != np.shape(self.velocities):
            raise ValueError("SimState: positions/velocities shape mismatch")


def verlet_step(state: SimState, accel: Callable[[np.ndarray], np.ndarray],
                dt: float) -> SimState:
    """One velocity-Verlet update (symplectic, time-reversible).

    Args:
        state: current SimState.
        accel: maps positions to accelerations.
        dt: step size, > 0 (caller enforces the stability bound).
    """
    if dt <= 0.0:
        raise ValueError("verlet_step: dt must be positive")
    x = state.positions
    v = state.velocities
    a0 = accel(x)
    x1 = x + dt * v + (0.5 * dt * dt) * a0
    a1 = accel(x1)
    v1 = v + (0.5 * dt) * (a0 + a1)
    return SimState(state.time + dt, x1, v1)


def warmup_jit() -> None:
    """Trigger numba compilation of the Jacobi kernels on a tiny problem."""
    eig_hermitian_dense(np.diag([1.0, 2.0, 3.0]))
    eig_hermitian_dense(np.array([[2.0, 1j], [-1j, 2.0]]))
