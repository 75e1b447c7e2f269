"""Steady-state covariance from the Lyapunov equation ``A V + V A^T = -Q``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ContractError, NumericalError, StabilityError
from .model import DEFAULT_STABILITY_MARGIN, MODES_FULL, DriftDiffusion, check_stability

DEFAULT_RESIDUAL_RTOL = 1e-10


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetric quadrature covariance, ordered like the drift matrix it came from."""

    v: np.ndarray
    modes: tuple[str, ...] = MODES_FULL

    def __post_init__(self):
        v = np.array(self.v, dtype=np.float64)
        n = 2 * len(self.modes)
        if v.shape != (n, n):
            raise ContractError(f"covariance must be {n}x{n} for modes {self.modes}, got {v.shape}")
        v = 0.5 * (v + v.T)
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    def rows(self, mode: str) -> tuple[int, int]:
        from .model import quadrature_rows

        return quadrature_rows(self.modes, mode)


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal form for ``[X, Y] = i`` in xpxp ordering."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def physicality_floor(v) -> float:
    """Smallest eigenvalue of the Hermitian matrix ``V + (i/2) Omega``.

    Non-negative for every state allowed by the uncertainty principle with
    vacuum variance 1/2.
    """
    mat = np.asarray(getattr(v, "v", v), dtype=np.float64)
    herm = mat + 0.5j * symplectic_form(mat.shape[0] // 2)
    return float(np.linalg.eigvalsh(herm).min())


def lyapunov_residual(dd: DriftDiffusion, v) -> float:
    """Max-norm of ``A V + V A^T + Q``."""
    mat = np.asarray(getattr(v, "v", v), dtype=np.float64)
    if mat.shape != dd.a_matrix.shape:
        raise ContractError(f"covariance shape {mat.shape} does not match drift shape {dd.a_matrix.shape}")
    a = dd.a_matrix
    return float(np.abs(a @ mat + mat @ a.T + dd.q_matrix).max())


def solve_lyapunov_kron(dd: DriftDiffusion) -> CovarianceMatrix:
    """Brute-force solve on the full ``n^2`` Kronecker system.

    Independent of :func:`solve_lyapunov`, which works on the symmetric
    half-vectorisation; used as a cross-check.
    """
    a = dd.a_matrix
    n = a.shape[0]
    eye = np.eye(n)
    op = np.kron(eye, a) + np.kron(a, eye)
    try:
        x = np.linalg.solve(op, -dd.q_matrix.reshape(-1))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"Kronecker system is singular: {exc}", a) from exc
    return CovarianceMatrix(x.reshape(n, n), dd.modes)


def solve_lyapunov(
    dd: DriftDiffusion,
    margin: float = DEFAULT_STABILITY_MARGIN,
    rtol: float = DEFAULT_RESIDUAL_RTOL,
) -> CovarianceMatrix:
    """Steady-state covariance of a stable linear Gaussian system.

    Raises
    ------
    StabilityError
        If ``A`` is unstable or marginal; there is no unique steady state.
    NumericalError
        If the linear system is singular or the residual exceeds
        ``rtol * max|Q|`` even after one refinement step.
    """
    verdict = check_stability(dd, margin)
    if not verdict.stable:
        raise StabilityError(
            f"drift matrix is {verdict.status} (max Re eig = {verdict.max_real:.6g}); no steady state",
            verdict.max_real,
            verdict.spectrum,
        )
    a = dd.a_matrix[None]
    try:
        v = kernels.solve_lyapunov_batch(a, dd.q_matrix[None])[0]
        tol = rtol * float(np.abs(dd.q_matrix).max())
        res = lyapunov_residual(dd, v)
        if res > tol:
            # one step of iterative refinement on the residual equation
            r = dd.a_matrix @ v + v @ dd.a_matrix.T + dd.q_matrix
            v = v + kernels.solve_lyapunov_batch(a, r[None])[0]
            res = lyapunov_residual(dd, v)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"Lyapunov system is singular: {exc}", dd.a_matrix) from exc
    if not np.isfinite(res) or res > tol:
        raise NumericalError(f"Lyapunov residual {res:.3g} exceeds tolerance {tol:.3g}", dd.a_matrix)
    return CovarianceMatrix(v, dd.modes)
