"""Batched numeric kernels: Lyapunov solves and two-mode log-negativity.

Every public kernel has a pure-numpy implementation (``*_numpy``) and, when
numba is installed, a compiled twin (``*_numba``). The unsuffixed names are
bound to one of them at import time according to ``OPTODARK_BACKEND``.

The Lyapunov solver works on the half-vectorisation of the symmetric unknown:
for an ``n x n`` covariance only ``n(n+1)/2`` entries are independent, so the
linear system is 36 x 36 for the four-mode network instead of 64 x 64.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ._accel import HAVE_NUMBA, USE_NUMBA, njit

BACKEND = "numba" if USE_NUMBA else "numpy"

# status codes returned by the negativity kernels
NEG_OK = 0
NEG_BAD_DISCRIMINANT = 1
NEG_BAD_SIGMA = 2


@lru_cache(maxsize=None)
def sym_index(n: int) -> tuple[np.ndarray, int]:
    """Map ``(i, j)`` to the position of ``V[min, max]`` in the half-vector."""
    idx = np.empty((n, n), dtype=np.int64)
    r = 0
    for i in range(n):
        for j in range(i, n):
            idx[i, j] = idx[j, i] = r
            r += 1
    return idx, r


@lru_cache(maxsize=None)
def _assembly_plan(n: int):
    # For each entry of the reduced operator, the flat positions in A whose
    # sum gives it. Padding points at slot n*n, which holds a zero.
    idx, m = sym_index(n)
    terms: dict[tuple[int, int], list[int]] = {}
    rows = []
    for i in range(n):
        for j in range(i, n):
            r = idx[i, j]
            rows.append((i, j))
            for k in range(n):
                terms.setdefault((r, idx[k, j]), []).append(i * n + k)
                terms.setdefault((r, idx[i, k]), []).append(j * n + k)
    width = max(len(v) for v in terms.values())
    src = np.full((m * m, width), n * n, dtype=np.int64)
    for (r, c), flat in terms.items():
        src[r * m + c, : len(flat)] = flat
    ri = np.array([p[0] for p in rows], dtype=np.int64)
    rj = np.array([p[1] for p in rows], dtype=np.int64)
    src.setflags(write=False)
    return src, ri, rj


def lyapunov_operator_numpy(a: np.ndarray) -> np.ndarray:
    """Reduced (symmetric) Lyapunov operator for a stack ``(P, n, n)``."""
    a = np.asarray(a, dtype=np.float64)
    p, n, _ = a.shape
    idx, m = sym_index(n)
    src, _, _ = _assembly_plan(n)
    flat = np.concatenate([a.reshape(p, n * n), np.zeros((p, 1))], axis=1)
    return flat[:, src].sum(axis=-1).reshape(p, m, m)


def solve_lyapunov_batch_numpy(a: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Solve ``A V + V A^T = -Q`` for each matrix of a stack.

    Parameters
    ----------
    a, q : ndarray, shape (P, n, n)
        Drift and (symmetric) diffusion matrices.

    Returns
    -------
    ndarray, shape (P, n, n)
        Exactly symmetric solutions.
    """
    a = np.asarray(a, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    n = a.shape[-1]
    idx, _ = sym_index(n)
    _, ri, rj = _assembly_plan(n)
    op = lyapunov_operator_numpy(a)
    rhs = -q[:, ri, rj]
    x = np.linalg.solve(op, rhs[..., None])[..., 0]
    return x[:, idx]


def log_negativity_batch_numpy(v: np.ndarray, pairs: np.ndarray, clamp: float):
    """Smallest partially transposed symplectic eigenvalue and log-negativity.

    ``pairs`` holds mode indices ``(first, second)``; mode ``k`` occupies rows
    ``2k, 2k+1`` of each covariance. Returns ``(sigma, log_neg, code)`` arrays
    of shape ``(P, K)``; ``code`` is one of the ``NEG_*`` constants and the
    numeric outputs are NaN wherever it is nonzero.
    """
    v = np.asarray(v, dtype=np.float64)
    pairs = np.asarray(pairs, dtype=np.int64)
    rows = np.stack(
        [2 * pairs[:, 0], 2 * pairs[:, 0] + 1, 2 * pairs[:, 1], 2 * pairs[:, 1] + 1], axis=1
    )
    red = v[:, rows[:, :, None], rows[:, None, :]]  # (P, K, 4, 4)
    det_a = red[..., 0, 0] * red[..., 1, 1] - red[..., 0, 1] * red[..., 1, 0]
    det_b = red[..., 2, 2] * red[..., 3, 3] - red[..., 2, 3] * red[..., 3, 2]
    det_c = red[..., 0, 2] * red[..., 1, 3] - red[..., 0, 3] * red[..., 1, 2]
    det_v = np.linalg.det(red)
    big_sigma = det_a + det_b - 2.0 * det_c
    disc = big_sigma * big_sigma - 4.0 * det_v
    code = np.zeros(disc.shape, dtype=np.int64)
    floor = -clamp * np.maximum(1.0, big_sigma * big_sigma)
    code[disc < floor] = NEG_BAD_DISCRIMINANT
    disc = np.where(disc < 0.0, 0.0, disc)
    inner = 0.5 * (big_sigma - np.sqrt(disc))
    code[(code == NEG_OK) & ~(inner > 0.0)] = NEG_BAD_SIGMA
    ok = code == NEG_OK
    sigma = np.where(ok, np.sqrt(np.where(ok, inner, 1.0)), np.nan)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_neg = np.where(ok, np.maximum(0.0, -np.log(2.0 * sigma)), np.nan)
    return sigma, log_neg, code


# ---------------------------------------------------------------------------
# numba twins
# ---------------------------------------------------------------------------


@njit
def _solve_lyapunov_batch_nb(a, q, idx, m):
    p_count, n, _ = a.shape
    out = np.empty_like(a)
    op = np.empty((m, m))
    rhs = np.empty(m)
    for p in range(p_count):
        op[:, :] = 0.0
        for i in range(n):
            for j in range(i, n):
                r = idx[i, j]
                rhs[r] = -q[p, i, j]
                for k in range(n):
                    op[r, idx[k, j]] += a[p, i, k]
                    op[r, idx[i, k]] += a[p, j, k]
        x = np.linalg.solve(op, rhs)
        for i in range(n):
            for j in range(n):
                out[p, i, j] = x[idx[i, j]]
    return out


@njit
def _log_negativity_batch_nb(v, pairs, clamp):
    p_count = v.shape[0]
    k_count = pairs.shape[0]
    sigma = np.full((p_count, k_count), np.nan)
    log_neg = np.full((p_count, k_count), np.nan)
    code = np.zeros((p_count, k_count), dtype=np.int64)
    red = np.empty((4, 4))
    rows = np.empty(4, dtype=np.int64)
    for p in range(p_count):
        for kk in range(k_count):
            rows[0] = 2 * pairs[kk, 0]
            rows[1] = rows[0] + 1
            rows[2] = 2 * pairs[kk, 1]
            rows[3] = rows[2] + 1
            for r in range(4):
                for c in range(4):
                    red[r, c] = v[p, rows[r], rows[c]]
            det_a = red[0, 0] * red[1, 1] - red[0, 1] * red[1, 0]
            det_b = red[2, 2] * red[3, 3] - red[2, 3] * red[3, 2]
            det_c = red[0, 2] * red[1, 3] - red[0, 3] * red[1, 2]
            det_v = np.linalg.det(red)
            big_sigma = det_a + det_b - 2.0 * det_c
            disc = big_sigma * big_sigma - 4.0 * det_v
            if disc < 0.0:
                if disc < -clamp * max(1.0, big_sigma * big_sigma):
                    code[p, kk] = 1
                    continue
                disc = 0.0
            inner = 0.5 * (big_sigma - np.sqrt(disc))
            if not inner > 0.0:
                code[p, kk] = 2
                continue
            s = np.sqrt(inner)
            sigma[p, kk] = s
            log_neg[p, kk] = max(0.0, -np.log(2.0 * s))
    return sigma, log_neg, code


if HAVE_NUMBA:

    def solve_lyapunov_batch_numba(a: np.ndarray, q: np.ndarray) -> np.ndarray:
        a = np.ascontiguousarray(a, dtype=np.float64)
        q = np.ascontiguousarray(q, dtype=np.float64)
        idx, m = sym_index(a.shape[-1])
        return _solve_lyapunov_batch_nb(a, q, idx, m)

    def log_negativity_batch_numba(v: np.ndarray, pairs: np.ndarray, clamp: float):
        v = np.ascontiguousarray(v, dtype=np.float64)
        pairs = np.ascontiguousarray(pairs, dtype=np.int64)
        return _log_negativity_batch_nb(v, pairs, float(clamp))

else:  # pragma: no cover
    solve_lyapunov_batch_numba = None
    log_negativity_batch_numba = None


if USE_NUMBA:
    solve_lyapunov_batch = solve_lyapunov_batch_numba
    log_negativity_batch = log_negativity_batch_numba
else:
    solve_lyapunov_batch = solve_lyapunov_batch_numpy
    log_negativity_batch = log_negativity_batch_numpy
