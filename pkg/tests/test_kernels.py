import os
import subprocess
import sys

import numpy as np
import pytest

import oracles
from optodark import NetworkParams, kernels
from optodark._accel import BACKEND_ENV, HAVE_NUMBA
from optodark.lyapunov import solve_lyapunov_kron
from optodark.model import build_drift_diffusion

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


@pytest.fixture(scope="module")
def stack():
    rng = np.random.default_rng(7)
    ps = oracles.random_stable_params(rng, NetworkParams, 60)
    dds = [build_drift_diffusion(p) for p in ps]
    return np.stack([d.a_matrix for d in dds]), np.stack([d.q_matrix for d in dds]), dds


def test_sym_index_is_a_bijection():
    idx, m = kernels.sym_index(8)
    assert m == 36
    assert np.array_equal(idx, idx.T)
    assert sorted(set(idx[np.triu_indices(8)].tolist())) == list(range(36))


def test_reduced_operator_matches_kronecker():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(1, 5, 5))
    op = kernels.lyapunov_operator_numpy(a)[0]
    idx, m = kernels.sym_index(5)
    full = np.kron(a[0], np.eye(5)) + np.kron(np.eye(5), a[0])
    # apply both to a random symmetric matrix
    s = rng.normal(size=(5, 5))
    s = s + s.T
    half = np.array([s[i, j] for i in range(5) for j in range(i, 5)])
    got = op @ half
    want = (full @ s.reshape(-1)).reshape(5, 5)
    np.testing.assert_allclose(got, [want[i, j] for i in range(5) for j in range(i, 5)], atol=1e-13)


def test_numpy_solver_against_kronecker(stack):
    a, q, dds = stack
    v = kernels.solve_lyapunov_batch_numpy(a, q)
    for vi, dd in zip(v, dds):
        ref = solve_lyapunov_kron(dd).v
        assert np.abs(vi - ref).max() <= 1e-9 * np.abs(ref).max()


@needs_numba
def test_backends_agree(stack):
    a, q, _ = stack
    v_np = kernels.solve_lyapunov_batch_numpy(a, q)
    v_nb = kernels.solve_lyapunov_batch_numba(a, q)
    scale = np.abs(v_np).max(axis=(1, 2))[:, None, None]
    assert np.all(np.abs(v_np - v_nb) <= 1e-11 * scale)
    pairs = np.array([[3, 0], [3, 1], [0, 1], [2, 0], [2, 1], [3, 2]])
    s1, e1, c1 = kernels.log_negativity_batch_numpy(v_np, pairs, 1e-12)
    s2, e2, c2 = kernels.log_negativity_batch_numba(v_np, pairs, 1e-12)
    assert np.array_equal(c1, c2)
    np.testing.assert_allclose(s1, s2, rtol=1e-12)
    np.testing.assert_allclose(e1, e2, rtol=1e-10, atol=1e-13)


@needs_numba
def test_backends_agree_on_error_codes():
    bad = np.zeros((2, 4, 4))
    bad[0] = np.block([[np.eye(2), 2 * np.eye(2)], [2 * np.eye(2), 2 * np.eye(2)]])
    bad[1] = np.block([[0.1 * np.eye(2), np.eye(2)], [np.eye(2), 0.1 * np.eye(2)]])
    pairs = np.array([[0, 1]])
    for fn in (kernels.log_negativity_batch_numpy, kernels.log_negativity_batch_numba):
        s, e, c = fn(bad, pairs, 1e-12)
        assert c[:, 0].tolist() == [kernels.NEG_BAD_DISCRIMINANT, kernels.NEG_BAD_SIGMA]
        assert np.all(np.isnan(s)) and np.all(np.isnan(e))


def _backend_in_subprocess(value):
    env = dict(os.environ, **{BACKEND_ENV: value})
    out = subprocess.run(
        [sys.executable, "-c", "from optodark import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True,
    )
    return out.returncode, out.stdout.strip(), out.stderr


def test_env_flag_selects_numpy():
    code, backend, _ = _backend_in_subprocess("numpy")
    assert code == 0 and backend == "numpy"


@needs_numba
def test_env_flag_selects_numba():
    code, backend, _ = _backend_in_subprocess("numba")
    assert code == 0 and backend == "numba"


def test_env_flag_rejects_garbage():
    code, _, err = _backend_in_subprocess("fortran")
    assert code != 0 and BACKEND_ENV in err
