#!/usr/bin/env python3
"""Compare the numpy and numba kernel backends on a Fig. 2(a)-sized stack.

Usage: python benchmarks/bench_kernels.py [--points N] [--repeat R]

Both backends are called directly (the env flag only picks the default), so
one process times both. The numba kernels are warmed up first; compile time
is reported separately.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from optodark import kernels
from optodark.model import drift_diffusion_batch, params_columns
from optodark.sweep import FIG2_BASE

PAIRS = np.array([[3, 0], [3, 1], [0, 1], [2, 0], [2, 1], [3, 2]], dtype=np.int64)


def make_stack(points: int):
    cols = params_columns(FIG2_BASE)
    cols = {k: np.repeat(v, points) for k, v in cols.items()}
    cols["delta_s"] = np.linspace(0.5, 1.5, points)
    cols["gs1"] = np.linspace(0.0, 0.1, points)[::-1].copy()
    return drift_diffusion_batch(cols, True)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=101 * 101)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    a, q = make_stack(args.points)
    print(f"stack: {args.points} points of {a.shape[1]}x{a.shape[2]}")

    rows = []
    t_np, v_np = best_of(lambda: kernels.solve_lyapunov_batch_numpy(a, q), args.repeat)
    t_np_neg, _ = best_of(lambda: kernels.log_negativity_batch_numpy(v_np, PAIRS, 1e-12), args.repeat)
    rows.append(("numpy", t_np, t_np_neg))

    if kernels.HAVE_NUMBA:
        t0 = time.perf_counter()
        kernels.solve_lyapunov_batch_numba(a[:2], q[:2])
        kernels.log_negativity_batch_numba(v_np[:2], PAIRS, 1e-12)
        compile_s = time.perf_counter() - t0
        t_nb, v_nb = best_of(lambda: kernels.solve_lyapunov_batch_numba(a, q), args.repeat)
        t_nb_neg, _ = best_of(lambda: kernels.log_negativity_batch_numba(v_np, PAIRS, 1e-12), args.repeat)
        rows.append(("numba", t_nb, t_nb_neg))
        diff = np.abs(v_np - v_nb).max() / np.abs(v_np).max()
        print(f"numba first call (compile or cache load): {compile_s:.2f}s; max rel diff vs numpy {diff:.1e}")
    else:
        print("numba not installed; numpy only")

    print(f"{'backend':8s} {'lyapunov [s]':>13s} {'per point [us]':>15s} {'negativity [s]':>15s}")
    for name, t_l, t_n in rows:
        print(f"{name:8s} {t_l:13.4f} {1e6 * t_l / args.points:15.1f} {t_n:15.4f}")
    if len(rows) == 2:
        print(f"speedup numba/numpy: lyapunov x{rows[0][1] / rows[1][1]:.2f}, negativity x{rows[0][2] / rows[1][2]:.2f}")


if __name__ == "__main__":
    main()
