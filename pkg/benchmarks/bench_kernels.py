#!/usr/bin/env python3
"""Benchmark: compiled kernels vs the NumPy fallback.

Times the three hot loops on representative workloads:

* ratio_min_re   -- polar-grid infimum of Re(num/den) (the order oracle)
* hankel_grid_max -- 4-d brute-force search for |a2 a4 - a3^2|
* fs_grid_max     -- 3-d brute-force search for |a3 - mu a2^2|

Usage: python benchmarks/bench_kernels.py [--quick]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qstarlike._kernels import _ref

try:
    from qstarlike._kernels import _core
except ImportError:
    _core = None


def _time(fn, *args, repeats: int, calls: int = 1) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for _ in range(calls):
            fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def _workloads(quick: bool):
    rng = np.random.default_rng(0)
    n_coeff = 200 if quick else 600
    n_theta, n_radius = (180, 24) if quick else (720, 64)
    coeffs = (0.8 ** np.arange(n_coeff)).astype(np.complex128)
    num = coeffs * np.arange(1, n_coeff + 1)
    radii = np.linspace(0.0, 1.0 - 1e-6, n_radius)
    thetas = 2.0 * np.pi * np.arange(n_theta) / n_theta
    zs = (radii[:, None] * np.exp(1j * thetas)[None, :]).ravel()

    n_p1, n_rho, n_thx, n_thz = (9, 9, 8, 8) if quick else (33, 25, 32, 16)
    p1s = np.linspace(0.0, 2.0, n_p1)
    rhos = np.linspace(0.0, 1.0, n_rho)
    thxs = 2.0 * np.pi * np.arange(n_thx) / n_thx
    thzs = 2.0 * np.pi * np.arange(n_thz) / n_thz
    mu = complex(rng.uniform(-1, 2), rng.uniform(-1, 1))

    return [
        ("ratio_min_re", f"{n_coeff} coeffs x {zs.size} pts", (num, coeffs, zs)),
        ("ratio_point", f"{n_coeff} coeffs, 400 calls", (num, coeffs, 0.3 + 0.4j), 400),
        ("hankel_grid_max", f"{n_p1}x{n_rho}x{n_thx}x{n_thz} grid", (0.5, p1s, rhos, thxs, thzs)),
        ("fs_grid_max", f"{n_p1}x{n_rho}x{n_thx} grid", (0.5, mu, p1s, rhos, thxs)),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if _core is None:
        print("compiled extension not available; timing the NumPy fallback only")

    header = f"{'kernel':<18} {'workload':<26} {'numpy':>10} {'cython':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, desc, call_args, *extra in _workloads(args.quick):
        calls = extra[0] if extra else 1
        t_ref = _time(getattr(_ref, name), *call_args, repeats=args.repeats, calls=calls)
        if _core is not None:
            t_core = _time(getattr(_core, name), *call_args, repeats=args.repeats, calls=calls)
            # sanity: both backends agree on the reduced value
            v_ref = getattr(_ref, name)(*call_args)[0]
            v_core = getattr(_core, name)(*call_args)[0]
            assert abs(v_ref - v_core) <= 1e-9 * max(1.0, abs(v_ref)), (v_ref, v_core)
            print(f"{name:<18} {desc:<26} {t_ref:>9.4f}s {t_core:>9.4f}s {t_ref / t_core:>7.1f}x")
        else:
            print(f"{name:<18} {desc:<26} {t_ref:>9.4f}s {'-':>10} {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
