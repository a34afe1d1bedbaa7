#!/usr/bin/env python3
"""Time the numba kernels against their numpy twins.

Kernels:
  rk4_linear      batched RK4 for phi'' = A phi + F (one column and 64 columns)
  surface_series  cosh-weighted Fourier sum of the exact zero-vorticity solver

Usage:
    python benchmarks/bench_kernels.py [--steps N] [--repeat R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from bedwave import _kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def rk4_case(n_steps, m):
    y = np.linspace(0.0, 1.0, 2 * n_steps + 1)
    A = np.ascontiguousarray(np.tile((1.0 + 0.1 * np.cos(y))[:, None], (1, m)))
    F = np.zeros_like(A)
    return A, F, 1.0 / n_steps, np.zeros(m), np.ones(m)


def series_case(n_x, n_modes):
    rng = np.random.default_rng(0)
    q = rng.standard_normal(n_modes) * np.exp(-np.arange(1, n_modes + 1))
    x = 2 * np.pi * np.arange(n_x) / n_x
    eta = 0.01 * np.cos(x)
    return q, 0.5 * q, x, eta, 1.0, 1.0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=2000, help="RK4 steps")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if _kernels.rk4_linear_numba is None:
        print("numba unavailable (or BEDWAVE_DISABLE_NUMBA set); timing numpy only")

    cases = [
        ("rk4_linear m=1", "rk4_linear", rk4_case(args.steps, 1)),
        ("rk4_linear m=64", "rk4_linear", rk4_case(args.steps, 64)),
        ("surface_series 256x40", "surface_series", series_case(256, 40)),
    ]
    print(f"{'kernel':<24}{'numpy (ms)':>12}{'numba (ms)':>12}{'speedup':>10}{'max |diff|':>14}")
    for label, name, case in cases:
        np_fn = getattr(_kernels, f"{name}_numpy")
        nb_fn = getattr(_kernels, f"{name}_numba")
        t_np = best_of(lambda: np_fn(*case), args.repeat)
        ref = np_fn(*case)
        if nb_fn is None:
            print(f"{label:<24}{1e3 * t_np:>12.3f}{'-':>12}{'-':>10}{'-':>14}")
            continue
        out = nb_fn(*case)  # compile outside the timed region
        t_nb = best_of(lambda: nb_fn(*case), args.repeat)
        ref_arr = np.concatenate([np.ravel(r) for r in (ref if isinstance(ref, tuple) else (ref,))])
        out_arr = np.concatenate([np.ravel(r) for r in (out if isinstance(out, tuple) else (out,))])
        diff = float(np.max(np.abs(ref_arr - out_arr)))
        print(f"{label:<24}{1e3 * t_np:>12.3f}{1e3 * t_nb:>12.3f}{t_np / t_nb:>10.1f}{diff:>14.2e}")


if __name__ == "__main__":
    main()
