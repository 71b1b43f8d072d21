#!/usr/bin/env python3
"""Benchmark the numba-jitted kernels against the pure-numpy fallback.

Runs a fixed workload (pair solving, oracle window sampling, oracle delay
grids) through both backends and prints a timing table plus a checksum so
divergence would be visible. The numba timings exclude the one-off JIT
compilation (a warmup call triggers it).

Usage: python benchmarks/bench_kernels.py [--pairs N]
"""

import argparse
import hashlib
import struct
import time

import numpy as np

from deconflict import _kernels as K
from deconflict.kinematics import SeparationConfig


def make_pairs(n_pairs: int, seed: int = 11):
    rng = np.random.default_rng(seed)
    rows = []
    for _ in range(n_pairs):
        while True:
            p = rng.uniform(0.0, 20.0, 8)
            if (np.hypot(p[2] - p[0], p[3] - p[1]) > 1.0
                    and np.hypot(p[6] - p[4], p[7] - p[5]) > 1.0):
                break
        sa = 0.66 + 1.23 * rng.random()
        sb = 0.66 + 1.23 * rng.random()
        la = np.hypot(p[2] - p[0], p[3] - p[1])
        lb = np.hypot(p[6] - p[4], p[7] - p[5])
        rows.append((p[0], p[1], sa * (p[2] - p[0]) / la, sa * (p[3] - p[1]) / la, la / sa,
                     p[4], p[5], sb * (p[6] - p[4]) / lb, sb * (p[7] - p[5]) / lb, lb / sb))
    return rows


def run_workload(pairs, sampled_fn, grid_fn, cfg: SeparationConfig):
    acc = []
    deltas = np.arange(-8.0, 8.0, 0.25)
    for r in pairs:
        code, lo, hi = K.forbidden_core(*r, cfg.h, cfg.tol)
        acc.extend((float(code), lo, hi))
        acc.append(sampled_fn(*r[:5], 0.0, *r[5:], 1.7, 0.005, True))
        acc.extend(grid_fn(*r[:5], *r[5:], deltas, 0.01, True).tolist())
    return acc


def checksum(values) -> str:
    return hashlib.sha256(b"".join(struct.pack("<d", v) for v in values)).hexdigest()[:16]


def numpy_grid(aox, aoy, avx, avy, adur, box, boy, bvx, bvy, bdur, deltas, dt, refine):
    out = np.empty(deltas.shape[0])
    for i, d in enumerate(deltas):
        out[i] = K._sampled_pair_min_sep_sq_numpy(
            aox, aoy, avx, avy, adur, 0.0, box, boy, bvx, bvy, bdur, d, dt, refine)
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=200)
    args = parser.parse_args()

    if K.BACKEND != "numba":
        print("note: numba backend unavailable or disabled "
              "(DECONFLICT_NUMBA=0); timing the fallback against itself")

    cfg = SeparationConfig(h=1.5)
    pairs = make_pairs(args.pairs)

    # warmup triggers JIT compilation so it is not timed
    run_workload(pairs[:2], K.sampled_pair_min_sep_sq, K.sampled_delta_grid, cfg)

    t0 = time.perf_counter()
    jit_acc = run_workload(pairs, K.sampled_pair_min_sep_sq, K.sampled_delta_grid, cfg)
    t_jit = time.perf_counter() - t0

    t0 = time.perf_counter()
    np_acc = run_workload(pairs, K._sampled_pair_min_sep_sq_numpy, numpy_grid, cfg)
    t_np = time.perf_counter() - t0

    print(f"workload: {args.pairs} pairs x (forbidden solve + window oracle + 64-delay grid)")
    print(f"{K.BACKEND:>8} backend: {t_jit:8.3f} s   checksum {checksum(jit_acc)}")
    print(f"   numpy fallback: {t_np:8.3f} s   checksum {checksum(np_acc)}")
    print(f"identical results: {checksum(jit_acc) == checksum(np_acc)}")
    if t_jit > 0:
        print(f"speedup: {t_np / t_jit:.1f}x")


if __name__ == "__main__":
    main()
