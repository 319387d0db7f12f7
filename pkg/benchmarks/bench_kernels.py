"""Time the compiled and pure-numpy versions of each hot kernel.

    python benchmarks/bench_kernels.py [--repeat 5]

Outputs are checked for equality before timing; the first compiled call is
excluded so the numbers reflect steady state.
"""
import argparse
import time

import numpy as np

from tightspan import _kernels as K


def _inputs(rng):
    segs = rng.uniform(-2, 2, (512, 4))
    pts = rng.uniform(-3, 3, (20_000, 2))
    ys = np.sort(rng.uniform(-2, 2, 1025))
    slabs = np.column_stack([ys[:-1], ys[1:], rng.uniform(-2, 0, (1024, 2)), rng.uniform(0, 2, (1024, 2))])
    grid_segs = rng.uniform(0, 1024, (2000, 4))
    grid_slabs = slabs.copy()
    grid_slabs[:, :2] = (grid_slabs[:, :2] + 2) * 256
    grid_slabs[:, 2:] = (grid_slabs[:, 2:] + 2) * 256
    bits = rng.random((1024, 1024)) < 0.01
    return {
        "quadrant_hits": ((segs, pts, 1e-9), K.quadrant_hits_numpy, K.quadrant_hits_jit),
        "member": ((slabs, pts, 1e-9), K.member_numpy, K.member_jit),
        "supercover": ((grid_segs, 1024, 1024), K.supercover_numpy, K.supercover_jit),
        "trapezoids": ((grid_slabs, 1024, 1024), K.trapezoids_numpy, K.trapezoids_jit),
        "fill_rows": ((bits,), K.fill_rows_numpy, K.fill_rows_jit),
    }


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if K.numba is None:
        print("numba is not installed; only the numpy kernels are available")
        return
    print(f"{'kernel':<14} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for name, (inp, slow, fast) in _inputs(np.random.default_rng(args.seed)).items():
        assert np.array_equal(slow(*inp), fast(*inp)), name   # also triggers compilation
        t_np = best_of(slow, inp, args.repeat)
        t_jit = best_of(fast, inp, args.repeat)
        print(f"{name:<14} {t_np * 1e3:10.2f} {t_jit * 1e3:10.2f} {t_np / t_jit:7.1f}x")


if __name__ == "__main__":
    main()
