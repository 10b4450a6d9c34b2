"""Time the numba kernels against their numpy counterparts.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

The first numba call of each kernel is run once before timing so that
compilation (or loading from the on-disk cache) is not counted.
"""

import argparse
import time

import numpy as np

from galcore import kernels
from galcore._accel import HAVE_NUMBA
from galcore.context import FormalContext


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(rng):
    rows = rng.integers(0, 1 << 20, size=16).astype(np.uint64)
    top = kernels.full_mask(20)
    yield "meet_table 2^16 subsets", kernels.meet_table_nb, kernels.meet_table_np, (rows, top)

    for n, m, d in ((40, 12, 0.35), (60, 16, 0.3)):
        ctx = FormalContext(rng.random((n, m)) < d)
        args = (ctx.row_array, ctx.col_array, kernels.full_mask(n), kernels.full_mask(m))
        yield f"closed_extents {n}x{m}", kernels.closed_extents_nb, kernels.closed_extents_np, args

    n = 300
    leq = np.triu(np.ones((n, n), dtype=bool))
    f = np.sort(rng.integers(0, n, n))[::-1].copy()
    g = np.sort(rng.integers(0, n, n))[::-1].copy()
    yield f"antitone_violations chain {n}", kernels.antitone_violations_nb, kernels.antitone_violations_np, (leq, leq, f)
    yield f"adjoint_violations chain {n}", kernels.adjoint_violations_nb, kernels.adjoint_violations_np, (leq, leq, f, g)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<34} {'numba ms':>10} {'numpy ms':>10} {'ratio':>8}")
    for name, nb, npf, fargs in cases(rng):
        a, b = nb(*fargs), npf(*fargs)
        if a.ndim == 2:
            same = sorted(map(tuple, a.tolist())) == sorted(map(tuple, b.tolist()))
        else:
            same = np.array_equal(a, b)
        if not same:
            raise SystemExit(f"{name}: backends disagree")
        t_nb = best_of(lambda: nb(*fargs), args.repeat)
        t_np = best_of(lambda: npf(*fargs), args.repeat)
        print(f"{name:<34} {t_nb * 1e3:10.3f} {t_np * 1e3:10.3f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
