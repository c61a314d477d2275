"""Time the numba kernels against their pure-Python / NumPy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

The first JIT call is reported separately as compile time. Setting
PERFCODE_DISABLE_JIT=1 is not needed here; both variants are called directly.
"""

import argparse
import statistics
import time

import numpy as np

from perfcode import _kernels
from perfcode.gen import GenConfig, make_rng, random_graph


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times), statistics.median(times)


def cases(seed):
    a = random_graph(GenConfig(400, 0.02, seed=seed)).adjacency_matrix()
    yield ("square n=400", lambda: _kernels.square_matrix_numpy(a), lambda: _kernels._square_matrix_jit(a))

    g = random_graph(GenConfig(60, 0.15, seed=seed))
    rng = make_rng(seed, 1)
    weights = [int(x) for x in rng.integers(1, 100, size=g.n)]
    nbits = list(g.adjacency_bits)
    mask = g.full_mask
    order = np.array(sorted(range(g.n), key=lambda v: (-weights[v], v)), dtype=np.int64)
    nb = np.array(nbits, dtype=np.uint64)
    w = np.array(weights, dtype=np.int64)
    yield ("mwis n=60", lambda: _kernels.mwis_bitmask_python(nbits, weights, mask),
           lambda: _kernels._mwis_jit(nb, w, np.uint64(mask), order))

    h = random_graph(GenConfig(40, 0.08, seed=seed))
    closed = [h.closed_bits(v) for v in range(h.n)]
    arr = np.array(closed, dtype=np.uint64)
    yield ("exact covers n=40", lambda: _kernels.exact_covers_python(closed, h.full_mask),
           lambda: _kernels._exact_covers_jit(arr, np.uint64(h.full_mask)))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    if _kernels.numba is None:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'kernel':<20}{'fallback s':>12}{'jit s':>12}{'compile s':>12}{'speedup':>10}")
    for name, fallback, jitted in cases(args.seed):
        start = time.perf_counter()
        jitted()
        compile_s = time.perf_counter() - start
        fb, _ = best_of(fallback, args.repeat)
        jt, _ = best_of(jitted, args.repeat)
        print(f"{name:<20}{fb:>12.4f}{jt:>12.4f}{compile_s:>12.2f}{fb / max(jt, 1e-9):>9.1f}x")


if __name__ == "__main__":
    main()
