"""Time the numba and numpy kernel backends on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from sheafdp import kernels
from sheafdp._bits import popcount_rows, sets_to_rows
from sheafdp.examples import grid_index


def staircase_base(m, n):
    rects = [[grid_index(k, l, m) for k in range(i + 1) for l in range(j + 1)]
             for i in range(m + 1) for j in range(n + 1)]
    return sets_to_rows(rects, (m + 1) * (n + 1))


def best_of(fn, repeat):
    fn()  # compile / warm caches
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    base = staircase_base(6, 6)
    rows, _ = kernels.numpy_backend.union_closure(base, 10**6)
    cards = popcount_rows(rows)
    order = np.argsort(cards, kind="stable")
    rows, cards = rows[order], cards[order]
    rng = np.random.default_rng(0)
    cost = rng.uniform(0, 2, size=(600, 600))
    diag = rng.integers(0, 2, size=(600, 600)).astype(np.float64)
    return {
        "union_closure staircase 7x7 (3432 opens)": lambda k: k.union_closure(base, 10**6),
        "minimal_supersets all opens (3432)": lambda k: [k.minimal_supersets(rows, cards, i) for i in range(0, len(rows), 8)],
        "nw_fill 600x600": lambda k: k.nw_fill(cost),
        "nw_fill_scored 600x600": lambda k: k.nw_fill_scored(diag, 1.0),
    }


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    names = sorted(kernels.BACKENDS)
    print(f"{'kernel':45s}" + "".join(f"{n:>12s}" for n in names))
    for label, fn in cases().items():
        cells = [best_of(lambda: fn(kernels.BACKENDS[n]), args.repeat) for n in names]
        print(f"{label:45s}" + "".join(f"{c * 1e3:10.2f}ms" for c in cells))


if __name__ == "__main__":
    main()
