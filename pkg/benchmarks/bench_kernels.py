#!/usr/bin/env python3
"""Benchmark the compiled diagram-composition kernel against the fallback.

Times full multiplication-table builds (the hot loop of monoid
construction).  Run as: python benchmarks/bench_kernels.py
"""

import time

from twistcell.diagrams import enumerate_diagrams
from twistcell.kernels import _pyfallback

try:
    from twistcell.kernels import _core
except ImportError:
    _core = None

CASES = [("tl", 5), ("brauer", 4), ("partition", 3)]


def time_build(impl, vectors, n, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        impl.build_tables(vectors, n)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    print(f"{'monoid':>14} {'size':>6} {'python':>10} {'cython':>10} {'speedup':>8}")
    for kind, n in CASES:
        vectors = [x.vector() for x in enumerate_diagrams(kind, n)]
        py = time_build(_pyfallback, vectors, n)
        if _core is None:
            print(f"{kind + '_' + str(n):>14} {len(vectors):>6} {py:>9.3f}s {'n/a':>10} {'n/a':>8}")
            continue
        cy = time_build(_core, vectors, n)
        print(
            f"{kind + '_' + str(n):>14} {len(vectors):>6} {py:>9.3f}s {cy:>9.3f}s {py / cy:>7.1f}x"
        )


if __name__ == "__main__":
    main()
