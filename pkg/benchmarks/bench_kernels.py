"""Compare the compiled lattice-sum kernel with the pure-Python fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--trunc-q 30] [--repeat 3]

Each case computes a rotated index with both backends, checks that the two
results agree exactly and reports the best wall-clock time of each.
"""
from __future__ import annotations

import argparse
import time

from desc3d import kernels
from desc3d.indexsum import rotated_index
from desc3d.nzdata import builtin_reduced
from desc3d.tetindex import clear_cache

CASES = [("4_1", 0, 0), ("4_1", 1, 1), ("5_2", 0, 0), ("m237", 0, 0)]


def _time(fn, repeat: int):
    best, out = float("inf"), None
    for _ in range(repeat):
        clear_cache()
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trunc-q", type=int, default=30)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    T = 2 * args.trunc_q
    have = kernels.available_backends()
    if "compiled" not in have:
        print("compiled kernel unavailable; only the Python backend can be timed")
    start = kernels.backend()
    print(f"{'case':<16}{'python [s]':>12}{'compiled [s]':>14}{'speed-up':>10}  agree")
    try:
        for knot, n, np_ in CASES:
            nz = builtin_reduced(knot)
            row = {}
            for name in have:
                kernels.set_backend(name)
                row[name] = _time(lambda: rotated_index(nz, n, np_, T), args.repeat)
            tp, sp = row["python"]
            if "compiled" in row:
                tc, sc = row["compiled"]
                agree = sp.first_mismatch(sc) is None
                print(f"{f'{knot} ({n},{np_})':<16}{tp:>12.3f}{tc:>14.3f}{tp / tc:>10.1f}  {agree}")
            else:
                print(f"{f'{knot} ({n},{np_})':<16}{tp:>12.3f}{'-':>14}{'-':>10}  -")
    finally:
        kernels.set_backend(start)


if __name__ == "__main__":
    main()
