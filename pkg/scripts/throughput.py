#!/usr/bin/env python3
"""Measure enumeration wall time per order, and subtree throughput for the
stretch orders (9, 10) where a full run may not fit the budget.

Usage:
  python scripts/throughput.py --max-order 8
  python scripts/throughput.py --stretch 9 --budget 300
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from quandles.enumeration import _perms_fixing, count_quandles


def timed_counts(max_order: int) -> None:
    for n in range(3, max_order + 1):
        t0 = time.monotonic()
        c = count_quandles(n)
        print(f"order {n}: {c} classes in {time.monotonic() - t0:.1f}s", flush=True)


def stretch_slice(n: int, budget: float) -> None:
    from quandles import _fastenum

    out = np.empty((16384, n * n), np.int64)
    used = np.zeros(1, np.int64)
    sigmas = _perms_fixing(n, 0)
    t_start = time.monotonic()
    total = done = 0
    for sigma in sigmas:
        got = _fastenum.run_sigma(n, np.asarray(sigma, np.int64), out, used, False)
        total += got
        done += 1
        if time.monotonic() - t_start > budget:
            break
    elapsed = time.monotonic() - t_start
    import math

    n_subtrees = math.factorial(n - 1)
    print(
        f"order {n}: {done}/{n_subtrees} column-0 subtrees in {elapsed:.0f}s, "
        f"{total} canonical tables so far"
    )
    if done < n_subtrees:
        print(
            f"linear extrapolation: ~{elapsed / done * n_subtrees / 3600:.1f} h "
            "(early subtrees are the largest, so this overestimates)"
        )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-order", type=int, default=8)
    parser.add_argument("--stretch", type=int, help="slice one stretch order (9 or 10)")
    parser.add_argument("--budget", type=float, default=300.0)
    args = parser.parse_args()
    if args.stretch:
        stretch_slice(args.stretch, args.budget)
    else:
        timed_counts(args.max_order)


if __name__ == "__main__":
    main()
