#!/usr/bin/env python3
"""Regenerate the displacement-group table for all quandles of orders 1..5.

Writes csv or markdown to stdout.  The packaged table
(src/quandles/data/dis_orders_1_5.csv) lists the same 34 classes through
fixed representative matrices; this script recomputes them from the
enumerator (canonical representatives), so the per-order name multisets can
be compared as an end-to-end self-check.
"""

from __future__ import annotations

import argparse

from quandles.autgroups import group_triple
from quandles.enumeration import enumerate_quandles
from quandles.gapio import emit_results_table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--format", choices=["csv", "md"], default="csv")
    parser.add_argument("--selector", choices=["dis", "inn", "aut", "all"], default="dis")
    parser.add_argument("--max-order", type=int, default=5)
    args = parser.parse_args()
    rows = []
    for n in range(1, args.max_order + 1):
        for q in enumerate_quandles(n).quandles:
            rows.append((q, group_triple(q)))
    print(emit_results_table(rows, args.selector, args.format))


if __name__ == "__main__":
    main()
