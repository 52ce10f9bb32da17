"""Degenerate the basic invariants of every small symmetric pair and compare the
bi-degrees of the highest components with the closed-form rows."""

import argparse
import time

from z2contract.invariants import (
    NotInTable,
    basic_invariants,
    bidegree_bound_check,
    table_expected,
    table_row_literal,
    z2_degenerate,
)
from z2contract.liealg import build_symmetric_pair


def fmt(bds):
    return " ".join(f"({a},{b})" for a, b in sorted(bds))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gl", type=int, default=3, help="largest first block for gl")
    ap.add_argument("--so", type=int, default=5, help="largest first block for so")
    ap.add_argument("--size", type=int, default=9, help="largest matrix size")
    args = ap.parse_args()
    grid = [("GL", n, m) for n in range(1, args.gl + 1) for m in range(1, n + 1) if 2 * n <= args.size + 1]
    grid += [("SO", n, m) for n in range(1, args.so + 1) for m in range(1, n + 1) if 3 <= n + m <= args.size]
    print(f"{'pair':10} {'sec':>6}  {'free':5} {'bound':5}  bidegrees | closed form | literal row")
    for fam, n, m in grid:
        pair = build_symmetric_pair(fam, n, m)
        t0 = time.perf_counter()
        res = z2_degenerate(basic_invariants(pair))
        secs = time.perf_counter() - t0
        bound = bidegree_bound_check(pair, res).status.value
        try:
            oracle, literal = fmt(table_expected(fam, n, m)), fmt(table_row_literal(fam, n, m))
        except NotInTable:
            oracle = literal = "-"
        print(f"{pair.label:10} {secs:6.2f}  {str(res.independent):5} {bound:5}  "
              f"{fmt(res.bidegrees)} | {oracle} | {literal}")


if __name__ == "__main__":
    main()
