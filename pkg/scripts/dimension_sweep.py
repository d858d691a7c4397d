#!/usr/bin/env python3
"""Sweep vhat over (0, eta) and tabulate every applicable dimension bound.

Produces a plot-ready CSV: for eta = 1 the exact value, for eta > 1 the
baseline bound, the refined upper bound (where its window applies), the
construction lower bound, and the exact value on the resolvable windows.

Usage:
  python scripts/dimension_sweep.py --eta 2 --points 200 --csv sweep_eta2.csv
"""

import argparse
import csv
from fractions import Fraction as F

from dioph_lab import dimfx
from dioph_lab.sequences import parse_rational


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eta", type=parse_rational, default=F(2))
    ap.add_argument("--points", type=int, default=200)
    ap.add_argument("--csv", default="dimension_sweep.csv")
    args = ap.parse_args()

    eta = args.eta
    grid = dimfx.rational_linspace(F(0), eta, args.points + 2)[1:-1]
    rows = []
    for vhat in grid:
        base = dimfx.baseline_bound(eta, vhat).value
        row = {"vhat": str(vhat), "vhat_decimal": f"{float(vhat):.12g}",
               "baseline": f"{float(base):.12g}"}
        if eta == 1:
            row["exact"] = f"{float(dimfx.dim_eta1(vhat).value):.12g}"
        else:
            up = dimfx.refined_upper_bound(eta, vhat)
            low = dimfx.construction_lower_bound(eta, vhat)
            ex = dimfx.exact_dimension_window(eta, vhat)
            row["refined_upper"] = f"{float(up.value):.12g}" if up.domain_ok else ""
            row["lower"] = f"{float(low.value):.12g}"
            row["exact"] = f"{float(ex.value):.12g}" if ex.domain_ok else ""
        rows.append(row)

    fields = list(rows[0].keys())
    with open(args.csv, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    resolved = sum(1 for r in rows if r.get("exact"))
    print(f"wrote {len(rows)} points to {args.csv} "
          f"({resolved} with an exact value)")


if __name__ == "__main__":
    main()
