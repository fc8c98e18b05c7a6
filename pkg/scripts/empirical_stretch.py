"""Measured spanning ratio and per-edge stretch of Theta-Theta_k on random point sets."""

import argparse
import csv
import sys

import numpy as np

from thetaspan import PointSetSpec, ThetaFamily, generate, per_edge_stretch, spanning_ratio, theoretical_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--dist", default="uniform")
    ap.add_argument("--k", type=int, nargs="+", default=[30, 36, 42, 48])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--csv", help="write one row per (k, seed)")
    args = ap.parse_args()

    rows = []
    for k in args.k:
        ratios, edges = [], []
        for seed in range(1, args.seeds + 1):
            pts = generate(PointSetSpec(args.dist, args.n, seed))
            fam = ThetaFamily.build(pts, k, workers=args.workers)
            r = spanning_ratio(fam.theta_theta_k, workers=args.workers).max_ratio
            e = per_edge_stretch(fam.theta6, fam.theta_theta_k, workers=args.workers)
            ratios.append(r)
            edges.append(e)
            rows.append({"k": k, "seed": seed, "spanning_ratio": r, "per_edge_stretch": e})
        print(f"k={k:3d}  spanning ratio mean {np.mean(ratios):.4f} max {max(ratios):.4f}  "
              f"per-edge max {max(edges):.4f}  bound {theoretical_bound('theta-theta', k)}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
        print(f"wrote {args.csv}", file=sys.stderr)


if __name__ == "__main__":
    main()
