"""Recompute the stretch-constant tables and print them next to the published values."""

import argparse
import math

from thetaspan.lemmas.constants import CASES, THETAS, reproduce_tables, stretch_constant


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=2000, help="samples per axis before refinement")
    args = ap.parse_args()

    rows = {(r.q, r.case): r for r in reproduce_tables(args.grid)}
    print(f"{'theta':<7}" + "".join(f"{c:>24}" for c in CASES))
    for q in THETAS:
        cells = [f"{rows[(q, c)].computed:9.4f} ({rows[(q, c)].published:.4f})" for c in CASES]
        print(f"pi/{q:<4}" + "".join(f"{c:>24}" for c in cells))
    worst = max(r.rel_error for r in rows.values())
    print(f"\nworst relative error: {worst:.2e}")

    th = math.pi / 15
    for case in ("C62_low_beta", "C62_high_beta", "C66_low_alpha"):
        rep = stretch_constant(th, case, args.grid)
        args_txt = ", ".join(f"{a:.6f}" for a in rep.argopt)
        print(f"pi/15 {case:<15} objective {rep.objective:.6f} at ({args_txt})")


if __name__ == "__main__":
    main()
