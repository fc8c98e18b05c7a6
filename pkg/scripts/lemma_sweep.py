"""Run the lemma harness over several cone angles and summarise slack per case."""

import argparse
import math
import time

from thetaspan.lemmas import HarnessConfig, run_harness


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[15, 18, 21, 24], help="theta = pi/q")
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    bad = 0
    for q in args.q:
        t0 = time.perf_counter()
        rep = run_harness(HarnessConfig(theta=math.pi / q, trials=args.trials, seed=args.seed))
        print(f"theta=pi/{q}: {rep.point_sets} point sets, {rep.configs} configs "
              f"({rep.degenerate} degenerate skipped), {time.perf_counter() - t0:.1f}s")
        for row in rep.rows():
            print(f"  {row['check']:<10} {row['case']:<16} n={row['trials']:<7} "
                  f"failures={row['failures']:<3} worst slack={row['worst_slack']:.3e}")
        bad += rep.failures() + (not rep.complete)
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
