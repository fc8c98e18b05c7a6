"""Command-line entry point: ``thetaspan {gen,build,stretch,verify,bounds,export}``.

Exit codes: 0 on success, 1 when a verification fails, 2 on bad usage or input.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import math
import re
import sys

from .analysis import degree_stats, per_edge_stretch, spanning_ratio, theoretical_bound
from .datasets import PointSetSpec, generate
from .io import ParseError, export_svg, read_graph, read_points, write_graph, write_points
from .spanners import GraphKind, build, build_theta
from .geometry import ConeScheme

REPORT_COLUMNS = ("check", "theta", "case", "trials", "failures", "worst_slack")
DEFAULT_THETAS = ("pi/15", "pi/18", "pi/21", "pi/24")


class UsageError(Exception):
    pass


def parse_theta(text: str) -> float:
    """``pi/N``, ``N*pi/M`` style fractions of pi, or a plain number of radians."""
    s = text.strip().lower().replace(" ", "")
    m = re.fullmatch(r"(?:(\d+(?:\.\d*)?)\*?)?pi(?:/(\d+(?:\.\d*)?))?", s)
    try:
        if m:
            num = float(m.group(1)) if m.group(1) else 1.0
            den = float(m.group(2)) if m.group(2) else 1.0
            value = num * math.pi / den
        else:
            value = float(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse theta {text!r}") from None
    if not (value > 0 and math.isfinite(value)):
        raise UsageError(f"theta must be positive, got {text!r}")
    return value


def cmd_gen(args) -> int:
    spec = PointSetSpec(args.dist, args.n, args.seed)
    pts = generate(spec)
    if args.out:
        write_points(pts, args.out)
        print(f"wrote {len(pts)} points to {args.out}")
    else:
        print("id,x,y")
        for p in pts:
            print(f"{p.id},{p.x!r},{p.y!r}")
    return 0


def cmd_build(args) -> int:
    pts = read_points(args.input)
    kind = GraphKind.parse(args.kind)
    g = build(kind, pts, args.k, parity=args.parity, workers=args.workers)
    if args.out:
        write_graph(g, args.out)
    st = degree_stats(g)
    print(f"kind: {g.kind.value}")
    print(f"k: {g.scheme.k}")
    print(f"points: {g.n}")
    print(f"edges: {len(g)}")
    if g.n:
        print(f"max_in: {st.max_in} (point {int(st.in_degree.argmax())})")
        print(f"max_out: {st.max_out} (point {int(st.out_degree.argmax())})")
        print(f"max_total: {st.max_total}")
    if args.out:
        print(f"wrote graph to {args.out}")
    return 0


def cmd_stretch(args) -> int:
    g = read_graph(args.graph)
    rep = spanning_ratio(g, workers=args.workers, keep_pairs=bool(args.report))
    print(f"spanning_ratio: {rep.max_ratio!r}")
    if rep.witness:
        print(f"witness: {rep.witness[0]} {rep.witness[1]}")
    print(f"pairs: {rep.pair_count}")
    print(f"disconnected_pairs: {rep.disconnected_pairs}")
    if args.against_theta6:
        t6 = build_theta(g.points, ConeScheme(6))
        print(f"per_edge_stretch: {per_edge_stretch(t6, g, workers=args.workers)!r}")
    if args.report:
        with open(args.report, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["i", "j", "euclidean", "graph", "ratio"])
            for i, j, e, d in rep.pairs.tolist():
                w.writerow([int(i), int(j), repr(e), repr(d), repr(d / e)])
    return 0 if rep.connected else 1


def _verify_tables(args) -> int:
    from .lemmas.constants import reproduce_tables, stretch_constant

    rows = reproduce_tables(grid=args.grid)
    print(f"{'theta':>6} {'case':<22} {'computed':>9} {'published':>9} {'rel_err':>9}")
    for r in rows:
        flag = "ok" if r.matches() else "MISMATCH"
        print(f"pi/{r.q:<3} {r.case:<22} {r.computed:9.4f} {r.published:9.4f} {r.rel_error:9.2e} {flag}")
    good = sum(r.matches() for r in rows)
    th = math.pi / 15
    mx = stretch_constant(th, "C62_low_beta", args.grid).objective
    my = stretch_constant(th, "C62_high_beta", args.grid).objective
    mz = stretch_constant(th, "C66_low_alpha", args.grid).objective
    print(f"max X(pi/15) = {mx:.6f}, max Y(pi/15) = {my:.6f}, min Z(pi/15) = {mz:.6f}, "
          f"8 sin(pi/30) = {8 * math.sin(math.pi / 30):.6f}")
    print(f"{good}/{len(rows)} entries matched within 0.5%")
    return 0 if good == len(rows) else 1


def cmd_verify(args) -> int:
    from .lemmas.harness import HarnessConfig, run_harness

    if args.tables:
        return _verify_tables(args)
    lemmas = (2, 3, 4, 5, 6) if args.lemma == "all" else (int(args.lemma),)
    thetas = args.theta or list(DEFAULT_THETAS)
    status = 0
    rows = []
    for text in thetas:
        cfg = HarnessConfig(theta=parse_theta(text), lemmas=lemmas, trials=args.trials, seed=args.seed)
        rep = run_harness(cfg)
        rows.extend(rep.rows())
        for n in lemmas:
            name = f"lemma{n}"
            worst = rep.worst_slack(name)
            print(f"{name} theta={text} checked={rep.count(name)} failures={rep.failures(name)} "
                  f"worst_slack={worst:.3e}")
        inv = rep.failures("invariants")
        print(f"configs theta={text} non_degenerate={rep.configs} degenerate={rep.degenerate} "
              f"invariant_failures={inv}")
        if not rep.ok:
            status = 1
            for (check, case), t in rep.tallies.items():
                if t.failures:
                    print(f"FAIL {check} {case}: {t.example}", file=sys.stderr)
            if not rep.complete:
                print(f"FAIL theta={text}: quota of {cfg.trials} not reached", file=sys.stderr)
    if args.report:
        with open(args.report, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=REPORT_COLUMNS, lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({**r, "worst_slack": repr(r["worst_slack"])})
    print("all checks passed" if status == 0 else "verification FAILED")
    return status


def cmd_bounds(args) -> int:
    print(theoretical_bound(GraphKind.parse(args.kind), args.k))
    return 0


def cmd_export(args) -> int:
    g = read_graph(args.graph)
    if args.format == "svg":
        export_svg([g], args.out, fan_at=args.fan_at)
    else:
        write_graph(g, args.out, "dot")
    print(f"wrote {args.format} to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    kinds = [k.value for k in GraphKind]
    p = argparse.ArgumentParser(prog="thetaspan", description="Cone-based geometric spanners.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="generate a point set")
    s.add_argument("--dist", default="uniform", choices=["uniform", "grid", "circle-star", "clustered"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("build", help="build a spanner from a point file")
    s.add_argument("--kind", required=True, choices=kinds)
    s.add_argument("--k", type=int, default=6)
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out")
    s.add_argument("--parity", default="even", choices=["even", "odd"])
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(fn=cmd_build)

    s = sub.add_parser("stretch", help="spanning ratio of a graph file")
    s.add_argument("--graph", required=True)
    s.add_argument("--against-theta6", action="store_true")
    s.add_argument("--report")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(fn=cmd_stretch)

    s = sub.add_parser("verify", help="check the path lemmas or reproduce the stretch tables")
    s.add_argument("--lemma", default="all", choices=["2", "3", "4", "5", "6", "all"])
    s.add_argument("--theta", action="append", help="pi/N or radians; repeatable (default: all four)")
    s.add_argument("--trials", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tables", action="store_true")
    s.add_argument("--grid", type=int, default=2000)
    s.add_argument("--report")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("bounds", help="known spanning-ratio bound")
    s.add_argument("--kind", required=True, choices=kinds)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(fn=cmd_bounds)

    s = sub.add_parser("export", help="convert a graph file to DOT or SVG")
    s.add_argument("--graph", required=True)
    s.add_argument("--format", required=True, choices=["dot", "svg"])
    s.add_argument("--out", required=True)
    s.add_argument("--fan-at", type=int)
    s.set_defaults(fn=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except (UsageError, ParseError, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
