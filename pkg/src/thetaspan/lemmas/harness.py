"""Batch verification of the configuration lemmas at a fixed cone angle.

Configurations come from two sources: uniform random point sets, and packed
gadgets built by the direct constructor, which is steered toward whichever
position of ``a'`` still lacks samples. Sampling continues until each
requested lemma has at least ``trials`` applicable checks.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from ..analysis import PathWitness, walk_back, single_source
from ..geometry import ConeScheme, PointSet
from ..spanners import ThetaFamily
from .checks import LEMMA_CASES, TOL, CheckResult, check_config, check_lemma_thetapath
from .configs import (check_invariants, config_from_ids, config_quadruples, distinct_rows,
                      pack_gadgets, sample_gadget)

ALL_LEMMAS = (2, 3, 4, 5, 6)


def theta_label(theta: float) -> str:
    q = math.pi / theta
    if abs(q - round(q)) < 1e-9:
        return f"pi/{int(round(q))}"
    return repr(theta)


@dataclass(frozen=True)
class HarnessConfig:
    theta: float
    lemmas: tuple[int, ...] = ALL_LEMMAS
    trials: int = 10_000
    seed: int = 0
    random_sets: int = 2
    random_n: int = 100
    batch: int = 16
    noise: int = 2
    tol: float = TOL
    max_batches: int = 10_000

    def __post_init__(self):
        k = 2 * math.pi / self.theta
        if abs(k - round(k)) > 1e-9 or round(k) % 6:
            raise ValueError(f"theta must be 2*pi/k with k a multiple of 6, got {self.theta!r}")
        bad = set(self.lemmas) - set(ALL_LEMMAS)
        if bad:
            raise ValueError(f"unknown lemmas {sorted(bad)}")
        if self.trials < 0:
            raise ValueError("trials must be non-negative")

    @property
    def k(self) -> int:
        return int(round(2 * math.pi / self.theta))


@dataclass
class Tally:
    trials: int = 0
    failures: int = 0
    worst_slack: float = math.inf
    example: str = ""

    def add(self, r: CheckResult, where: str = "") -> None:
        self.trials += 1
        if r.slack < self.worst_slack:
            self.worst_slack = r.slack
        if r.failed:
            self.failures += 1
            if not self.example:
                self.example = f"{where} {r.detail}".strip()


@dataclass
class HarnessReport:
    config: HarnessConfig
    tallies: dict[tuple[str, str], Tally] = field(default_factory=lambda: defaultdict(Tally))
    skipped: dict[str, int] = field(default_factory=lambda: defaultdict(int))
    degenerate: int = 0
    configs: int = 0
    point_sets: int = 0

    def count(self, check: str) -> int:
        return sum(t.trials for (c, _), t in self.tallies.items() if c == check)

    def failures(self, check: str | None = None) -> int:
        return sum(t.failures for (c, _), t in self.tallies.items() if check is None or c == check)

    def worst_slack(self, check: str) -> float:
        return min((t.worst_slack for (c, _), t in self.tallies.items() if c == check), default=math.inf)

    @property
    def complete(self) -> bool:
        """Every requested lemma reached its quota."""
        return all(self.count(f"lemma{n}") >= self.config.trials for n in self.config.lemmas)

    @property
    def ok(self) -> bool:
        return self.complete and self.failures() == 0

    def rows(self) -> list[dict]:
        """Rows with the columns ``check, theta, case, trials, failures, worst_slack``."""
        label = theta_label(self.config.theta)
        out = []
        for (check, case), t in sorted(self.tallies.items()):
            out.append(dict(check=check, theta=label, case=case, trials=t.trials,
                            failures=t.failures, worst_slack=t.worst_slack))
        return out


def _check_pairs(theta6, report: HarnessReport, quota: int, tol: float, where: str) -> None:
    n = theta6.n
    for a in range(n):
        if report.count("lemma2") >= quota:
            return
        dist, pred = single_source(theta6, a)
        for b in range(n):
            if b == a or math.isinf(dist[b]):
                continue
            path = PathWitness(walk_back(pred, a, b), dist[b])
            r = check_lemma_thetapath(a, b, theta6, path, tol)
            if r.status == "skip":
                report.skipped["lemma2"] += 1
            else:
                report.tallies[("lemma2", "any")].add(r, f"{where} a={a} b={b}")


def _check_configs(points: PointSet, fam: ThetaFamily, report: HarnessReport, wanted: set[str],
                   tol: float, where: str) -> None:
    quads = config_quadruples(fam)
    keep = distinct_rows(quads)
    report.degenerate += int((~keep).sum())
    for ids in quads[keep].tolist():
        c = config_from_ids(ids, points.coords, fam.scheme)
        report.configs += 1
        bad = check_invariants(c)
        inv = CheckResult("invariants", "fail" if bad else "pass", -math.inf if bad else math.inf,
                          c.case, "; ".join(bad))
        report.tallies[("invariants", c.case or "-")].add(inv, f"{where} ids={c.ids}")
        for r in check_config(c, fam.theta6, tol):
            if r.check not in wanted:
                continue
            if r.status == "skip":
                report.skipped[r.check] += 1
                continue
            report.tallies[(r.check, r.case or "-")].add(r, f"{where} ids={c.ids}")


def run_harness(cfg: HarnessConfig) -> HarnessReport:
    """Check every requested lemma on at least ``cfg.trials`` applicable instances."""
    report = HarnessReport(cfg)
    rng = np.random.default_rng([cfg.seed, cfg.k])
    wanted = {f"lemma{n}" for n in cfg.lemmas}
    scheme = ConeScheme(cfg.k)

    need_configs = wanted & {"lemma3", "lemma4", "lemma5", "lemma6"}
    for s in range(cfg.random_sets):
        pts = PointSet(rng.uniform(0.0, 1.0, size=(cfg.random_n, 2)))
        report.point_sets += 1
        fam = ThetaFamily.build(pts, cfg.k)
        if "lemma2" in wanted:
            _check_pairs(fam.theta6, report, cfg.trials, cfg.tol, f"uniform#{s}")
        if need_configs:
            _check_configs(pts, fam, report, wanted, cfg.tol, f"uniform#{s}")

    # more uniform sets for the triangle-path lemma if the quota is not met
    extra = 0
    while "lemma2" in wanted and report.count("lemma2") < cfg.trials and extra < cfg.max_batches:
        pts = PointSet(rng.uniform(0.0, 1.0, size=(cfg.random_n, 2)))
        report.point_sets += 1
        _check_pairs(ThetaFamily.build(pts, 6).theta6, report, cfg.trials, cfg.tol, f"uniform+{extra}")
        extra += 1

    targets = {n: LEMMA_CASES[n] for n in ("lemma4", "lemma5", "lemma6") if n in wanted}
    if "lemma3" in wanted and not targets:
        targets = {"lemma3": ("C62", "C65", "C66_low_alpha", "C66_high_alpha")}
    for b in range(cfg.max_batches):
        short = [n for n in targets if report.count(n) < cfg.trials]
        if not short and report.count("lemma3") >= (cfg.trials if "lemma3" in wanted else 0):
            break
        short = short or list(targets)
        gadgets = [
            sample_gadget(rng, cfg.theta, cfg.noise, want=set(targets[short[i % len(short)]]))
            for i in range(cfg.batch)
        ]
        pts = pack_gadgets(gadgets)
        report.point_sets += 1
        _check_configs(pts, ThetaFamily.build(pts, cfg.k), report, wanted, cfg.tol, f"gadgets#{b}")
    return report
