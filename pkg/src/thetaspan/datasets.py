"""Seeded point-set generators."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import PointSet

DISTRIBUTIONS = ("uniform", "grid", "circle_star", "clustered")


@dataclass(frozen=True)
class PointSetSpec:
    """What to generate. ``bbox`` is ``(xmin, ymin, xmax, ymax)``; circle_star ignores it."""

    distribution: str = "uniform"
    n: int = 100
    seed: int = 0
    bbox: tuple[float, float, float, float] = (0.0, 0.0, 1.0, 1.0)
    clusters: int = 5
    spread: float = 0.05

    def __post_init__(self):
        object.__setattr__(self, "distribution", self.distribution.replace("-", "_"))
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {self.distribution!r}; choose from {DISTRIBUTIONS}")
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        x0, y0, x1, y1 = self.bbox
        if not (x1 > x0 and y1 > y0):
            raise ValueError(f"empty bounding box {self.bbox}")


def _dedupe(rng, pts: np.ndarray, draw) -> np.ndarray:
    """Redraw rows that repeat an earlier row until all rows are distinct."""
    for _ in range(1000):
        _, first = np.unique(pts, axis=0, return_index=True)
        dup = np.setdiff1d(np.arange(len(pts)), first)
        if dup.size == 0:
            return pts
        pts[dup] = draw(dup.size)
    raise RuntimeError("could not draw distinct points")


def generate(spec: PointSetSpec) -> PointSet:
    """Deterministic point set for ``spec``."""
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    x0, y0, x1, y1 = spec.bbox
    lo, hi = np.array([x0, y0]), np.array([x1, y1])

    if spec.distribution == "uniform":
        draw = lambda m: rng.uniform(lo, hi, size=(m, 2))
        pts = _dedupe(rng, draw(n), draw)
    elif spec.distribution == "grid":
        cols = math.ceil(math.sqrt(n))
        rows = math.ceil(n / cols)
        xs = np.linspace(x0, x1, cols)
        ys = np.linspace(y0, y1, rows) if rows > 1 else np.array([y0])
        gx, gy = np.meshgrid(xs, ys)
        pts = np.column_stack([gx.ravel(), gy.ravel()])[:n]
    elif spec.distribution == "circle_star":
        m = n - 1
        ang = 2 * np.pi * np.arange(m) / max(m, 1) + 1e-4
        rim = np.column_stack([np.cos(ang), np.sin(ang)])
        pts = np.vstack([rim, [[0.0, 0.0]]])
    else:
        centres = rng.uniform(lo, hi, size=(spec.clusters, 2))
        scale = spec.spread * (hi - lo)

        def draw(m):
            which = rng.integers(0, spec.clusters, size=m)
            return np.clip(centres[which] + rng.normal(size=(m, 2)) * scale, lo, hi)

        pts = _dedupe(rng, draw(n), draw)
    return PointSet(pts)


def circle_star(n: int) -> PointSet:
    """``n - 1`` points evenly spaced on the unit circle plus the centre (last id)."""
    return generate(PointSetSpec("circle_star", n))


def uniform(n: int, seed: int) -> PointSet:
    return generate(PointSetSpec("uniform", n, seed))
