"""Cone-based spanner construction: Yao, Theta, their reverse-filtered
subgraphs (Yao-Yao, Theta-Theta) and half-Theta_6.

Construction is the naive all-pairs scan, vectorised with numpy. Ties are
resolved by a fixed total order (primary metric, other metric, then id), so
the edge set never depends on iteration order or on the number of workers.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

import numpy as np

from .geometry import ConeScheme, PointSet, bisector_projections, cone_indices


class GraphKind(str, enum.Enum):
    YAO = "yao"
    THETA = "theta"
    YAO_YAO = "yao-yao"
    THETA_THETA = "theta-theta"
    HALF_THETA6 = "half-theta6"

    @classmethod
    def parse(cls, value) -> "GraphKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {"yaoyao": "yao-yao", "thetatheta": "theta-theta", "halftheta6": "half-theta6"}
        key = aliases.get(key.replace("-", ""), key)
        return cls(key)


class DirectedEdge(NamedTuple):
    source: int
    target: int
    cone: int
    length: float
    projection: float


def as_point_set(points) -> PointSet:
    return points if isinstance(points, PointSet) else PointSet(points)


@dataclass(frozen=True, eq=False)
class SpannerGraph:
    """Directed cone graph stored as parallel edge arrays, sorted by (source, target)."""

    scheme: ConeScheme
    points: PointSet
    kind: GraphKind
    sources: np.ndarray
    targets: np.ndarray
    cones: np.ndarray
    lengths: np.ndarray
    projections: np.ndarray
    parity: str | None = None

    def __post_init__(self):
        for name in ("sources", "targets", "cones", "lengths", "projections"):
            arr = np.ascontiguousarray(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return int(self.sources.shape[0])

    def __iter__(self) -> Iterator[DirectedEdge]:
        return iter(self.edges)

    @cached_property
    def edges(self) -> tuple[DirectedEdge, ...]:
        return tuple(
            DirectedEdge(int(s), int(t), int(c), float(l), float(p))
            for s, t, c, l, p in zip(self.sources, self.targets, self.cones, self.lengths, self.projections)
        )

    def edge_pairs(self) -> set[tuple[int, int]]:
        return set(zip(self.sources.tolist(), self.targets.tolist()))

    def undirected_pairs(self) -> set[tuple[int, int]]:
        return {(min(s, t), max(s, t)) for s, t in zip(self.sources.tolist(), self.targets.tolist())}

    def has_edge(self, source: int, target: int) -> bool:
        return (source, target) in self._pair_index

    def has_undirected(self, a: int, b: int) -> bool:
        return (a, b) in self._pair_index or (b, a) in self._pair_index

    @cached_property
    def _pair_index(self) -> dict[tuple[int, int], int]:
        return {(s, t): i for i, (s, t) in enumerate(zip(self.sources.tolist(), self.targets.tolist()))}

    @cached_property
    def _out_index(self) -> dict[tuple[int, int], int]:
        return {(s, c): i for i, (s, c) in enumerate(zip(self.sources.tolist(), self.cones.tolist()))}

    @cached_property
    def incoming_cones(self) -> np.ndarray:
        """Cone at each edge's target that contains its source."""
        c = self.points.coords
        d = c[self.sources] - c[self.targets]
        return cone_indices(d[:, 0], d[:, 1], self.scheme.k)

    @cached_property
    def _in_index(self) -> dict[tuple[int, int], list[int]]:
        out: dict[tuple[int, int], list[int]] = {}
        for i, (t, c) in enumerate(zip(self.targets.tolist(), self.incoming_cones.tolist())):
            out.setdefault((t, c), []).append(i)
        return out

    def out_edge(self, source: int, cone: int) -> DirectedEdge | None:
        """The edge leaving ``source`` through ``cone``, if any."""
        i = self._out_index.get((source, cone))
        return None if i is None else self.edges[i]

    def in_edges(self, target: int, cone: int) -> list[DirectedEdge]:
        """Edges entering ``target`` from sources lying in its cone ``cone``."""
        return [self.edges[i] for i in self._in_index.get((target, cone), [])]

    @cached_property
    def out_table(self) -> np.ndarray:
        """``(n, k)`` array of the target leaving each (source, cone), or -1."""
        tab = np.full((self.n, self.scheme.k), -1, dtype=np.int64)
        tab[self.sources, self.cones] = self.targets
        tab.setflags(write=False)
        return tab

    @cached_property
    def in_table(self) -> np.ndarray:
        """``(n, k)`` array of the source entering each (target, cone at target), or -1.

        Only defined for reverse-filtered graphs, where that source is unique.
        """
        if self.kind not in (GraphKind.YAO_YAO, GraphKind.THETA_THETA):
            raise ValueError("in_table needs a reverse-filtered graph")
        tab = np.full((self.n, self.scheme.k), -1, dtype=np.int64)
        tab[self.targets, self.incoming_cones] = self.sources
        tab.setflags(write=False)
        return tab

    @cached_property
    def adjacency(self) -> list[list[tuple[int, float]]]:
        """Undirected adjacency lists ``(neighbour, euclidean length)``, sorted by id."""
        nbrs: list[dict[int, float]] = [dict() for _ in range(self.n)]
        for s, t, l in zip(self.sources.tolist(), self.targets.tolist(), self.lengths.tolist()):
            nbrs[s][t] = l
            nbrs[t][s] = l
        return [sorted(d.items()) for d in nbrs]

    def out_degrees(self) -> np.ndarray:
        return np.bincount(self.sources, minlength=self.n)

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.targets, minlength=self.n)

    def with_edges(self, mask, kind: GraphKind | None = None, parity: str | None = None) -> "SpannerGraph":
        mask = np.asarray(mask, dtype=bool)
        return SpannerGraph(
            self.scheme, self.points, kind or self.kind,
            self.sources[mask], self.targets[mask], self.cones[mask],
            self.lengths[mask], self.projections[mask], parity,
        )


def _chunks(n: int, workers: int) -> list[np.ndarray]:
    workers = max(1, min(int(workers), max(n, 1)))
    return [c for c in np.array_split(np.arange(n), workers) if c.size]


def _map(fn, chunks, workers: int):
    if workers <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, chunks))


def _first_per_group(keys: tuple[np.ndarray, ...], group_a: np.ndarray, group_b: np.ndarray) -> np.ndarray:
    """Indices of the lexicographically smallest row of each ``(group_a, group_b)`` group.

    ``keys`` are tie-break keys in increasing priority (numpy lexsort order).
    """
    order = np.lexsort(keys + (group_b, group_a))
    ga, gb = group_a[order], group_b[order]
    first = np.ones(order.shape[0], dtype=bool)
    first[1:] = (ga[1:] != ga[:-1]) | (gb[1:] != gb[:-1])
    return order[first]


def _forward_chunk(coords: np.ndarray, sources: np.ndarray, k: int, by_projection: bool):
    n = coords.shape[0]
    dx = coords[None, :, 0] - coords[sources, None, 0]
    dy = coords[None, :, 1] - coords[sources, None, 1]
    src = np.repeat(sources, n)
    tgt = np.tile(np.arange(n), sources.shape[0])
    keep = src != tgt
    dx, dy = dx.ravel()[keep], dy.ravel()[keep]
    src, tgt = src[keep], tgt[keep]
    cones = cone_indices(dx, dy, k)
    lengths = np.hypot(dx, dy)
    proj = bisector_projections(dx, dy, cones, k)
    primary, secondary = (proj, lengths) if by_projection else (lengths, proj)
    pick = _first_per_group((tgt, secondary, primary), src, cones)
    pick = pick[np.lexsort((tgt[pick], src[pick]))]
    return src[pick], tgt[pick], cones[pick], lengths[pick], proj[pick]


def _build_forward(points, scheme: ConeScheme, kind: GraphKind, workers: int) -> SpannerGraph:
    pts = as_point_set(points)
    coords = pts.coords
    n = len(pts)
    if n == 0:
        raise ValueError("need at least one point")
    by_proj = kind is GraphKind.THETA
    parts = _map(lambda s: _forward_chunk(coords, s, scheme.k, by_proj), _chunks(n, workers), workers)
    arrays = [np.concatenate([p[i] for p in parts]) for i in range(5)]
    return SpannerGraph(scheme, pts, kind, *arrays)


def build_yao(points, scheme: ConeScheme, *, workers: int = 1) -> SpannerGraph:
    """Directed Yao graph: per nonempty cone, an edge to the Euclidean-nearest point.

    Ties: smaller bisector projection, then smaller target id.
    """
    return _build_forward(points, scheme, GraphKind.YAO, workers)


def build_theta(points, scheme: ConeScheme, *, workers: int = 1) -> SpannerGraph:
    """Directed Theta graph: per nonempty cone, an edge to the point whose
    projection on the cone bisector is nearest.

    Ties: smaller Euclidean length, then smaller target id.
    """
    return _build_forward(points, scheme, GraphKind.THETA, workers)


def _reverse_chunk(graph: SpannerGraph, targets: np.ndarray, by_projection: bool):
    sel = np.isin(graph.targets, targets)
    idx = np.flatnonzero(sel)
    c = graph.points.coords
    src, tgt = graph.sources[idx], graph.targets[idx]
    d = c[src] - c[tgt]
    cones_at_t = graph.incoming_cones[idx]
    lengths = graph.lengths[idx]
    if by_projection:
        primary = bisector_projections(d[:, 0], d[:, 1], cones_at_t, graph.scheme.k)
        secondary = lengths
    else:
        primary = lengths
        secondary = bisector_projections(d[:, 0], d[:, 1], cones_at_t, graph.scheme.k)
    pick = _first_per_group((src, secondary, primary), tgt, cones_at_t)
    return idx[pick]


def reverse_filter(graph: SpannerGraph, *, workers: int = 1) -> SpannerGraph:
    """Keep one incoming edge per (target, cone at the target containing the source).

    Yao input keeps the shortest edge and yields Yao-Yao; Theta input keeps the
    edge with the smallest projection on that cone's bisector at the target and
    yields Theta-Theta. Ties: the other metric, then smaller source id.
    """
    if graph.kind is GraphKind.YAO:
        out_kind, by_proj = GraphKind.YAO_YAO, False
    elif graph.kind is GraphKind.THETA:
        out_kind, by_proj = GraphKind.THETA_THETA, True
    else:
        raise ValueError(f"reverse_filter needs a Yao or Theta graph, got {graph.kind.value}")
    parts = _map(lambda t: _reverse_chunk(graph, t, by_proj), _chunks(graph.n, workers), workers)
    keep = np.zeros(len(graph), dtype=bool)
    for p in parts:
        keep[p] = True
    return graph.with_edges(keep, kind=out_kind)


def build_yao_yao(points, scheme: ConeScheme, *, workers: int = 1) -> SpannerGraph:
    return reverse_filter(build_yao(points, scheme, workers=workers), workers=workers)


def build_theta_theta(points, scheme: ConeScheme, *, workers: int = 1) -> SpannerGraph:
    return reverse_filter(build_theta(points, scheme, workers=workers), workers=workers)


def build_half_theta6(points, parity: str = "even", *, workers: int = 1) -> SpannerGraph:
    """Edges of Theta_6 whose source cone index has the requested parity
    (``even`` keeps cones 0, 2, 4; ``odd`` keeps 1, 3, 5)."""
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    theta6 = build_theta(points, ConeScheme(6), workers=workers)
    want = 0 if parity == "even" else 1
    return theta6.with_edges(theta6.cones % 2 == want, kind=GraphKind.HALF_THETA6, parity=parity)


def build(kind, points, k: int = 6, *, parity: str = "even", workers: int = 1) -> SpannerGraph:
    """Build a graph of any supported kind."""
    kind = GraphKind.parse(kind)
    if kind is GraphKind.HALF_THETA6:
        if k != 6:
            raise ValueError("half-theta6 is only defined for k = 6")
        return build_half_theta6(points, parity, workers=workers)
    scheme = ConeScheme(k)
    builders = {
        GraphKind.YAO: build_yao,
        GraphKind.THETA: build_theta,
        GraphKind.YAO_YAO: build_yao_yao,
        GraphKind.THETA_THETA: build_theta_theta,
    }
    return builders[kind](points, scheme, workers=workers)


@dataclass(frozen=True)
class ThetaFamily:
    """Theta_6, Theta_k and Theta-Theta_k on one point set (k a multiple of 6)."""

    theta6: SpannerGraph
    theta_k: SpannerGraph
    theta_theta_k: SpannerGraph

    @classmethod
    def build(cls, points, k: int, *, workers: int = 1) -> "ThetaFamily":
        pts = as_point_set(points)
        scheme = ConeScheme(k)
        if not scheme.analysed:
            raise ValueError(f"k must be a multiple of 6, got {k}")
        theta6 = build_theta(pts, ConeScheme(6), workers=workers)
        theta_k = theta6 if k == 6 else build_theta(pts, scheme, workers=workers)
        return cls(theta6, theta_k, reverse_filter(theta_k, workers=workers))

    @property
    def points(self) -> PointSet:
        return self.theta6.points

    @property
    def scheme(self) -> ConeScheme:
        return self.theta_k.scheme
