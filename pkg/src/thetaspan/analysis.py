"""Shortest paths, spanning ratios, degree statistics, planarity and the
table of known spanning-ratio bounds."""

from __future__ import annotations

import heapq
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import floyd_warshall

from .spanners import GraphKind, SpannerGraph

ORACLE_MAX_N = 2000


@dataclass(frozen=True)
class PathWitness:
    vertices: tuple[int, ...]
    length: float

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.vertices[:-1], self.vertices[1:]))

    def edge_lengths(self, graph: SpannerGraph) -> list[float]:
        c = graph.points.coords
        return [float(np.hypot(*(c[v] - c[u]))) for u, v in self.edges]


@dataclass(frozen=True)
class StretchReport:
    max_ratio: float
    witness: tuple[int, int] | None
    pair_count: int
    disconnected_pairs: int
    pairs: np.ndarray | None = field(default=None, repr=False)

    @property
    def connected(self) -> bool:
        return self.disconnected_pairs == 0


def _check_vertex(graph: SpannerGraph, v: int) -> None:
    if not (0 <= v < graph.n):
        raise KeyError(f"unknown point id {v}")


def single_source(graph: SpannerGraph, source: int, target: int | None = None,
                  max_edge: float = math.inf):
    """Dijkstra over the undirected version of ``graph``.

    Returns ``(dist, pred)`` lists; unreachable entries hold ``inf`` / ``-1``.
    Among equal-length routes the smaller predecessor id wins. Stops early
    once ``target`` is settled. Edges longer than ``max_edge`` are ignored.
    """
    adj = graph.adjacency
    n = graph.n
    dist = [math.inf] * n
    pred = [-1] * n
    done = [False] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        if u == target:
            break
        for v, w in adj[u]:
            if done[v] or w > max_edge:
                continue
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                pred[v] = u
                heapq.heappush(heap, (nd, v))
            elif nd == dist[v] and u < pred[v]:
                pred[v] = u
    return dist, pred


def walk_back(pred: list[int], source: int, target: int) -> tuple[int, ...]:
    path = [target]
    while path[-1] != source:
        path.append(pred[path[-1]])
    return tuple(reversed(path))


def shortest_path(graph: SpannerGraph, a: int, b: int, max_edge: float = math.inf) -> PathWitness | None:
    """Shortest path between ``a`` and ``b`` ignoring edge directions; ``None`` if unreachable.

    With ``max_edge`` only edges of at most that length may be used.
    """
    _check_vertex(graph, a)
    _check_vertex(graph, b)
    if a == b:
        return PathWitness((a,), 0.0)
    dist, pred = single_source(graph, a, b, max_edge)
    if math.isinf(dist[b]):
        return None
    return PathWitness(walk_back(pred, a, b), dist[b])


def _euclid_matrix(coords: np.ndarray) -> np.ndarray:
    d = coords[:, None, :] - coords[None, :, :]
    return np.hypot(d[..., 0], d[..., 1])


def _map_sources(graph: SpannerGraph, sources, workers: int):
    fn = lambda s: single_source(graph, s)[0]
    if workers <= 1:
        return [fn(s) for s in sources]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, sources))


def distance_matrix(graph: SpannerGraph, *, workers: int = 1) -> np.ndarray:
    """All-pairs graph distances from one Dijkstra run per source."""
    rows = _map_sources(graph, range(graph.n), workers)
    return np.array(rows, dtype=np.float64).reshape(graph.n, graph.n)


def spanning_ratio(graph: SpannerGraph, *, workers: int = 1, keep_pairs: bool = False) -> StretchReport:
    """Maximum over unordered pairs of graph distance divided by Euclidean distance.

    Unreachable pairs are counted in ``disconnected_pairs`` and left out of
    the maximum rather than propagating infinities.
    """
    n = graph.n
    if n < 2:
        raise ValueError("spanning ratio needs at least two points")
    D = distance_matrix(graph, workers=workers)
    E = _euclid_matrix(graph.points.coords)
    iu, ju = np.triu_indices(n, 1)
    d, e = D[iu, ju], E[iu, ju]
    reach = np.isfinite(d)
    ratios = np.where(reach, d / e, -np.inf)
    if reach.any():
        best = int(np.argmax(ratios))
        max_ratio, witness = float(ratios[best]), (int(iu[best]), int(ju[best]))
    else:
        max_ratio, witness = math.nan, None
    pairs = np.column_stack([iu, ju, e, d]) if keep_pairs else None
    return StretchReport(max_ratio, witness, int(iu.size), int((~reach).sum()), pairs)


def per_edge_stretch(theta6: SpannerGraph, host: SpannerGraph, *, workers: int = 1) -> float:
    """Largest ``|path_host(a, b)| / |ab|`` over the edges ``ab`` of Theta_6."""
    if theta6.kind is not GraphKind.THETA or theta6.scheme.k != 6:
        raise ValueError("first argument must be a Theta_6 graph")
    if theta6.points != host.points:
        raise ValueError("graphs are built on different point sets")
    if len(theta6) == 0:
        return 1.0
    sources = sorted(set(theta6.sources.tolist()))
    rows = dict(zip(sources, _map_sources(host, sources, workers)))
    worst = 0.0
    for s, t, l in zip(theta6.sources.tolist(), theta6.targets.tolist(), theta6.lengths.tolist()):
        worst = max(worst, rows[s][t] / l)
    return worst


def all_pairs_oracle(graph: SpannerGraph) -> np.ndarray:
    """Floyd-Warshall distances on the undirected weighted graph, independent of :func:`single_source`."""
    n = graph.n
    if n > ORACLE_MAX_N:
        raise ValueError(f"all_pairs_oracle is limited to n <= {ORACLE_MAX_N}, got {n}")
    c = graph.points.coords
    w = np.zeros((n, n))
    d = c[graph.targets] - c[graph.sources]
    w[graph.sources, graph.targets] = np.hypot(d[:, 0], d[:, 1])
    return floyd_warshall(w, directed=False)


@dataclass(frozen=True)
class DegreeStats:
    max_in: int
    max_out: int
    max_total: int
    histogram: dict[int, int]
    in_degree: np.ndarray = field(repr=False)
    out_degree: np.ndarray = field(repr=False)


def degree_stats(graph: SpannerGraph) -> DegreeStats:
    """In/out/total degree counts; total degree is in-degree plus out-degree."""
    ind, outd = graph.in_degrees(), graph.out_degrees()
    total = ind + outd
    values, counts = np.unique(total, return_counts=True)
    hist = {int(v): int(c) for v, c in zip(values, counts)}
    mx = lambda a: int(a.max()) if a.size else 0
    return DegreeStats(mx(ind), mx(outd), mx(total), hist, ind, outd)


def crossing_count(graph: SpannerGraph) -> int:
    """Number of pairs of undirected edges that cross at a point interior to both."""
    segs = np.array(sorted(graph.undirected_pairs()), dtype=np.int64).reshape(-1, 2)
    m = segs.shape[0]
    if m < 2:
        return 0
    c = graph.points.coords
    p, q = c[segs[:, 0]], c[segs[:, 1]]

    def orient(a, b, r):
        return (b[..., 0] - a[..., 0]) * (r[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (r[..., 0] - a[..., 0])

    P, Q = p[:, None, :], q[:, None, :]
    R, S = p[None, :, :], q[None, :, :]
    o1, o2 = orient(P, Q, R), orient(P, Q, S)
    o3, o4 = orient(R, S, P), orient(R, S, Q)
    proper = (o1 * o2 < 0) & (o3 * o4 < 0)
    share = (
        (segs[:, None, 0] == segs[None, :, 0]) | (segs[:, None, 0] == segs[None, :, 1])
        | (segs[:, None, 1] == segs[None, :, 0]) | (segs[:, None, 1] == segs[None, :, 1])
    )
    return int(np.triu(proper & ~share, 1).sum())


@dataclass(frozen=True)
class TheoreticalBound:
    """A known spanning-ratio bound: ``status`` is finite, infinite, open or unknown."""

    status: str
    value: float | None = None

    @property
    def finite(self) -> bool:
        return self.status == "finite"

    def __str__(self) -> str:
        if self.finite:
            return f"{self.value:.6g}"
        return "inf" if self.status == "infinite" else self.status


_INF = TheoreticalBound("infinite", math.inf)
_OPEN = TheoreticalBound("open")
_UNKNOWN = TheoreticalBound("unknown")

_SMALL_K = {
    4: {GraphKind.YAO: 696.1, GraphKind.THETA: 237.0, GraphKind.YAO_YAO: math.inf, GraphKind.THETA_THETA: math.inf},
    5: {GraphKind.YAO: 3.74, GraphKind.THETA: 9.96, GraphKind.YAO_YAO: None, GraphKind.THETA_THETA: math.inf},
    6: {GraphKind.YAO: 5.8, GraphKind.THETA: 2.0, GraphKind.YAO_YAO: math.inf, GraphKind.THETA_THETA: None},
}

# keyed by k' = k / 6, for k' at or above the key
_YAO_YAO_6K = ((8, 4.75), (6, 11.67))
_THETA_THETA_6K = ((8, 4.64), (7, 5.63), (6, 7.82), (5, 16.76))


def _finite(v: float) -> TheoreticalBound:
    return TheoreticalBound("finite", float(v))


def theoretical_bound(kind, k: int) -> TheoreticalBound:
    """Best known upper bound on the spanning ratio for ``kind`` with ``k`` cones."""
    kind = GraphKind.parse(kind)
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if kind is GraphKind.HALF_THETA6:
        return _finite(2.0) if k == 6 else _UNKNOWN
    if k < 4:
        return _INF
    if k in _SMALL_K:
        v = _SMALL_K[k][kind]
        if v is None:
            return _OPEN
        return _INF if math.isinf(v) else _finite(v)
    th = 2 * math.pi / k
    s, c = math.sin(th / 2), math.cos(th / 2)
    if kind is GraphKind.YAO:
        if k % 2:
            return _finite(1 / (1 - 2 * math.sin(3 * th / 8)))
        return _finite(1 / (1 - 2 * s))
    if kind is GraphKind.THETA:
        if k % 4 == 2:
            return _finite(1 + 2 * s)
        if k % 4 == 0:
            return _finite(1 + 2 * s / (c - s))
        return _finite(math.cos(th / 4) / (c - math.sin(3 * th / 4)))
    table = _YAO_YAO_6K if kind is GraphKind.YAO_YAO else _THETA_THETA_6K
    if k % 6 == 0:
        for kp, v in table:
            if k // 6 >= kp:
                return _finite(v)
    return _UNKNOWN
