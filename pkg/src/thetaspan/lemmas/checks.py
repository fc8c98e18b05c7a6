"""Numerical checks of the path-length inequalities on canonical configurations,
and the recursive Theta-Theta_k path built by induction on Theta_6 edge length.

Every check returns a :class:`CheckResult` whose ``slack`` is
``(rhs - lhs) / |ab|`` for the tightest inequality involved; a check fails
when some slack drops below ``-tol``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..analysis import PathWitness, shortest_path
from ..geometry import ConeScheme, cone_index, t_function, triangle_in_cone
from ..spanners import GraphKind, SpannerGraph
from .configs import SIXTH, CanonicalConfig, lemma_case

TOL = 1e-9
SIX = ConeScheme(6)


@dataclass(frozen=True)
class CheckResult:
    check: str
    status: str  # "pass", "fail" or "skip"
    slack: float = math.inf
    case: str | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def failed(self) -> bool:
        return self.status == "fail"


def _verdict(check: str, slacks: dict[str, float], case: str | None, tol: float) -> CheckResult:
    name, worst = min(slacks.items(), key=lambda kv: kv[1])
    status = "fail" if worst < -tol else "pass"
    return CheckResult(check, status, worst, case, name if status == "fail" else "")


def _path(graph: SpannerGraph, u: int, v: int) -> PathWitness:
    p = shortest_path(graph, u, v)
    if p is None:
        raise ValueError(f"no Theta_6 path between {u} and {v}")
    return p


def _longest(path: PathWitness, graph: SpannerGraph) -> float:
    return max(path.edge_lengths(graph), default=0.0)


def _capped(graph: SpannerGraph, u: int, v: int, cap: float) -> float:
    """Length of the shortest path using only edges of length at most ``cap`` (inf if none)."""
    p = shortest_path(graph, u, v, max_edge=cap)
    return math.inf if p is None else p.length


def _require_theta6(graph: SpannerGraph) -> None:
    if graph.kind is not GraphKind.THETA or graph.scheme.k != 6:
        raise ValueError("expected a Theta_6 graph")


# -- paths in Theta_6 between the ends of a canonical triangle ---------------

def theta6_corners(coords: np.ndarray, a: int, b: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Corners of the 6-cone triangle at ``a`` through ``b`` (lower ray, upper ray) and its cone."""
    c = coords
    i = cone_index(SIX, c[a], c[b])
    d = c[b] - c[a]
    h = float(d @ SIX.bisector(i))
    tri = triangle_in_cone(SIX, c[a], i, h)
    return np.array(tri.corner_x), np.array(tri.corner_y), i


def corner_triangle(coords: np.ndarray, a: int, b: int, corner: str):
    """The 6-cone triangle at ``b`` cut off the ``corner`` ("lower" or "upper") of the
    triangle at ``a`` through ``b``, by the line through ``b`` parallel to the opposite side.

    Its apex is ``b``, one side runs along the base to the corner, and it lies
    inside the triangle at ``a``: cone ``i + 2`` at ``b`` for the upper corner and
    ``i - 2`` for the lower one, where ``i`` is the cone of ``b`` at ``a``.
    """
    lo, hi, i = theta6_corners(coords, a, b)
    x, cone = (hi, i + 2) if corner == "upper" else (lo, i - 2)
    bx = float(np.hypot(*(x - coords[b])))
    return triangle_in_cone(SIX, coords[b], cone % 6, bx * math.cos(math.pi / 6)), x


def check_lemma_thetapath(a: int, b: int, theta6: SpannerGraph, path: PathWitness | None = None,
                          tol: float = TOL) -> CheckResult:
    """Theta_6 path from ``a`` to ``b`` against ``|ay| + |by|`` when the corner triangle at ``x`` is empty.

    ``x, y`` are the two other corners of the 6-cone triangle at ``a``
    containing ``b``; both labellings are tried. The claim is that some
    Theta_6 path meets the length bound using only edges of length at most
    ``|ay|``: the shortest path is tried first, then the shortest path
    restricted to such edges. Skipped when neither corner triangle is empty.
    """
    _require_theta6(theta6)
    if a == b:
        raise ValueError("a and b must differ")
    c = theta6.points.coords
    lo, hi, _ = theta6_corners(c, a, b)
    ab = float(np.hypot(*(c[b] - c[a])))
    slacks: dict[str, float] = {}
    for corner, y in (("lower", hi), ("upper", lo)):
        tri, _ = corner_triangle(c, a, b, corner)
        if tri.height > 0.0 and tri.contains(c).any():
            continue
        if path is None:
            path = _path(theta6, a, b)
        ay = float(np.hypot(*(y - c[a])))
        by = float(np.hypot(*(y - c[b])))
        length = path.length
        if _longest(path, theta6) > ay + tol * ab:
            # the claim is about a path with short edges, which need not be the shortest one
            length = _capped(theta6, a, b, ay + tol * ab)
        slacks[f"x={corner}:length"] = (ay + by - length) / ab
    if not slacks:
        return CheckResult("lemma2", "skip", detail="neither corner triangle is empty")
    return _verdict("lemma2", slacks, None, tol)


# -- configuration lemmas -----------------------------------------------------

def check_lemma_abba(config: CanonicalConfig, tol: float = TOL) -> CheckResult:
    """``|ab'|`` and ``|a'b'|`` at most ``|ab|/cos(theta/2)``; lower bound on ``|ab'|`` when beta <= pi/6."""
    ab, abp, apbp = config.ab, config.ab_prime, config.a_prime_b_prime
    cap = ab / math.cos(config.theta / 2)
    slacks = {"ab'": (cap - abp) / ab, "a'b'": (cap - apbp) / ab}
    if config.beta <= math.pi / 6:
        low = ab * math.sin(SIXTH + config.gamma) / math.sin(SIXTH + config.beta)
        slacks["ab' lower"] = (abp - low) / ab
    return _verdict("lemma3", slacks, config.case, tol)


def _detour_check(check: str, config: CanonicalConfig, theta6: SpannerGraph, rhs: float,
                  edge_claim: bool, tol: float) -> CheckResult:
    """``|path(a, a')| + |path(b, b')| <= rhs``; with ``edge_claim`` the two paths
    must also use only edges strictly shorter than ``ab``."""
    _require_theta6(theta6)
    ab = config.ab
    ends = ((config.a, config.a_prime), (config.b, config.b_prime))
    paths = [_path(theta6, u, v) for u, v in ends]
    lhs = sum(p.length for p in paths)
    if edge_claim and max(_longest(p, theta6) for p in paths) >= ab:
        # fall back to the shortest paths avoiding edges of length >= |ab|
        cap = float(np.nextafter(ab, 0.0))
        lhs = sum(_capped(theta6, u, v, cap) for u, v in ends)
    slack = (rhs - lhs) / ab if math.isfinite(lhs) else -math.inf
    return _verdict(check, {"detour": slack}, lemma_case(config), tol)


def _skip(check: str, config: CanonicalConfig, why: str) -> CheckResult:
    return CheckResult(check, "skip", case=lemma_case(config), detail=why)


def check_lemma_paa1(config: CanonicalConfig, theta6: SpannerGraph, tol: float = TOL) -> CheckResult:
    """a' in the second 6-cone: detour at most ``(|ab| + |a'b'|) T(gamma) - 2|ab'| T(beta)``."""
    if config.case != "C62" or config.degenerate:
        return _skip("lemma4", config, "a' not in C62")
    rhs = ((config.ab + config.a_prime_b_prime) * t_function(config.gamma)
           - 2 * config.ab_prime * t_function(config.beta))
    return _detour_check("lemma4", config, theta6, rhs, config.theta <= math.pi / 6, tol)


def z_factor(theta: float, alpha: float) -> float:
    return (math.sin(SIXTH - alpha - theta) - math.sin(theta)) / math.sin(SIXTH - alpha)


def check_lemma_paasecond(config: CanonicalConfig, theta6: SpannerGraph, tol: float = TOL) -> CheckResult:
    """a' in the sixth 6-cone with alpha <= pi/6: detour at most ``|ab| - |a'b'| Z(theta, alpha)``."""
    if lemma_case(config) != "C66_low_alpha" or config.degenerate:
        return _skip("lemma5", config, "not C66 with alpha <= pi/6")
    rhs = config.ab - config.a_prime_b_prime * z_factor(config.theta, config.alpha)
    return _detour_check("lemma5", config, theta6, rhs, config.theta <= math.pi / 12, tol)


def check_lemma_paa5(config: CanonicalConfig, theta6: SpannerGraph, tol: float = TOL) -> CheckResult:
    """a' in the fifth 6-cone, or the sixth with alpha > pi/6: detour at most ``8|ab| sin(theta/2)``."""
    if lemma_case(config) not in ("C65", "C66_high_alpha") or config.degenerate:
        return _skip("lemma6", config, "not C65 or C66 with alpha > pi/6")
    rhs = 8 * config.ab * math.sin(config.theta / 2)
    return _detour_check("lemma6", config, theta6, rhs, config.theta <= math.pi / 15, tol)


LEMMA_CASES = {
    "lemma4": ("C62",),
    "lemma5": ("C66_low_alpha",),
    "lemma6": ("C65", "C66_high_alpha"),
}


def check_config(config: CanonicalConfig, theta6: SpannerGraph, tol: float = TOL) -> list[CheckResult]:
    """Every applicable configuration check for one config."""
    out = [check_lemma_abba(config, tol)]
    label = lemma_case(config)
    if label in LEMMA_CASES["lemma4"]:
        out.append(check_lemma_paa1(config, theta6, tol))
    elif label in LEMMA_CASES["lemma5"]:
        out.append(check_lemma_paasecond(config, theta6, tol))
    elif label in LEMMA_CASES["lemma6"]:
        out.append(check_lemma_paa5(config, theta6, tol))
    return out


# -- recursive construction ---------------------------------------------------

class InductionViolated(RuntimeError):
    """The recursive Theta-Theta_k path could not be built by strictly shorter edges."""


def recursive_theta_path(a: int, b: int, theta6: SpannerGraph, theta_k: SpannerGraph,
                         theta_theta_k: SpannerGraph, memo: dict | None = None) -> PathWitness:
    """Path in Theta-Theta_k between the ends of the Theta_6 edge ``a -> b``.

    If ``ab`` is itself a Theta-Theta_k edge it is returned. Otherwise the
    configuration ``(a, b, b', a')`` is formed, each Theta_6 edge on the
    shortest Theta_6 paths ``a ~> a'`` and ``b' ~> b`` is expanded
    recursively, and the pieces are joined through ``a'b'``. Each expanded
    edge must be strictly shorter than ``ab``; otherwise, or once more than
    ``n**2`` expansions were needed, :class:`InductionViolated` is raised.
    """
    _require_theta6(theta6)
    if theta_k.kind is not GraphKind.THETA or theta_theta_k.kind is not GraphKind.THETA_THETA:
        raise ValueError("expected Theta_k and Theta-Theta_k graphs")
    k = theta_k.scheme.k
    if k % 6 or theta_theta_k.scheme.k != k:
        raise ValueError("Theta_k and Theta-Theta_k must share k, a multiple of 6")
    if not theta6.has_edge(a, b):
        raise ValueError(f"{a} -> {b} is not a Theta_6 edge")
    c = theta6.points.coords
    n = theta6.n
    memo = {} if memo is None else memo
    active: set[tuple[int, int]] = set()
    budget = [n * n]
    length = lambda u, v: float(np.hypot(*(c[v] - c[u])))

    def expand(u: int, v: int) -> tuple[int, ...]:
        if (u, v) in memo:
            return memo[(u, v)]
        if (u, v) in active:
            raise InductionViolated(f"edge {u}->{v} reached again while being expanded")
        budget[0] -= 1
        if budget[0] < 0:
            raise InductionViolated("expansion budget exhausted")
        if theta_theta_k.has_undirected(u, v):
            memo[(u, v)] = (u, v)
            return (u, v)
        active.add((u, v))
        uv = length(u, v)
        bp = int(theta_k.out_table[u, cone_index(theta_k.scheme, c[u], c[v])])
        ap = int(theta_theta_k.in_table[bp, cone_index(theta_k.scheme, c[bp], c[u])])
        left = _follow(u, ap, uv)
        right = _follow(bp, v, uv)
        verts = left + right
        active.discard((u, v))
        memo[(u, v)] = verts
        return verts

    def _follow(s: int, t: int, bound: float) -> tuple[int, ...]:
        """Theta-Theta_k walk replacing each edge of the shortest Theta_6 path from s to t."""
        if s == t:
            return (s,)
        p = _path(theta6, s, t)
        out = [s]
        for x, y in p.edges:
            if length(x, y) >= bound:
                raise InductionViolated(
                    f"Theta_6 edge {x}-{y} of length {length(x, y):.17g} is not shorter than {bound:.17g}")
            if theta6.has_edge(x, y):
                piece = expand(x, y)
            else:
                piece = expand(y, x)[::-1]
            out.extend(piece[1:])
        return tuple(out)

    verts = expand(a, b)
    total = sum(length(u, v) for u, v in zip(verts[:-1], verts[1:]))
    return PathWitness(verts, total)
