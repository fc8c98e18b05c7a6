"""Canonical Theta-configurations: extraction from point sets, normalisation,
and a direct constructor that places the four points from sampled angles.

A configuration is a quadruple ``(a, b, b', a')`` where ``a -> b`` is a Theta_6
edge, ``a -> b'`` is the Theta_k edge in the k-cone of ``a`` containing ``b``,
and ``a' -> b'`` is the Theta-Theta_k edge surviving in the k-cone of ``b'``
containing ``a``. The canonical frame puts ``a`` at the origin with ``ab`` in
the first 6-cone and the k-cone bisector at or below angle pi/6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..geometry import ConeScheme, PointSet, cone_indices, direction_angles, ray_angles, rotation_matrix
from ..spanners import ThetaFamily, as_point_set

SIXTH = math.pi / 3
# reflection across the line through the origin at angle pi/6
_MIRROR = np.array([[math.cos(SIXTH), math.sin(SIXTH)], [math.sin(SIXTH), -math.cos(SIXTH)]])


@dataclass(frozen=True, eq=False)
class CanonicalConfig:
    """Quadruple of point ids with its geometry.

    ``raw`` keeps the input coordinates of ``a, b, b', a'``; ``coords`` are the
    same points in the config's frame (``rotation`` steps of pi/3 clockwise,
    then an optional mirror). Angles are measured from the horizontal through
    ``a`` in that frame: ``alpha`` to ``ab``, ``beta`` to ``ab'`` and ``gamma``
    to the lower ray of the k-cone of ``a`` containing ``b``.
    """

    a: int
    b: int
    b_prime: int
    a_prime: int
    raw: np.ndarray = field(repr=False)
    scheme: ConeScheme
    alpha: float
    beta: float
    gamma: float
    case: str | None
    rotation: int = 0
    reflected: bool = False
    coords: np.ndarray = field(default=None, repr=False)

    @property
    def ids(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.b_prime, self.a_prime)

    @property
    def theta(self) -> float:
        return self.scheme.theta

    @property
    def degenerate(self) -> bool:
        return len(set(self.ids)) < 4

    @property
    def normalized(self) -> bool:
        return (self.rotation, self.reflected) == _frame(self.raw, self.scheme)

    def _dist(self, i: int, j: int) -> float:
        d = self.raw[j] - self.raw[i]
        return float(math.hypot(d[0], d[1]))

    @property
    def ab(self) -> float:
        return self._dist(0, 1)

    @property
    def ab_prime(self) -> float:
        return self._dist(0, 2)

    @property
    def a_prime_b_prime(self) -> float:
        return self._dist(3, 2)

    @classmethod
    def from_points(cls, ids, raw, scheme: ConeScheme) -> "CanonicalConfig":
        """Config in the raw frame (no rotation or mirror applied)."""
        return _make(tuple(int(i) for i in ids), np.asarray(raw, dtype=np.float64), scheme, 0, False)


def _cone(p, q, k: int) -> int:
    d = q - p
    return int(cone_indices(d[0], d[1], k))


def _frame(raw: np.ndarray, scheme: ConeScheme) -> tuple[int, bool]:
    kp = scheme.k // 6
    i = _cone(raw[0], raw[1], 6)
    j_local = min(max(_cone(raw[0], raw[1], scheme.k) - i * kp, 0), kp - 1)
    return i, 2 * j_local + 1 > kp


def _make(ids, raw, scheme: ConeScheme, rotation: int, reflected: bool) -> CanonicalConfig:
    if scheme.k % 6:
        raise ValueError(f"configurations need k a multiple of 6, got {scheme.k}")
    kp = scheme.k // 6
    th = scheme.theta
    a, b, bp, ap = raw
    i = _cone(a, b, 6)
    j_local = min(max(_cone(a, b, scheme.k) - i * kp, 0), kp - 1)
    # angles relative to the lower ray of the 6-cone, by subtraction so that
    # rounding in the rotation cannot push them across a ray
    base = float(ray_angles(i, 6))
    # ulp-level clamp: b and b' lie in the 6-cone by construction
    rel = lambda q: min(max(float(direction_angles(*(q - a))) - base, 0.0), SIXTH)
    alpha, beta = rel(b), rel(bp)
    gamma = j_local * th
    m = None
    if ids[3] != ids[0]:
        m = (_cone(a, ap, 6) - i) % 6
    if rotation == 0 and not reflected:
        alpha, beta, gamma = alpha + base, beta + base, gamma + base
        m = None if m is None else (m + i) % 6
        coords = raw - a
    else:
        M = rotation_matrix(-rotation * SIXTH)
        if reflected:
            alpha, beta = SIXTH - alpha, SIXTH - beta
            gamma = (kp - 1 - j_local) * th
            m = None if m is None else (-m) % 6
            M = _MIRROR @ M
        coords = (raw - a) @ M.T
    case = None if m is None else f"C6{m + 1}"
    raw = raw.copy()
    raw.setflags(write=False)
    coords.setflags(write=False)
    return CanonicalConfig(*ids, raw, scheme, alpha, beta, gamma, case, rotation, reflected, coords)


def normalize_config(config: CanonicalConfig) -> CanonicalConfig:
    """Rotate by a multiple of pi/3 (and mirror if needed) into the canonical frame.

    The frame is derived from the raw coordinates only, so normalising twice
    gives the same result.
    """
    rotation, reflected = _frame(config.raw, config.scheme)
    return _make(config.ids, config.raw, config.scheme, rotation, reflected)


def check_invariants(config: CanonicalConfig, tol: float = 1e-12) -> list[str]:
    """Violated invariants of a normalised, non-degenerate config (empty when sound)."""
    bad = []
    th = config.theta
    if not (-tol <= config.alpha < SIXTH + tol):
        bad.append("ab outside the first 6-cone")
    if not (-tol <= config.gamma <= math.pi / 6 - th / 2 + tol):
        bad.append("k-cone bisector above the 6-cone bisector")
    if not (config.gamma - tol <= config.beta <= config.gamma + th + tol):
        bad.append("beta outside [gamma, gamma + theta]")
    if not (config.gamma - tol <= config.alpha <= config.gamma + th + tol):
        bad.append("alpha outside [gamma, gamma + theta]")
    if config.case in ("C63", "C64"):
        bad.append(f"a' in {config.case}")
    return bad


def config_edges_sound(config: CanonicalConfig, family: ThetaFamily) -> bool:
    """ab in Theta_6, ab' the Theta_k edge of a's cone, a'b' the surviving Theta-Theta edge."""
    k = family.scheme.k
    c = family.points.coords
    a, b, bp, ap = config.ids
    if not family.theta6.has_edge(a, b):
        return False
    e = family.theta_k.out_edge(a, _cone(c[a], c[b], k))
    if e is None or e.target != bp:
        return False
    if bp == b and ap == a:
        return family.theta_theta_k.has_edge(a, b)
    win = family.theta_theta_k.in_edges(bp, _cone(c[bp], c[a], k))
    return len(win) == 1 and win[0].source == ap and family.theta_k.has_edge(ap, bp)


def config_quadruples(family: ThetaFamily) -> np.ndarray:
    """``(m, 4)`` array of ``(a, b, b', a')`` ids, one row per Theta_6 edge."""
    k = family.scheme.k
    c = family.points.coords
    t6 = family.theta6
    a, b = t6.sources, t6.targets
    d = c[b] - c[a]
    bp = family.theta_k.out_table[a, cone_indices(d[:, 0], d[:, 1], k)]
    back = c[a] - c[bp]
    ap = family.theta_theta_k.in_table[bp, cone_indices(back[:, 0], back[:, 1], k)]
    return np.column_stack([a, b, bp, ap])


def extract_configs(points, scheme: ConeScheme, *, family: ThetaFamily | None = None,
                    include_degenerate: bool = False) -> list[CanonicalConfig]:
    """Normalised configurations, one per Theta_6 edge.

    Quadruples with repeated points are dropped unless ``include_degenerate``.
    """
    if scheme.k % 6:
        raise ValueError(f"k must be a multiple of 6, got {scheme.k}")
    fam = family or ThetaFamily.build(as_point_set(points), scheme.k)
    if fam.scheme.k != scheme.k:
        raise ValueError("family was built with a different k")
    quads = config_quadruples(fam)
    if not include_degenerate:
        quads = quads[distinct_rows(quads)]
    return [config_from_ids(ids, fam.points.coords, scheme) for ids in quads.tolist()]


def distinct_rows(quads: np.ndarray) -> np.ndarray:
    """Mask of quadruples whose four ids are pairwise different."""
    q = np.sort(quads, axis=1)
    return np.all(q[:, 1:] != q[:, :-1], axis=1)


def config_from_ids(ids, coords: np.ndarray, scheme: ConeScheme) -> CanonicalConfig:
    """Normalised config for ids ``(a, b, b', a')`` of a point array."""
    raw = coords[list(ids)]
    return _make(tuple(int(i) for i in ids), raw, scheme, *_frame(raw, scheme))


def lemma_case(config: CanonicalConfig) -> str | None:
    """Which bound applies: ``C62``, ``C66_low_alpha``, ``C66_high_alpha``, ``C65``,
    or another ``C6i`` label that none of them covers."""
    if config.case == "C66":
        return "C66_low_alpha" if config.alpha <= math.pi / 6 else "C66_high_alpha"
    return config.case


def _edge_biased(rng: np.random.Generator, size=None) -> np.ndarray:
    """Samples in (0, 1); half uniform, half piled up against the endpoints."""
    u = rng.random(size)
    v = rng.beta(0.12, 0.12, size)
    x = np.where(rng.random(size) < 0.5, u, v)
    return np.clip(x, 1e-12, 1 - 1e-12)


def _labels(theta: float, alpha: np.ndarray, ap: np.ndarray) -> np.ndarray:
    m = cone_indices(ap[:, 0], ap[:, 1], 6)
    labels = np.array([f"C6{i + 1}" for i in range(6)], dtype=object)[m]
    c66 = m == 5
    labels[c66] = np.where(alpha[c66] <= math.pi / 6, "C66_low_alpha", "C66_high_alpha")
    return labels


def sample_config_points(rng: np.random.Generator, theta: float, want=None,
                         tries: int = 100, block: int = 64) -> np.ndarray | None:
    """Place ``a, b, b', a'`` (rows, in that order) in the canonical frame, with ``|ab| = 1``.

    Angles and offsets are drawn with extra mass near the ends of their
    ranges so that extreme configurations are exercised. ``want`` restricts
    the predicted :func:`lemma_case` label by rejection. The points are only
    intended to form a configuration; extraction decides. Candidates are
    drawn ``block`` at a time; returns ``None`` if nothing acceptable turned
    up within ``tries`` blocks.
    """
    kp = int(round(SIXTH / theta))
    for _ in range(tries):
        j = rng.integers(0, (kp - 1) // 2 + 1, size=block)
        gamma = j * theta
        u = gamma + theta / 2
        alpha = gamma + theta * _edge_biased(rng, block)
        beta = gamma + theta * _edge_biased(rng, block)
        # b' lies beyond the 6-cone triangle of b but inside the k-cone triangle of b
        r_lo = np.cos(math.pi / 6 - alpha) / np.cos(math.pi / 6 - beta)
        r_hi = np.cos(alpha - u) / np.cos(beta - u)
        r = r_lo + (r_hi - r_lo) * _edge_biased(rng, block)
        bp = np.column_stack([r * np.cos(beta), r * np.sin(beta)])
        # a' inside the k-cone of b' pointing back at a, no farther than a along its bisector
        psi = math.pi + gamma + theta * _edge_biased(rng, block)
        reach = (bp[:, 0] * np.cos(u) + bp[:, 1] * np.sin(u)) / np.cos(psi - math.pi - u)
        s = reach * _edge_biased(rng, block)
        ap = bp + s[:, None] * np.column_stack([np.cos(psi), np.sin(psi)])
        ok = r_lo < r_hi
        if want is not None:
            ok &= np.isin(_labels(theta, alpha, ap), list(want))
        hit = np.flatnonzero(ok)
        if hit.size:
            i = hit[0]
            return np.array([[0.0, 0.0], [math.cos(alpha[i]), math.sin(alpha[i])], bp[i], ap[i]])
    return None


def sample_gadget(rng: np.random.Generator, theta: float, noise: int = 0, want=None) -> np.ndarray:
    """A sampled configuration under a random symmetry of the cone layout,
    plus up to ``noise`` extra points scattered around it."""
    pts = sample_config_points(rng, theta, want)
    if pts is None:
        raise RuntimeError(f"could not sample a configuration with label in {want}")
    M = rotation_matrix(int(rng.integers(0, 6)) * SIXTH)
    if rng.random() < 0.5:
        M = M @ np.diag([1.0, -1.0])
    pts = pts @ M.T
    extra = int(rng.integers(0, noise + 1)) if noise else 0
    if extra:
        ang = rng.random(extra) * 2 * math.pi
        rad = 0.2 + 1.6 * rng.random(extra)
        pts = np.vstack([pts, np.c_[rad * np.cos(ang), rad * np.sin(ang)]])
    return pts


def pack_gadgets(gadgets: list[np.ndarray], spacing: float = 100.0) -> PointSet:
    """Lay gadgets out on a square grid far enough apart not to interact locally."""
    cols = max(1, math.ceil(math.sqrt(len(gadgets))))
    blocks = [g + spacing * np.array([i % cols, i // cols]) for i, g in enumerate(gadgets)]
    return PointSet(np.vstack(blocks))
