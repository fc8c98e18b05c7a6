"""Planar primitives: point sets, cones, bisector projections, canonical triangles.

Every directional decision goes through :func:`direction_angles`, so scalar
and vectorised callers always agree on which cone a direction falls in.
Cone ``i`` covers directions ``[i*theta, (i+1)*theta)`` counterclockwise from
the positive x-axis: the lower ray is included, the upper ray is not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi


class DegenerateDirectionError(ValueError):
    """Raised when a direction is requested between coincident points."""

    def __init__(self, message: str = "degenerate direction"):
        super().__init__(message)


class DuplicatePointError(ValueError):
    """Raised when a point set contains coincident points."""

    def __init__(self, groups: Sequence[Sequence[int]]):
        self.groups = [list(g) for g in groups]
        listing = "; ".join(",".join(str(i) for i in g) for g in self.groups)
        super().__init__(f"coincident points with ids: {listing}")


class Point(NamedTuple):
    id: int
    x: float
    y: float


class PointSet:
    """Immutable set of distinct planar points with ids ``0..n-1``."""

    __slots__ = ("_coords",)

    def __init__(self, coords):
        arr = np.array(coords, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError(f"expected an (n, 2) array of coordinates, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coordinates must be finite")
        # -0.0 and 0.0 are the same location
        arr = arr + 0.0
        groups = _coincident_groups(arr)
        if groups:
            raise DuplicatePointError(groups)
        arr.setflags(write=False)
        self._coords = arr

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    def __len__(self) -> int:
        return self._coords.shape[0]

    def __getitem__(self, i: int) -> Point:
        x, y = self._coords[i]
        return Point(int(i) % len(self), float(x), float(y))

    def __iter__(self) -> Iterator[Point]:
        for i in range(len(self)):
            yield self[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self._coords.shape == other._coords.shape and bool(np.array_equal(self._coords, other._coords))

    def __hash__(self) -> int:
        return hash(self._coords.tobytes())

    def __repr__(self) -> str:
        return f"PointSet(n={len(self)})"

    def transformed(self, matrix=None, offset=(0.0, 0.0)) -> "PointSet":
        """Apply ``x -> matrix @ x + offset`` to every point; ids are kept."""
        c = self._coords
        if matrix is not None:
            c = c @ np.asarray(matrix, dtype=np.float64).T
        return PointSet(c + np.asarray(offset, dtype=np.float64))


def _coincident_groups(arr: np.ndarray) -> list[list[int]]:
    if arr.shape[0] < 2:
        return []
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    s = arr[order]
    same = np.all(s[1:] == s[:-1], axis=1)
    if not same.any():
        return []
    groups: list[list[int]] = []
    current: list[int] = []
    for pos, dup in enumerate(same):
        if dup:
            if not current:
                current = [int(order[pos])]
            current.append(int(order[pos + 1]))
        elif current:
            groups.append(sorted(current))
            current = []
    if current:
        groups.append(sorted(current))
    return groups


def as_xy(p) -> tuple[float, float]:
    """Coordinates of a :class:`Point` or any length-2 sequence."""
    if isinstance(p, Point):
        return p.x, p.y
    return float(p[0]), float(p[1])


@dataclass(frozen=True)
class ConeScheme:
    """``k`` equiangular half-open cones of angle ``theta = 2*pi/k``."""

    k: int

    def __post_init__(self):
        if not isinstance(self.k, (int, np.integer)) or isinstance(self.k, bool):
            raise TypeError("k must be an integer")
        if self.k < 3:
            raise ValueError(f"k must be >= 3, got {self.k}")
        object.__setattr__(self, "k", int(self.k))

    @property
    def theta(self) -> float:
        return TWO_PI / self.k

    @property
    def analysed(self) -> bool:
        """True when cones nest inside the six cones of Theta_6 (k a multiple of 6)."""
        return self.k % 6 == 0

    def ray_angle(self, i: int) -> float:
        return float(ray_angles(i % self.k, self.k))

    def bisector_angle(self, i: int) -> float:
        return float(bisector_angles(i % self.k, self.k))

    def bisector(self, i: int) -> np.ndarray:
        phi = self.bisector_angle(i)
        return np.array([math.cos(phi), math.sin(phi)])


def direction_angles(dx, dy) -> np.ndarray:
    """Direction angles normalised to ``[0, 2*pi)``; negative zero maps to 0."""
    phi = np.arctan2(np.asarray(dy, dtype=np.float64), np.asarray(dx, dtype=np.float64))
    phi = np.where(phi < 0.0, phi + TWO_PI, phi)
    # phi + 2*pi can round up to exactly 2*pi for tiny negative angles
    phi = np.where(phi >= TWO_PI, np.nextafter(TWO_PI, 0.0), phi)
    return np.where(phi == 0.0, 0.0, phi)


def ray_angles(i, k: int):
    """Angle of ray ``i`` as ``2*pi * (i/k)``.

    The value depends only on the fraction ``i/k``, so schemes whose cones
    nest (k a multiple of 6, say) share their common rays bit for bit.
    """
    return TWO_PI * (np.asarray(i) / k)


def bisector_angles(i, k: int):
    return TWO_PI * ((2 * np.asarray(i) + 1) / (2 * k))


def cone_indices(dx, dy, k: int) -> np.ndarray:
    """Vectorised cone index of direction ``(dx, dy)``: the last ray at or below its angle.

    Zero vectors are not checked.
    """
    phi = direction_angles(dx, dy)
    idx = np.clip(np.floor(phi * (k / TWO_PI)).astype(np.int64), 0, k - 1)
    # the estimate can be off by one next to a ray; settle it against the rays themselves
    idx = idx - (phi < ray_angles(idx, k))
    idx = idx + ((idx + 1 < k) & (phi >= ray_angles(idx + 1, k)))
    return idx


def bisector_projections(dx, dy, cones, k: int) -> np.ndarray:
    """Length of the projection of ``(dx, dy)`` onto the bisector of ``cones``."""
    phi = bisector_angles(cones, k)
    return np.asarray(dx) * np.cos(phi) + np.asarray(dy) * np.sin(phi)


def _delta(apex, target) -> tuple[float, float]:
    ax, ay = as_xy(apex)
    tx, ty = as_xy(target)
    dx, dy = tx - ax, ty - ay
    if dx == 0.0 and dy == 0.0:
        raise DegenerateDirectionError()
    return dx, dy


def cone_index(scheme: ConeScheme, apex, target) -> int:
    """Index of the cone with apex ``apex`` that contains ``target``."""
    dx, dy = _delta(apex, target)
    return int(cone_indices(dx, dy, scheme.k))


def bisector_projection(scheme: ConeScheme, apex, target) -> float:
    """Distance from ``apex`` to the projection of ``target`` on its cone bisector."""
    dx, dy = _delta(apex, target)
    c = cone_indices(dx, dy, scheme.k)
    return float(bisector_projections(dx, dy, c, scheme.k))


@dataclass(frozen=True)
class CanonicalTriangle:
    """Isosceles triangle of a cone, cut off by the line through ``target``
    orthogonal to the cone bisector.

    ``corner_x`` lies on the lower (included) ray, ``corner_y`` on the upper ray.
    """

    apex: Point
    target: tuple[float, float]
    corner_x: tuple[float, float]
    corner_y: tuple[float, float]
    cone: int
    scheme: ConeScheme
    height: float

    @property
    def side(self) -> float:
        return self.height / math.cos(self.scheme.theta / 2)

    def contains(self, coords) -> np.ndarray:
        """Membership mask for an ``(m, 2)`` array; ray sides follow the cone
        convention and the base is closed. The apex itself is excluded."""
        c = np.atleast_2d(np.asarray(coords, dtype=np.float64))
        dx = c[:, 0] - self.apex.x
        dy = c[:, 1] - self.apex.y
        nonzero = (dx != 0.0) | (dy != 0.0)
        inside = cone_indices(dx, dy, self.scheme.k) == self.cone
        proj = bisector_projections(dx, dy, self.cone, self.scheme.k)
        return nonzero & inside & (proj <= self.height)


def triangle_in_cone(scheme: ConeScheme, apex, cone: int, height: float, target=None) -> CanonicalTriangle:
    """Triangle of cone ``cone`` at ``apex`` whose base sits at bisector distance ``height``."""
    ax, ay = as_xy(apex)
    apex_pt = apex if isinstance(apex, Point) else Point(-1, ax, ay)
    cone = cone % scheme.k
    s = height / math.cos(scheme.theta / 2)
    lo, hi = scheme.ray_angle(cone), scheme.ray_angle(cone) + scheme.theta
    cx = (ax + s * math.cos(lo), ay + s * math.sin(lo))
    cy = (ax + s * math.cos(hi), ay + s * math.sin(hi))
    if target is None:
        target = cx
    return CanonicalTriangle(apex_pt, as_xy(target), cx, cy, cone, scheme, float(height))


def canonical_triangle(scheme: ConeScheme, apex, target) -> CanonicalTriangle:
    """The canonical triangle of the cone at ``apex`` containing ``target``."""
    dx, dy = _delta(apex, target)
    cone = int(cone_indices(dx, dy, scheme.k))
    h = float(bisector_projections(dx, dy, cone, scheme.k))
    return triangle_in_cone(scheme, apex, cone, h, target=target)


def triangle_empty(tri: CanonicalTriangle, points: PointSet) -> bool:
    """True iff no point other than the apex and the defining target lies in ``tri``."""
    c = points.coords
    hit = tri.contains(c)
    if not hit.any():
        return True
    tx, ty = tri.target
    hit &= ~((c[:, 0] == tx) & (c[:, 1] == ty))
    return not bool(hit.any())


def t_function(alpha: float) -> float:
    """``(sin(pi/3 - alpha) - sin(alpha)) / sin(pi/3)`` on ``[0, pi/3]``; decreasing, at most 1."""
    if not (0.0 <= alpha <= math.pi / 3):
        raise ValueError(f"alpha must lie in [0, pi/3], got {alpha!r}")
    return (math.sin(math.pi / 3 - alpha) - math.sin(alpha)) / math.sin(math.pi / 3)


def rotation_matrix(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])
