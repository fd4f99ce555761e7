"""Points, orientation determinants and the weighted distance objective."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import CollinearAnchors, DegenerateTetrahedron, InvalidInput

# Scale-relative degeneracy threshold: reject when |area| <= EPS_GEOM * L**dim.
EPS_GEOM = 1e-12


@dataclass(frozen=True)
class PlanarPoint:
    x: float
    y: float

    def __post_init__(self):
        for v in (self.x, self.y):
            if not math.isfinite(v):
                raise InvalidInput(f"non-finite coordinate in {self!r}")

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def __sub__(self, other: "PlanarPoint") -> tuple[float, float]:
        return (self.x - other.x, self.y - other.y)

    @classmethod
    def of(cls, p) -> "PlanarPoint":
        if isinstance(p, cls):
            return p
        x, y = p
        return cls(float(x), float(y))


@dataclass(frozen=True)
class SpatialPoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for v in (self.x, self.y, self.z):
            if not math.isfinite(v):
                raise InvalidInput(f"non-finite coordinate in {self!r}")

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y
        yield self.z

    @classmethod
    def of(cls, p) -> "SpatialPoint":
        if isinstance(p, cls):
            return p
        x, y, z = p
        return cls(float(x), float(y), float(z))


def distance(p, q) -> float:
    return math.dist(tuple(p), tuple(q))


def max_pairwise_distance(points) -> float:
    pts = [tuple(p) for p in points]
    return max(
        math.dist(pts[i], pts[j])
        for i in range(len(pts))
        for j in range(i + 1, len(pts))
    )


def signed_doubled_area(p1, p2, p3) -> float:
    """det[[1,1,1],[x1,x2,x3],[y1,y2,y3]]; positive for counterclockwise order.

    Evaluated on coordinates relative to ``p1`` to keep cancellation local.
    """
    x1, y1 = p1
    x2, y2 = p2
    x3, y3 = p3
    return (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)


def doubled_area(p1, p2, p3) -> float:
    return abs(signed_doubled_area(p1, p2, p3))


def signed_sextuple_volume(p1, p2, p3, p4) -> float:
    """det[[1,1,1,1],[x..],[y..],[z..]], i.e. six times the signed volume."""
    a = np.subtract(tuple(p2), tuple(p1))
    b = np.subtract(tuple(p3), tuple(p1))
    c = np.subtract(tuple(p4), tuple(p1))
    return float(np.dot(a, np.cross(b, c)))


def check_noncollinear(p1, p2, p3, eps: float = EPS_GEOM) -> float:
    """Return the doubled area S, raising CollinearAnchors if S <= eps * L**2."""
    s = doubled_area(p1, p2, p3)
    scale = max_pairwise_distance((p1, p2, p3))
    if not s > eps * scale * scale:
        raise CollinearAnchors(
            f"anchors {tuple(p1)}, {tuple(p2)}, {tuple(p3)} are collinear "
            f"(doubled area {s:.3g}, max side {scale:.3g})"
        )
    return s


def check_noncoplanar(p1, p2, p3, p4, eps: float = EPS_GEOM) -> float:
    v = signed_sextuple_volume(p1, p2, p3, p4)
    scale = max_pairwise_distance((p1, p2, p3, p4))
    if not abs(v) > eps * scale**3:
        raise DegenerateTetrahedron(
            f"anchors are coplanar (6*volume {v:.3g}, max edge {scale:.3g})"
        )
    return v


def barycentric(p, p1, p2, p3) -> tuple[float, float, float]:
    s = signed_doubled_area(p1, p2, p3)
    return (
        signed_doubled_area(p, p2, p3) / s,
        signed_doubled_area(p1, p, p3) / s,
        signed_doubled_area(p1, p2, p) / s,
    )


def weighted_distance_sum(point, anchors: Sequence, weights: Sequence[float]) -> float:
    """The objective: sum of weight_j * |point - anchor_j|."""
    p = tuple(point)
    return math.fsum(m * math.dist(p, tuple(a)) for a, m in zip(anchors, weights))


def circumcenter(points) -> np.ndarray:
    """Circumcenter of a triangle (2D) or tetrahedron (3D).

    Solves the linear system |C - P_j|^2 = |C - P_0|^2 in coordinates
    relative to P_0.
    """
    pts = np.asarray([tuple(p) for p in points], dtype=float)
    rel = pts[1:] - pts[0]
    rhs = 0.5 * np.einsum("ij,ij->i", rel, rel)
    return pts[0] + np.linalg.solve(rel, rhs)


def power_via_circumcenter(point, anchors) -> float:
    """|C P|^2 - R^2 for the circle/sphere through the anchors."""
    c = circumcenter(anchors)
    p = np.asarray(tuple(point), dtype=float)
    a0 = np.asarray(tuple(anchors[0]), dtype=float)
    return float(np.sum((p - c) ** 2) - np.sum((a0 - c) ** 2))
