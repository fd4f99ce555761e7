"""Inverse problem: weights that make a prescribed interior point optimal.

Each weight is the distance from the target to an anchor times the signed
area (2D) or volume (3D) of the simplex obtained by replacing that anchor
with the target.  The minimum value is a lifted (circle/sphere) determinant,
which also gives the power of the target with respect to the circumscribed
circle or sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InvalidInput, TargetNotInterior
from .geometry import (
    EPS_GEOM,
    PlanarPoint,
    SpatialPoint,
    check_noncollinear,
    check_noncoplanar,
    distance,
    power_via_circumcenter,
    signed_doubled_area,
    signed_sextuple_volume,
    weighted_distance_sum,
)
from .oracle import stationarity_residual

INTERIOR_EPS = 1e-10


@dataclass
class InverseSolution:
    weights: tuple  # unit-sum, in the caller's anchor order
    scale: float  # raw weights = scale * weights
    min_value: float  # in the raw (unnormalized) weight scale
    power: float
    permutation: tuple  # anchor order used internally (0-based indices)
    diagnostics: dict = field(default_factory=dict)

    @property
    def raw_weights(self) -> tuple:
        return tuple(self.scale * w for w in self.weights)


def _ccw_order(anchors) -> tuple:
    if signed_doubled_area(*anchors) > 0:
        return (0, 1, 2)
    return (0, 2, 1)


def _positive_order(anchors) -> tuple:
    if signed_sextuple_volume(*anchors) > 0:
        return (0, 1, 2, 3)
    return (0, 1, 3, 2)


def _lifted_determinant(anchors, p) -> float:
    """det of [[1...], coordinates..., squared norms] with the target in the
    first column, evaluated after translating the target to the origin."""
    p = np.asarray(tuple(p), dtype=float)
    rel = np.asarray([tuple(a) for a in anchors], dtype=float) - p
    n = len(rel) + 1
    m = np.zeros((rel.shape[1] + 2, n))
    m[0, :] = 1.0
    m[1:-1, 1:] = rel.T
    m[-1, 1:] = np.einsum("ij,ij->i", rel, rel)
    return float(np.linalg.det(m))


def _planar(anchors):
    if len(anchors) != 3:
        raise InvalidInput("planar inverse problem needs exactly three anchors")
    pts = tuple(PlanarPoint.of(a) for a in anchors)
    check_noncollinear(*pts, EPS_GEOM)
    return pts


def _spatial(anchors):
    if len(anchors) != 4:
        raise InvalidInput("spatial inverse problem needs exactly four anchors")
    pts = tuple(SpatialPoint.of(a) for a in anchors)
    check_noncoplanar(*pts, EPS_GEOM)
    return pts


def lifted_determinant_2d(anchors, p) -> float:
    """The 4x4 lifted determinant with anchors counted counterclockwise."""
    pts = _planar(anchors)
    order = _ccw_order(pts)
    return _lifted_determinant([pts[i] for i in order], PlanarPoint.of(p))


def power_of_point_2d(anchors, p) -> float:
    """Power of ``p`` with respect to the circle through the three anchors."""
    pts = _planar(anchors)
    s = abs(signed_doubled_area(*pts))
    return -lifted_determinant_2d(pts, p) / s


def _exact_doubled_area(p1, p2, p3) -> float:
    # exact over the input floats, rounded once; a target near an edge makes
    # the float shoelace lose most of its digits, and the weights inherit that
    (x1, y1), (x2, y2), (x3, y3) = [(Fraction(x), Fraction(y)) for x, y in (p1, p2, p3)]
    return float((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1))


def _sub_areas(ccw, p) -> tuple:
    a, b, c = ccw
    return (
        _exact_doubled_area(p, b, c),
        _exact_doubled_area(a, p, c),
        _exact_doubled_area(a, b, p),
    )


def inverse_weights_2d(anchors: Sequence, pstar) -> InverseSolution:
    pts = _planar(anchors)
    p = PlanarPoint.of(pstar)
    order = _ccw_order(pts)
    ccw = [pts[i] for i in order]
    s = signed_doubled_area(*ccw)
    areas = _sub_areas(ccw, p)
    if not all(ar / s > INTERIOR_EPS for ar in areas):
        raise TargetNotInterior(
            f"target {tuple(p)} is not strictly inside the triangle "
            f"(barycentric {tuple(ar / s for ar in areas)})"
        )
    raw_ccw = [distance(p, q) * ar for q, ar in zip(ccw, areas)]
    raw = [0.0] * 3
    for k, i in enumerate(order):
        raw[i] = raw_ccw[k]
    scale = math.fsum(raw)
    value = _lifted_determinant(ccw, p)
    power = -value / s

    direct = weighted_distance_sum(p, pts, raw)
    circ = power_via_circumcenter(p, pts)
    diagnostics = {
        "stationarity_residual": stationarity_residual(pts, raw, p) / scale,
        "value_vs_direct": abs(value - direct) / abs(direct),
        "power_vs_circumcenter": abs(power - circ) / max(abs(circ), abs(power)),
    }
    return InverseSolution(
        weights=tuple(m / scale for m in raw),
        scale=scale,
        min_value=value,
        power=power,
        permutation=order,
        diagnostics=diagnostics,
    )


def inverse_min_value_2d(anchors, pstar) -> float:
    """Minimum of the objective under the raw inverse weights."""
    return inverse_weights_2d(anchors, pstar).min_value


def lifted_determinant_3d(anchors, p) -> float:
    """The 5x5 lifted determinant with anchors ordered so that V > 0."""
    pts = _spatial(anchors)
    order = _positive_order(pts)
    return _lifted_determinant([pts[i] for i in order], SpatialPoint.of(p))


def power_of_point_3d(anchors, p) -> float:
    """Power of ``p`` with respect to the sphere through the four anchors."""
    pts = _spatial(anchors)
    v = abs(signed_sextuple_volume(*pts))
    return lifted_determinant_3d(pts, p) / v


def _exact_sextuple_volume(p1, p2, p3, p4) -> float:
    o = [Fraction(x) for x in p1]
    a, b, c = ([Fraction(x) - y for x, y in zip(q, o)] for q in (p2, p3, p4))
    return float(
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _sub_volumes(ordered, p) -> tuple:
    return tuple(
        _exact_sextuple_volume(*(p if k == j else q for k, q in enumerate(ordered)))
        for j in range(4)
    )


def inverse_weights_3d(anchors: Sequence, pstar) -> InverseSolution:
    pts = _spatial(anchors)
    p = SpatialPoint.of(pstar)
    order = _positive_order(pts)
    ordered = [pts[i] for i in order]
    v = signed_sextuple_volume(*ordered)
    vols = _sub_volumes(ordered, p)
    if not all(vj / v > INTERIOR_EPS for vj in vols):
        raise TargetNotInterior(
            f"target {tuple(p)} is not strictly inside the tetrahedron "
            f"(barycentric {tuple(vj / v for vj in vols)})"
        )
    raw_ordered = [distance(p, q) * vj for q, vj in zip(ordered, vols)]
    raw = [0.0] * 4
    for k, i in enumerate(order):
        raw[i] = raw_ordered[k]
    scale = math.fsum(raw)
    det5 = _lifted_determinant(ordered, p)
    value = -det5
    power = det5 / v

    direct = weighted_distance_sum(p, pts, raw)
    circ = power_via_circumcenter(p, pts)
    diagnostics = {
        "stationarity_residual": stationarity_residual(pts, raw, p) / scale,
        "value_vs_direct": abs(value - direct) / abs(direct),
        "power_vs_circumcenter": abs(power - circ) / max(abs(circ), abs(power)),
    }
    return InverseSolution(
        weights=tuple(m / scale for m in raw),
        scale=scale,
        min_value=value,
        power=power,
        permutation=order,
        diagnostics=diagnostics,
    )


def inverse_min_value_3d(anchors, pstar) -> float:
    return inverse_weights_3d(anchors, pstar).min_value
