"""Closed-form minimizer of m1|P-P1| + m2|P-P2| + m3|P-P3| in the plane.

The interior stationary point is a K-weighted harmonic combination of the
anchors; its value is sqrt(d).  When one anchor's weight dominates (the
angle condition at that vertex fails) the minimizer is that anchor.

Pure functions throughout; safe to call from any number of threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .errors import (
    InternalInconsistency,
    InvalidInput,
    NonTriangularWeights,
)
from .geometry import (
    EPS_GEOM,
    PlanarPoint,
    check_noncollinear,
    distance,
    doubled_area,
    max_pairwise_distance,
    signed_doubled_area,
    weighted_distance_sum,
)

DEFAULT_TOL = 1e-9
SQRT3 = math.sqrt(3.0)

__all__ = [
    "DEFAULT_TOL",
    "Diagnostics",
    "SideLengths",
    "Solution",
    "TriangleInstance",
    "WeightTriple",
    "doubled_area",
    "fermat_point_area_free",
    "k_coefficients",
    "minimum_d",
    "side_lengths",
    "signed_doubled_area",
    "solve",
    "solve_classical",
    "vertex_test",
    "weight_sigma",
]


@dataclass(frozen=True)
class WeightTriple:
    m1: float
    m2: float
    m3: float

    def __post_init__(self):
        for m in self:
            if not (math.isfinite(m) and m > 0):
                raise InvalidInput(f"weights must be positive and finite, got {tuple(self)}")

    def __iter__(self) -> Iterator[float]:
        yield self.m1
        yield self.m2
        yield self.m3

    def scaled(self, factor: float) -> "WeightTriple":
        return WeightTriple(self.m1 * factor, self.m2 * factor, self.m3 * factor)


@dataclass(frozen=True)
class TriangleInstance:
    p1: PlanarPoint
    p2: PlanarPoint
    p3: PlanarPoint
    weights: WeightTriple

    def __post_init__(self):
        check_noncollinear(self.p1, self.p2, self.p3, EPS_GEOM)

    @classmethod
    def build(cls, anchors: Sequence, weights: Sequence[float] = (1.0, 1.0, 1.0)) -> "TriangleInstance":
        if len(anchors) != 3 or len(weights) != 3:
            raise InvalidInput("a triangle instance needs exactly three anchors and three weights")
        p1, p2, p3 = (PlanarPoint.of(p) for p in anchors)
        return cls(p1, p2, p3, WeightTriple(*(float(m) for m in weights)))

    @property
    def anchors(self) -> tuple[PlanarPoint, PlanarPoint, PlanarPoint]:
        return (self.p1, self.p2, self.p3)

    @property
    def scale(self) -> float:
        return max_pairwise_distance(self.anchors)


@dataclass(frozen=True)
class SideLengths:
    r12: float
    r13: float
    r23: float


@dataclass
class Diagnostics:
    stationarity_residual: float
    identity_residuals: dict[str, float] = field(default_factory=dict)
    # stationarity is compared against tol * weight_scale (sum of weights)
    weight_scale: float = 1.0

    def violations(self, tol: float = DEFAULT_TOL) -> dict[str, float]:
        bad = {k: v for k, v in self.identity_residuals.items() if not v <= tol}
        if not self.stationarity_residual <= tol * self.weight_scale:
            bad["stationarity"] = self.stationarity_residual
        return bad

    def within(self, tol: float = DEFAULT_TOL) -> bool:
        return not self.violations(tol)


@dataclass
class Solution:
    kind: str  # "interior" or "vertex"
    point: PlanarPoint
    value: float
    diagnostics: Diagnostics
    vertex: Optional[int] = None  # 1-based anchor index when kind == "vertex"

    @property
    def regime(self) -> str:
        return "interior" if self.vertex is None else f"vertex-{self.vertex}"


def side_lengths(t: TriangleInstance) -> SideLengths:
    return SideLengths(
        r12=distance(t.p1, t.p2),
        r13=distance(t.p1, t.p3),
        r23=distance(t.p2, t.p3),
    )


def _corner_terms(p1, p2, p3) -> tuple[float, float, float]:
    """(r12²+r13²-r23², r23²+r12²-r13², r13²+r23²-r12²), each computed as
    twice the dot product of the edges leaving that corner."""
    def corner(a, b, c):
        return 2.0 * ((b.x - a.x) * (c.x - a.x) + (b.y - a.y) * (c.y - a.y))

    return corner(p1, p2, p3), corner(p2, p1, p3), corner(p3, p1, p2)


def _weight_terms(w: WeightTriple) -> tuple[float, float, float]:
    m1, m2, m3 = w
    return (m2 * m2 + m3 * m3 - m1 * m1,
            m1 * m1 + m3 * m3 - m2 * m2,
            m1 * m1 + m2 * m2 - m3 * m3)


def _sigma_radicand(w: WeightTriple) -> float:
    m1, m2, m3 = w
    # factored Heron form of -m1^4 - m2^4 - m3^4 + 2(m1²m2² + m1²m3² + m2²m3²);
    # fsum keeps the near-zero factor exact up to one rounding
    return (math.fsum((m1, m2, m3)) * math.fsum((-m1, m2, m3))
            * math.fsum((m1, -m2, m3)) * math.fsum((m1, m2, -m3)))


def weight_sigma(w: WeightTriple, *, vertex_regime: bool = False, tol: float = DEFAULT_TOL) -> float:
    """Doubled area of the triangle with side lengths m1, m2, m3.

    A radicand that is negative beyond ``tol`` (relative to (m1+m2+m3)^4)
    means the weights violate their own triangle inequality; that is only
    legitimate once the vertex regime has been established.
    """
    rad = _sigma_radicand(w)
    if rad < 0:
        if not vertex_regime and rad < -tol * sum(w) ** 4:
            raise NonTriangularWeights(
                f"weights {tuple(w)} violate the triangle inequality in the interior regime"
            )
        return 0.0
    return 0.5 * math.sqrt(rad)


def vertex_test(t: TriangleInstance) -> Optional[int]:
    """Index (1-based) of the anchor that is the minimizer, or None.

    Vertex j wins when m_j² >= m_k² + m_l² + 2 m_k m_l cos(angle at P_j).
    Equality counts as the vertex case.
    """
    r = side_lengths(t)
    lengths = ((r.r12, r.r13), (r.r12, r.r23), (r.r13, r.r23))
    m = tuple(t.weights)
    failed = []
    for j, (c, (a, b)) in enumerate(zip(_corner_terms(*t.anchors), lengths)):
        cos_alpha = c / (2.0 * a * b)
        mk, ml = (m[i] for i in range(3) if i != j)
        if m[j] * m[j] >= mk * mk + ml * ml + 2.0 * mk * ml * cos_alpha:
            failed.append(j + 1)
    if len(failed) > 1:
        raise InternalInconsistency(f"vertex conditions fail at several anchors: {failed}")
    return failed[0] if failed else None


def k_coefficients(t: TriangleInstance, sigma: float, s: float) -> tuple[float, float, float]:
    corners = _corner_terms(*t.anchors)
    wterms = _weight_terms(t.weights)
    ks = tuple(c * sigma + w * s for c, w in zip(corners, wterms))
    if not all(k > 0 for k in ks):
        raise InternalInconsistency(f"non-positive K coefficients {ks} in the interior regime")
    return ks


def _d_forms(t: TriangleInstance, sigma: float, s: float, ks) -> dict[str, float]:
    m = tuple(t.weights)
    msq = [mi * mi for mi in m]
    wterms = _weight_terms(t.weights)
    r = side_lengths(t)
    return {
        "d1": math.fsum(q * k for q, k in zip(msq, ks)) / (2.0 * sigma),
        "dual": 2.0 * s * sigma + 0.5 * math.fsum((
            r.r12 ** 2 * wterms[2],
            r.r13 ** 2 * wterms[1],
            r.r23 ** 2 * wterms[0],
        )),
    }


def minimum_d(t: TriangleInstance, sigma: float, s: float) -> float:
    """Square of the minimum value, via the sigma-division-free form."""
    m = tuple(t.weights)
    corners = _corner_terms(*t.anchors)
    return 2.0 * s * sigma + 0.5 * math.fsum(mi * mi * c for mi, c in zip(m, corners))


def _relative(a: float, b: float) -> float:
    denom = max(abs(a), abs(b))
    return abs(a - b) / denom if denom > 0 else 0.0


def _stationarity(anchors, weights, point) -> float:
    # lazy import keeps the oracle module free of solver imports
    from .oracle import stationarity_residual

    return stationarity_residual(anchors, weights, point)


def _vertex_solution(t: TriangleInstance, j: int) -> Solution:
    anchors = t.anchors
    m = tuple(t.weights)
    pj = anchors[j - 1]
    value = math.fsum(m[l] * distance(pj, anchors[l]) for l in range(3) if l != j - 1)
    # subgradient slack: |pull of the other anchors| - m_j, clipped at 0
    gx = gy = 0.0
    for l in range(3):
        if l == j - 1:
            continue
        rho = distance(pj, anchors[l])
        gx += m[l] * (pj.x - anchors[l].x) / rho
        gy += m[l] * (pj.y - anchors[l].y) / rho
    slack = max(0.0, math.hypot(gx, gy) - m[j - 1])
    direct = weighted_distance_sum(pj, anchors, m)
    diag = Diagnostics(
        stationarity_residual=slack,
        identity_residuals={"value": _relative(direct, value)},
        weight_scale=sum(m),
    )
    return Solution("vertex", pj, value, diag, vertex=j)


def solve(t: TriangleInstance, tol: float = DEFAULT_TOL, check: bool = False) -> Solution:
    """Minimize the weighted distance sum over the plane.

    With ``check=True`` a diagnostic residual above ``tol`` raises
    InternalInconsistency instead of only being reported.
    """
    j = vertex_test(t)
    if j is not None:
        sol = _vertex_solution(t, j)
    else:
        sol = _interior_solution(t)
    if check:
        bad = sol.diagnostics.violations(tol)
        if bad:
            raise InternalInconsistency(f"diagnostic residuals above tolerance {tol:g}: {bad}")
    return sol


def _interior_solution(t: TriangleInstance) -> Solution:
    p1, p2, p3 = t.anchors
    m = tuple(t.weights)
    s = doubled_area(p1, p2, p3)
    sigma = weight_sigma(t.weights)
    if sigma == 0.0:
        raise InternalInconsistency("degenerate weight triangle in the interior regime")
    k1, k2, k3 = k_coefficients(t, sigma, s)
    d = minimum_d(t, sigma, s)
    forms = _d_forms(t, sigma, s, (k1, k2, k3))
    root_d = math.sqrt(d)

    denom = 4.0 * s * sigma * d
    c1, c2, c3 = k2 * k3, k1 * k3, k1 * k2
    point = PlanarPoint(
        (c1 * p1.x + c2 * p2.x + c3 * p3.x) / denom,
        (c1 * p1.y + c2 * p2.y + c3 * p3.y) / denom,
    )

    # harmonic form, cross-check only
    inv = (1.0 / k1, 1.0 / k2, 1.0 / k3)
    hsum = sum(inv)
    harmonic = (
        sum(i * p.x for i, p in zip(inv, (p1, p2, p3))) / hsum,
        sum(i * p.y for i, p in zip(inv, (p1, p2, p3))) / hsum,
    )

    scale = t.scale
    rho = [distance(point, p) for p in (p1, p2, p3)]
    predicted = [mj * kj / (2.0 * sigma * root_d) for mj, kj in zip(m, (k1, k2, k3))]
    r = side_lengths(t)
    residuals = {
        "dd1": max(abs(a - b) for a, b in zip(rho, predicted)) / scale,
        "dd2": _relative(k1 * k2 + k1 * k3 + k2 * k3, 4.0 * sigma * s * d),
        "dd3": _relative(r.r23 ** 2 * k1 + r.r13 ** 2 * k2 + r.r12 ** 2 * k3, 2.0 * s * d),
        "dd4": distance(point, harmonic) / scale,
        "d1": _relative(forms["d1"], d),
        "dual": _relative(forms["dual"], d),
        "value": _relative(weighted_distance_sum(point, (p1, p2, p3), m), root_d),
    }
    diag = Diagnostics(
        stationarity_residual=_stationarity((p1, p2, p3), m, point),
        identity_residuals=residuals,
        weight_scale=sum(m),
    )
    return Solution("interior", point, root_d, diag)


def _classical_vertex(p1, p2, p3) -> Optional[int]:
    r12, r13, r23 = distance(p1, p2), distance(p1, p3), distance(p2, p3)
    # angle at P_j is below 2pi/3 iff its quadratic side condition is positive
    conditions = (
        r12 * r12 + r13 * r13 + r12 * r13 - r23 * r23,
        r23 * r23 + r12 * r12 + r12 * r23 - r13 * r13,
        r13 * r13 + r23 * r23 + r13 * r23 - r12 * r12,
    )
    failed = [j + 1 for j, q in enumerate(conditions) if q <= 0]
    if len(failed) > 1:
        raise InternalInconsistency(f"several angles of at least 2pi/3: {failed}")
    return failed[0] if failed else None


def _classical_d(p1, p2, p3, s: float) -> float:
    r12, r13, r23 = distance(p1, p2), distance(p1, p3), distance(p2, p3)
    return 0.5 * (r12 * r12 + r13 * r13 + r23 * r23) + SQRT3 * s


def solve_classical(p1, p2, p3, tol: float = DEFAULT_TOL, check: bool = False) -> Solution:
    """Equal-weight (classical) Fermat-Torricelli point."""
    t = TriangleInstance.build((p1, p2, p3), (1.0, 1.0, 1.0))
    p1, p2, p3 = t.anchors
    j = _classical_vertex(p1, p2, p3)
    if j is not None:
        sol = _vertex_solution(t, j)
    else:
        s = doubled_area(p1, p2, p3)
        k1, k2, k3 = (SQRT3 / 2.0 * c + s for c in _corner_terms(p1, p2, p3))
        d = _classical_d(p1, p2, p3, s)
        denom = 2.0 * SQRT3 * s * d
        c1, c2, c3 = k2 * k3, k1 * k3, k1 * k2
        point = PlanarPoint(
            (c1 * p1.x + c2 * p2.x + c3 * p3.x) / denom,
            (c1 * p1.y + c2 * p2.y + c3 * p3.y) / denom,
        )
        root_d = math.sqrt(d)
        scale = t.scale
        residuals = {
            "k_sum": _relative((k1 + k2 + k3) / SQRT3, d),
            "area_free": distance(point, fermat_point_area_free(p1, p2, p3)) / scale,
            "value": _relative(weighted_distance_sum(point, t.anchors, (1, 1, 1)), root_d),
        }
        diag = Diagnostics(
            stationarity_residual=_stationarity(t.anchors, (1.0, 1.0, 1.0), point),
            identity_residuals=residuals,
            weight_scale=3.0,
        )
        sol = Solution("interior", point, root_d, diag)
    if check:
        bad = sol.diagnostics.violations(tol)
        if bad:
            raise InternalInconsistency(f"diagnostic residuals above tolerance {tol:g}: {bad}")
    return sol


def _det_ones(a, b) -> float:
    # det[[1,1,1],[a1,a2,a3],[b1,b2,b3]]
    return (a[1] - a[0]) * (b[2] - b[0]) - (a[2] - a[0]) * (b[1] - b[0])


def fermat_point_area_free(p1, p2, p3) -> PlanarPoint:
    """Equal-weight Fermat point from the signed-area determinant formulas.

    Caller guarantees every angle is below 2pi/3.
    """
    p1, p2, p3 = (PlanarPoint.of(p) for p in (p1, p2, p3))
    xs = (p1.x, p2.x, p3.x)
    ys = (p1.y, p2.y, p3.y)
    s_signed = signed_doubled_area(p1, p2, p3)
    s = abs(s_signed)
    sign = math.copysign(1.0, s_signed)
    r12, r13, r23 = distance(p1, p2), distance(p1, p3), distance(p2, p3)
    opposite_sq = (r23 * r23, r13 * r13, r12 * r12)
    q = (
        p2.x * p3.x + p2.y * p3.y,
        p1.x * p3.x + p1.y * p3.y,
        p1.x * p2.x + p1.y * p2.y,
    )
    d = _classical_d(p1, p2, p3, s)
    denom = 2.0 * SQRT3 * d
    x = (sum(xs) * s
         + SQRT3 * math.fsum(xj * r for xj, r in zip(xs, opposite_sq))
         + 3.0 * sign * _det_ones(ys, q)) / denom
    y = (sum(ys) * s
         + SQRT3 * math.fsum(yj * r for yj, r in zip(ys, opposite_sq))
         - 3.0 * sign * _det_ones(xs, q)) / denom
    return PlanarPoint(x, y)
