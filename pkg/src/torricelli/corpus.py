"""Regression fixtures with exact radical expectations, evaluated in floats."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import inverse
from .solver import TriangleInstance, solve, solve_classical

R2, R3, R15, R7511 = math.sqrt(2), math.sqrt(3), math.sqrt(15), math.sqrt(7511)

EXACT_REL_TOL = 1e-12
RATIO_TOL = 1e-9
DECIMAL_TOL = 1e-4  # printed decimals are truncated, not rounded


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str
    anchors: tuple
    weights: Optional[tuple] = None
    target: Optional[tuple] = None
    point: Optional[tuple] = None
    value: Optional[float] = None
    point_decimals: Optional[tuple] = None
    value_decimals: Optional[float] = None
    ratio: Optional[tuple] = None

    def instance_dict(self) -> dict:
        out = {"kind": self.kind, "name": self.name, "anchors": [list(a) for a in self.anchors]}
        if self.weights is not None:
            out["weights"] = list(self.weights)
        if self.target is not None:
            out["target"] = list(self.target)
        return out


_TESTS1_ANCHORS = ((2.0, 6.0), (1.0, 1.0), (5.0, 1.0))
_TESTS1_1_POINT = ((4103 + 1833 * R15) / 2866, (29523 - 4481 * R15) / 8598)

FIXTURES = (
    Fixture(
        "tests1.1", "direct2d", _TESTS1_ANCHORS, weights=(2.0, 3.0, 4.0),
        point=_TESTS1_1_POINT,
        value=2 * math.sqrt(79 + 15 * R15),
        point_decimals=(3.9086, 1.4152), value_decimals=23.4174,
    ),
    Fixture(
        "tests1.2", "direct2d", _TESTS1_ANCHORS, weights=(3.0, 5.0, 4.0),
        point=(751 / 485, 647 / 485),
        value=math.sqrt(970),
        point_decimals=(1.5484, 1.3340), value_decimals=31.1448,
    ),
    Fixture(
        "tests1.3", "direct2d", ((0.0, 0.0), (2.0, 0.0), (-R2, R2)), weights=(1.5, 2.0, 2.0),
        point=(1 - 1 / R2 - 3 / math.sqrt(110), 1 / R2 - 3 / math.sqrt(55) - 3 / math.sqrt(110)),
        value=math.sqrt(32 + 23 / R2 + 3 * math.sqrt(55 / 2)),
        point_decimals=(0.0068, 0.0165), value_decimals=7.9997,
    ),
    Fixture(
        "tests1.4", "direct2d", ((39.0, 57.0), (22.0, 42.0), (42.0, 75.0)), weights=(18.0, 41.0, 52.0),
        point=(
            296577529815837 / 9297789607234 + 357441196078431 / 6020318770684015 * R7511,
            271001243105952 / 4648894803617 + 432306390086253 / 12040637541368030 * R7511,
        ),
        value=math.sqrt(3068047 + 3915 * R7511),
        point_decimals=(37.0432, 61.4053), value_decimals=1845.8994,
    ),
    Fixture(
        "tests2.1", "classical2d", ((1.0, 1.0), (3.0, 5.0), (7.0, 2.0)),
        point=(2 * (1029 + 79 * R3) / 687, (1053 + 647 * R3) / 687),
        value=math.sqrt(41 + 22 * R3),
        point_decimals=(3.3939, 3.1639), value_decimals=8.8941,
    ),
    Fixture(
        "tests2.2", "classical2d", ((1.0, 2.0), (3.0, 3.0), (4.0, 1.0)),
        point=((15 + R3) / 6, (3 + R3) / 2),
        value=math.sqrt(10 + 5 * R3),
        point_decimals=(2.7886, 2.3660), value_decimals=4.3197,
    ),
    Fixture(
        "tests2.3", "classical2d", ((0.0, 0.0), (399.0, 0.0), (5005 / 38, 9555 * R3 / 38)),
        point=(21255 / 133, 8580 * R3 / 133),
        value=784.0,
        point_decimals=(159.8120, 111.7368),
    ),
    Fixture(
        "tests2.4", "classical2d", ((0.0, 0.0), (2.0, 0.0), (0.0, 1.0)),
        point=(1 / 13 + 4 * R3 / 39, 8 / 13 - 7 * R3 / 39),
        value=math.sqrt(5 + 2 * R3),
        point_decimals=(0.2545, 0.3045), value_decimals=2.9093,
    ),
    Fixture(
        "inverse-2-3-4", "inverse2d", _TESTS1_ANCHORS, target=_TESTS1_1_POINT,
        value=(-333980 + 193436 * R15) / 4299,
        ratio=(2.0, 3.0, 4.0),
    ),
)


@dataclass
class FixtureResult:
    name: str
    passed: bool
    point_error: float = 0.0  # worst per-coordinate relative error
    value_error: float = 0.0  # relative
    decimal_error: float = 0.0  # worst absolute gap to the printed decimals
    ratio_error: float = 0.0
    detail: str = ""


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b != 0 else abs(a)


def check_fixture(fx: Fixture) -> FixtureResult:
    res = FixtureResult(fx.name, True)
    problems = []
    if fx.kind == "inverse2d":
        inv = inverse.inverse_weights_2d(fx.anchors, fx.target)
        got = [w / inv.weights[0] for w in inv.weights]
        want = [r / fx.ratio[0] for r in fx.ratio]
        res.ratio_error = max(abs(g - w) for g, w in zip(got, want))
        res.value_error = _rel(inv.min_value, fx.value)
        if res.ratio_error > RATIO_TOL:
            problems.append(f"ratio off by {res.ratio_error:.3g}")
        if res.value_error > EXACT_REL_TOL:
            problems.append(f"value off by {res.value_error:.3g}")
    else:
        if fx.kind == "direct2d":
            sol = solve(TriangleInstance.build(fx.anchors, fx.weights))
        else:
            sol = solve_classical(*fx.anchors)
        if sol.vertex is not None:
            problems.append(f"unexpected regime {sol.regime}")
        point = tuple(sol.point)
        res.point_error = max(_rel(a, b) for a, b in zip(point, fx.point))
        res.value_error = _rel(sol.value, fx.value)
        gaps = [abs(a - b) for a, b in zip(point, fx.point_decimals or ())]
        if fx.value_decimals is not None:
            gaps.append(abs(sol.value - fx.value_decimals))
        res.decimal_error = max(gaps, default=0.0)
        if res.point_error > EXACT_REL_TOL:
            problems.append(f"point off by {res.point_error:.3g}")
        if res.value_error > EXACT_REL_TOL:
            problems.append(f"value off by {res.value_error:.3g}")
        if res.decimal_error > DECIMAL_TOL:
            problems.append(f"printed decimals off by {res.decimal_error:.3g}")
    res.passed = not problems
    res.detail = "; ".join(problems)
    return res


def run_corpus() -> list:
    return [check_fixture(fx) for fx in FIXTURES]
