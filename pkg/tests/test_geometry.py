import math

import numpy as np
import pytest

from torricelli.errors import CollinearAnchors, DegenerateTetrahedron, InvalidInput
from torricelli.geometry import (
    PlanarPoint,
    barycentric,
    check_noncollinear,
    check_noncoplanar,
    circumcenter,
    doubled_area,
    power_via_circumcenter,
    signed_doubled_area,
    signed_sextuple_volume,
    weighted_distance_sum,
)


class TestDoubledArea:
    def test_unit_right_triangle(self):
        assert doubled_area((0, 0), (1, 0), (0, 1)) == 1.0

    def test_collinear(self):
        assert doubled_area((0, 0), (1, 1), (2, 2)) == 0.0

    def test_tests1_triangle(self):
        # shoelace by hand: 2*1 + 1*1 + 5*6 - 2*1 - 5*1 - 1*6 = 20
        assert doubled_area((2, 6), (1, 1), (5, 1)) == 20.0

    def test_signed_flips_with_orientation(self):
        assert signed_doubled_area((0, 0), (1, 0), (0, 1)) == 1.0
        assert signed_doubled_area((0, 0), (0, 1), (1, 0)) == -1.0

    def test_matches_numpy_determinant(self, rng):
        for _ in range(50):
            p = rng.uniform(-5, 5, size=(3, 2))
            m = np.vstack([np.ones(3), p.T])
            assert signed_doubled_area(*p) == pytest.approx(np.linalg.det(m), rel=1e-9, abs=1e-12)


class TestValidation:
    def test_collinear_rejected(self):
        with pytest.raises(CollinearAnchors):
            check_noncollinear((0, 0), (1, 1), (2, 2))

    def test_threshold_is_scale_relative(self):
        # same shape at two scales: both accepted
        for lam in (1e-6, 1e6):
            check_noncollinear((0, 0), (lam, 0), (0, lam))

    def test_nearly_collinear_rejected(self):
        with pytest.raises(CollinearAnchors):
            check_noncollinear((0, 0), (1, 1e-13), (2, 0))

    def test_coplanar_rejected(self):
        with pytest.raises(DegenerateTetrahedron):
            check_noncoplanar((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0))

    def test_nonfinite_point(self):
        with pytest.raises(InvalidInput):
            PlanarPoint(math.nan, 0.0)


def test_sextuple_volume_unit_tetrahedron():
    assert signed_sextuple_volume((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)) == 1.0


def test_barycentric_centroid():
    b = barycentric((1 / 3, 1 / 3), (0, 0), (1, 0), (0, 1))
    assert b == pytest.approx((1 / 3, 1 / 3, 1 / 3))


def test_objective_direct():
    assert weighted_distance_sum((0, 0), [(3, 4), (0, 1)], [2, 5]) == 15.0


class TestCircumcenter:
    def test_right_triangle_hypotenuse_midpoint(self):
        assert circumcenter([(0, 0), (2, 0), (0, 2)]) == pytest.approx([1, 1])

    def test_power_at_center_and_on_circle(self):
        anchors = [(0, 0), (2, 0), (0, 2)]
        assert power_via_circumcenter((1, 1), anchors) == pytest.approx(-2.0)
        assert power_via_circumcenter((2, 2), anchors) == pytest.approx(0.0, abs=1e-12)

    def test_sphere(self):
        anchors = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
        assert circumcenter(anchors) == pytest.approx([0.5, 0.5, 0.5])
