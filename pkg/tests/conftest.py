import math

import numpy as np
import pytest

from torricelli.errors import CollinearAnchors
from torricelli.solver import TriangleInstance, vertex_test


def random_triangle(rng, low=-10.0, high=10.0, wlow=0.5, whigh=2.0):
    """Anchors uniform in [low, high]^2, weights uniform in [wlow, whigh]."""
    while True:
        anchors = rng.uniform(low, high, size=(3, 2))
        weights = rng.uniform(wlow, whigh, size=3)
        try:
            return TriangleInstance.build(anchors.tolist(), weights.tolist())
        except CollinearAnchors:
            continue


def interior_instances(rng, n):
    out = []
    while len(out) < n:
        t = random_triangle(rng)
        if vertex_test(t) is None:
            out.append(t)
    return out


def vertex_instances(rng, n):
    out = []
    while len(out) < n:
        t = random_triangle(rng)
        j = vertex_test(t)
        if j is not None:
            out.append((t, j))
    return out


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


def close_points(p, q, tol):
    return math.dist(tuple(p), tuple(q)) <= tol


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


TESTS1 = ((2.0, 6.0), (1.0, 1.0), (5.0, 1.0))
