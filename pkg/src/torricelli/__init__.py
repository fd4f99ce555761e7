"""Weighted Fermat-Torricelli point of a triangle in closed form."""

from .errors import (
    CandidateAtAnchor,
    CollinearAnchors,
    DegenerateTetrahedron,
    InternalInconsistency,
    InvalidInput,
    MalformedInstance,
    MaxIterationsExceeded,
    NonTriangularWeights,
    TargetNotInterior,
    TorricelliError,
)
from .geometry import PlanarPoint, SpatialPoint, weighted_distance_sum
from .inverse import (
    InverseSolution,
    inverse_min_value_2d,
    inverse_min_value_3d,
    inverse_weights_2d,
    inverse_weights_3d,
    power_of_point_2d,
    power_of_point_3d,
)
from .oracle import IterationReport, grid_refine, stationarity_residual, weiszfeld
from .solver import (
    Diagnostics,
    SideLengths,
    Solution,
    TriangleInstance,
    WeightTriple,
    doubled_area,
    fermat_point_area_free,
    k_coefficients,
    minimum_d,
    side_lengths,
    signed_doubled_area,
    solve,
    solve_classical,
    vertex_test,
    weight_sigma,
)

__version__ = "0.1.0"
