"""Independent checks for the closed form: gradient residuals, Weiszfeld
iteration and a shrinking grid search.

Nothing here imports the closed-form solver, so agreement between the two is
evidence rather than tautology.  The routines accept anchors of any dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import CandidateAtAnchor, InternalInconsistency, MaxIterationsExceeded

ANCHOR_TOL = 1e-14
DEFAULT_MAX_ITER = 100_000
DEFAULT_STEP_TOL = 1e-12


@dataclass
class IterationReport:
    point: tuple
    iterations: int
    final_step: float
    converged: bool
    locked_vertex: Optional[int] = None  # 1-based
    objective: float = math.nan
    trace: list = field(default_factory=list, repr=False)


def _as_arrays(anchors, weights):
    a = np.asarray([tuple(p) for p in anchors], dtype=float)
    w = np.asarray(list(weights), dtype=float)
    if a.ndim != 2 or len(a) != len(w):
        raise ValueError("anchors and weights must have matching lengths")
    return a, w


def _scale(a: np.ndarray) -> float:
    diff = a[:, None, :] - a[None, :, :]
    return float(np.sqrt((diff ** 2).sum(-1)).max())


def objective(point, anchors, weights) -> float:
    a, w = _as_arrays(anchors, weights)
    p = np.asarray(tuple(point), dtype=float)
    return float(np.dot(w, np.linalg.norm(a - p, axis=1)))


def gradient(point, anchors, weights) -> np.ndarray:
    """Sum of m_j (P - P_j)/|P - P_j|; raises CandidateAtAnchor at an anchor."""
    a, w = _as_arrays(anchors, weights)
    p = np.asarray(tuple(point), dtype=float)
    diff = p - a
    rho = np.linalg.norm(diff, axis=1)
    if np.any(rho <= ANCHOR_TOL * _scale(a)):
        j = int(np.argmin(rho)) + 1
        raise CandidateAtAnchor(f"candidate {tuple(p)} coincides with anchor {j}")
    return (w / rho) @ diff


def stationarity_residual(anchors, weights, candidate) -> float:
    return float(np.linalg.norm(gradient(candidate, anchors, weights)))


def vertex_pull(anchors, weights, j: int) -> float:
    """Norm of the gradient of the terms other than j, evaluated at anchor j
    (0-based).  Anchor j is the minimizer iff this does not exceed m_j."""
    a, w = _as_arrays(anchors, weights)
    mask = np.arange(len(a)) != j
    diff = a[j] - a[mask]
    rho = np.linalg.norm(diff, axis=1)
    return float(np.linalg.norm((w[mask] / rho) @ diff))


def vertex_is_optimal(anchors, weights, j: int) -> bool:
    _, w = _as_arrays(anchors, weights)
    return vertex_pull(anchors, weights, j) <= w[j]


def finite_difference_gradient(point, anchors, weights, step: float) -> np.ndarray:
    """Central differences of the objective with the given absolute step."""
    p = np.asarray(tuple(point), dtype=float)
    g = np.empty_like(p)
    for i in range(len(p)):
        e = np.zeros_like(p)
        e[i] = step
        g[i] = (objective(p + e, anchors, weights) - objective(p - e, anchors, weights)) / (2 * step)
    return g


def weiszfeld(
    anchors: Sequence,
    weights: Sequence[float],
    max_iter: int = DEFAULT_MAX_ITER,
    step_tol: Optional[float] = None,
    record_trace: bool = False,
) -> IterationReport:
    """Weighted Weiszfeld iteration started at the weighted centroid.

    When an iterate reaches an anchor, the anchor is accepted if it satisfies
    the vertex optimality condition; otherwise the Vardi-Zhang step moves the
    iterate off it.  The same test is applied to the nearest anchor once the
    step size falls below ``step_tol`` (default 1e-12 * max anchor spacing).

    Raises MaxIterationsExceeded, carrying the last report, when the budget
    runs out.
    """
    a, w = _as_arrays(anchors, weights)
    scale = _scale(a)
    if step_tol is None:
        step_tol = DEFAULT_STEP_TOL * scale
    magnitude = float(np.abs(a).max())
    # an iterate cannot get closer to an anchor than a few ulps of its coordinates
    hit_tol = max(ANCHOR_TOL * scale, 8 * np.finfo(float).eps * magnitude)

    def dist(x):
        d = a - x
        return np.sqrt(np.einsum("ij,ij->i", d, d))

    x = (w @ a) / w.sum()
    rho = dist(x)
    f = float(w @ rho)
    trace = [f] if record_trace else []
    step = math.inf
    growth = 1 + 64 * np.finfo(float).eps

    def locked(j):
        pt = tuple(float(v) for v in a[j])
        return IterationReport(pt, it, step, True, j + 1, objective(pt, a, w), trace)

    for it in range(1, max_iter + 1):
        j = int(np.argmin(rho))
        if rho[j] <= hit_tol:
            if vertex_is_optimal(a, w, j):
                step = float(rho[j])
                return locked(j)
            mask = np.arange(len(a)) != j
            coef = w[mask] / rho[mask]
            pulled = (coef @ a[mask]) / coef.sum()
            t = w[j] / vertex_pull(a, w, j)
            x_new = (1.0 - t) * pulled + t * a[j]
        else:
            coef = w / rho
            x_new = (coef @ a) / coef.sum()

        step = float(np.linalg.norm(x_new - x))
        rho = dist(x_new)
        f_new = float(w @ rho)
        if f_new > f * growth:
            raise InternalInconsistency(
                f"Weiszfeld objective increased at iteration {it}: {f!r} -> {f_new!r}"
            )
        x, f = x_new, f_new
        if record_trace:
            trace.append(f)

        if step < step_tol:
            j = int(np.argmin(rho))
            if vertex_is_optimal(a, w, j):
                return locked(j)
            return IterationReport(tuple(float(v) for v in x), it, step, True, None, f, trace)

    # slow linear approach to an optimal anchor: the optimality test certifies it
    j = int(np.argmin(rho))
    if vertex_is_optimal(a, w, j):
        return locked(j)
    report = IterationReport(tuple(float(v) for v in x), max_iter, step, False, None, f, trace)
    raise MaxIterationsExceeded(
        f"Weiszfeld did not converge in {max_iter} iterations (last step {step:.3g})", report
    )


def grid_refine(anchors, weights, resolution: float, points_per_axis: int = 201) -> tuple:
    """Brute-force minimizer over the anchors' bounding box.

    A coarse grid is followed by two shrink passes around the best node; the
    final pitch is ``resolution / 2`` (absolute length units).
    """
    a, w = _as_arrays(anchors, weights)
    lo, hi = a.min(axis=0), a.max(axis=0)
    span = float((hi - lo).max())
    pitch = span / (points_per_axis - 1)
    final_pitch = resolution / 2.0
    shrink = max(1.0, math.sqrt(pitch / final_pitch))
    pitches = [pitch, max(final_pitch, pitch / shrink), final_pitch]
    pitches[1] = min(pitches[1], pitch)

    def best_on(lo, hi, h):
        axes = [np.arange(l, u + 0.5 * h, h) for l, u in zip(lo, hi)]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, a.shape[1])
        # always include the anchors so a vertex optimum is exact
        mesh = np.vstack([mesh, a])
        vals = np.linalg.norm(mesh[:, None, :] - a[None, :, :], axis=2) @ w
        return mesh[int(np.argmin(vals))]

    best = best_on(lo, hi, pitches[0])
    for prev, h in zip(pitches[:-1], pitches[1:]):
        best = best_on(best - 3 * prev, best + 3 * prev, h)
    return tuple(float(v) for v in best)
