"""Dispatch instances to the solvers and package the results as records."""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from . import inverse, oracle
from .errors import InternalInconsistency, MaxIterationsExceeded, TorricelliError
from .geometry import max_pairwise_distance
from .records import Instance, ResultRecord, error_record
from .solver import DEFAULT_TOL, Solution, TriangleInstance, solve, solve_classical

# Agreement thresholds used by `verify`.
ORACLE_POINT_TOL = 1e-6  # times the max anchor spacing
ORACLE_VALUE_TOL = 1e-6  # relative
ROUND_TRIP_TOL = 1e-9  # times the max anchor spacing
FD_GRADIENT_TOL = 1e-6  # times the weight sum
FD_STEP = 1e-6  # times the max anchor spacing


def _effective_tol(inst: Instance, tol: Optional[float]) -> float:
    if tol is not None:
        return tol
    return inst.options.get("tol", DEFAULT_TOL)


def _diagnostics_dict(sol: Solution) -> dict:
    out = {"stationarity_residual": sol.diagnostics.stationarity_residual}
    out.update(sol.diagnostics.identity_residuals)
    return out


def _weiszfeld_comparison(anchors, weights, point, value) -> dict:
    scale = max_pairwise_distance(anchors)
    try:
        rep = oracle.weiszfeld(anchors, weights)
    except MaxIterationsExceeded as exc:
        rep = exc.report
    gap = math.dist(rep.point, tuple(point))
    f = oracle.objective(rep.point, anchors, weights)
    return {
        "method": "weiszfeld",
        "point": list(rep.point),
        "iterations": rep.iterations,
        "converged": rep.converged,
        "locked_vertex": rep.locked_vertex,
        "point_gap": gap / scale,
        "value_gap": abs(f - value) / value,
    }


def _direct(inst: Instance, tol: float, check: bool):
    if inst.kind == "direct2d":
        t = TriangleInstance.build(inst.anchors, inst.weights)
        return solve(t, tol=tol, check=check), list(inst.weights)
    return solve_classical(*inst.anchors, tol=tol, check=check), [1.0, 1.0, 1.0]


def run_instance(inst: Instance, tol: Optional[float] = None, with_oracle: bool = False,
                 verify: bool = False, source: Optional[str] = None) -> ResultRecord:
    """Solve one instance.  Errors become error records, never exceptions.

    ``verify`` attaches the oracle comparison and turns any disagreement
    beyond the fixed thresholds into an internal-inconsistency error.
    """
    tol = _effective_tol(inst, tol)
    echo = inst.to_dict()
    try:
        if inst.kind in ("direct2d", "classical2d"):
            record = _run_direct(inst, tol, with_oracle or verify, verify)
        else:
            record = _run_inverse(inst, tol, with_oracle or verify, verify)
    except TorricelliError as exc:
        return error_record(exc, source, echo)
    record.source = source
    record.instance = echo
    return record


def _run_direct(inst, tol, with_oracle, verify) -> ResultRecord:
    sol, weights = _direct(inst, tol, check=True)
    record = ResultRecord(
        status="ok",
        regime=sol.regime,
        point=list(sol.point),
        value=sol.value,
        diagnostics=_diagnostics_dict(sol),
    )
    if with_oracle:
        cmp = _weiszfeld_comparison(inst.anchors, weights, sol.point, sol.value)
        failures = []
        if not cmp["converged"]:
            failures.append("Weiszfeld did not converge")
        if cmp["point_gap"] > ORACLE_POINT_TOL:
            failures.append(f"point gap {cmp['point_gap']:.3g}")
        if cmp["value_gap"] > ORACLE_VALUE_TOL:
            failures.append(f"value gap {cmp['value_gap']:.3g}")
        if cmp["locked_vertex"] != sol.vertex:
            failures.append(f"oracle vertex {cmp['locked_vertex']} vs closed form {sol.vertex}")
        cmp["passed"] = not failures
        record.oracle = cmp
        if verify and failures:
            raise InternalInconsistency("oracle disagreement: " + "; ".join(failures))
    return record


def _run_inverse(inst, tol, with_oracle, verify) -> ResultRecord:
    if inst.kind == "inverse2d":
        res = inverse.inverse_weights_2d(inst.anchors, inst.target)
    else:
        res = inverse.inverse_weights_3d(inst.anchors, inst.target)
    bad = {k: v for k, v in res.diagnostics.items() if not v <= tol}
    if bad:
        raise InternalInconsistency(f"diagnostic residuals above tolerance {tol:g}: {bad}")
    record = ResultRecord(
        status="ok",
        regime="interior",
        point=list(inst.target),
        value=res.min_value,
        weights=list(res.weights),
        scale=res.scale,
        power=res.power,
        permutation=list(res.permutation),
        diagnostics=dict(res.diagnostics),
    )
    if with_oracle:
        record.oracle = _inverse_oracle(inst, res)
        if verify and not record.oracle["passed"]:
            raise InternalInconsistency(f"oracle disagreement: {record.oracle}")
    return record


def _inverse_oracle(inst: Instance, res) -> dict:
    anchors = inst.anchors
    raw = list(res.raw_weights)
    scale = max_pairwise_distance(anchors)
    grad = oracle.finite_difference_gradient(inst.target, anchors, raw, FD_STEP * scale)
    grad_norm = float(np.linalg.norm(grad))
    direct = oracle.objective(inst.target, anchors, raw)
    out = {
        "method": "finite-difference",
        "gradient_norm": grad_norm / sum(raw),
        "value_gap": abs(direct - res.min_value) / direct,
    }
    passed = out["gradient_norm"] < FD_GRADIENT_TOL and out["value_gap"] < ROUND_TRIP_TOL
    if inst.kind == "inverse2d":
        t = TriangleInstance.build(anchors, res.weights)
        sol = solve(t)
        out["round_trip_gap"] = math.dist(tuple(sol.point), tuple(inst.target)) / scale
        passed = passed and out["round_trip_gap"] < ROUND_TRIP_TOL
    out["passed"] = passed
    return out


def run_batch(instances, tol=None, with_oracle=False, verify=False, source=None) -> list:
    """Items may be Instance objects or pre-parsed errors; order is kept."""
    records = []
    for i, item in enumerate(instances):
        src = f"{source}#{i}" if source is not None else None
        if isinstance(item, Exception):
            records.append(error_record(item, src))
        else:
            records.append(run_instance(item, tol, with_oracle, verify, src))
    return records
