"""Instance files and result records.

Instance files are JSON: either one instance object or a list of them::

    {"kind": "direct2d",
     "name": "tests1_2",
     "anchors": [[2, 6], [1, 1], [5, 1]],
     "weights": [3, 5, 4],
     "options": {"tol": 1e-9}}

``kind`` is one of direct2d, classical2d, inverse2d, inverse3d.  ``weights``
is required for direct2d and forbidden otherwise; ``target`` is required for
the two inverse kinds and forbidden otherwise.  ``name`` and ``options`` are
optional.

Result records are emitted one JSON object per line.  Floats are written with
Python's shortest round-trip repr, so parsing a record gives back exactly the
same numbers.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Optional

from .errors import MalformedInstance

KINDS = ("direct2d", "classical2d", "inverse2d", "inverse3d")
_ANCHOR_COUNT = {"direct2d": 3, "classical2d": 3, "inverse2d": 3, "inverse3d": 4}
_DIM = {"direct2d": 2, "classical2d": 2, "inverse2d": 2, "inverse3d": 3}
_KNOWN_KEYS = {"kind", "name", "anchors", "weights", "target", "options"}
_KNOWN_OPTIONS = {"tol"}


def _number(v, what) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise MalformedInstance(f"{what} must be a number, got {v!r}")
    v = float(v)
    if not math.isfinite(v):
        raise MalformedInstance(f"{what} must be finite, got {v!r}")
    return v


def _point(v, dim, what) -> tuple:
    if not isinstance(v, (list, tuple)) or len(v) != dim:
        raise MalformedInstance(f"{what} must be a list of {dim} numbers, got {v!r}")
    return tuple(_number(c, what) for c in v)


@dataclass
class Instance:
    kind: str
    anchors: list
    weights: Optional[list] = None
    target: Optional[tuple] = None
    name: Optional[str] = None
    options: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: Any, default_kind: Optional[str] = None) -> "Instance":
        if not isinstance(data, dict):
            raise MalformedInstance(f"an instance must be a JSON object, got {type(data).__name__}")
        unknown = set(data) - _KNOWN_KEYS
        if unknown:
            raise MalformedInstance(f"unknown instance fields: {sorted(unknown)}")
        kind = data.get("kind", default_kind)
        if kind not in KINDS:
            raise MalformedInstance(f"kind must be one of {KINDS}, got {kind!r}")
        if default_kind is not None and kind != default_kind:
            raise MalformedInstance(f"instance kind {kind!r} does not match subcommand ({default_kind})")

        dim = _DIM[kind]
        anchors = data.get("anchors")
        if not isinstance(anchors, list) or len(anchors) != _ANCHOR_COUNT[kind]:
            raise MalformedInstance(f"{kind} needs exactly {_ANCHOR_COUNT[kind]} anchors")
        anchors = [_point(a, dim, "anchor") for a in anchors]

        weights = data.get("weights")
        if kind == "direct2d":
            if not isinstance(weights, list) or len(weights) != 3:
                raise MalformedInstance("direct2d needs a list of three weights")
            weights = [_number(m, "weight") for m in weights]
            if not all(m > 0 for m in weights):
                raise MalformedInstance(f"weights must be positive, got {weights}")
        elif weights is not None:
            raise MalformedInstance(f"weights are only allowed for direct2d, not {kind}")

        target = data.get("target")
        if kind.startswith("inverse"):
            target = _point(target, dim, "target")
        elif target is not None:
            raise MalformedInstance(f"target is only allowed for inverse kinds, not {kind}")

        options = data.get("options") or {}
        if not isinstance(options, dict) or set(options) - _KNOWN_OPTIONS:
            raise MalformedInstance(f"options may only contain {sorted(_KNOWN_OPTIONS)}")
        if "tol" in options:
            tol = _number(options["tol"], "options.tol")
            if tol <= 0:
                raise MalformedInstance("options.tol must be positive")
            options = {"tol": tol}

        name = data.get("name")
        if name is not None and not isinstance(name, str):
            raise MalformedInstance("name must be a string")
        return cls(kind, anchors, weights, target, name, options)

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.name is not None:
            out["name"] = self.name
        out["anchors"] = [list(a) for a in self.anchors]
        if self.weights is not None:
            out["weights"] = list(self.weights)
        if self.target is not None:
            out["target"] = list(self.target)
        if self.options:
            out["options"] = dict(self.options)
        return out


def parse_instances(text: str, default_kind: Optional[str] = None) -> list:
    """Parse a document into a list whose items are Instance objects or the
    MalformedInstance raised for that item, in document order."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInstance(f"invalid JSON: {exc}") from None
    items = data if isinstance(data, list) else [data]
    out = []
    for item in items:
        try:
            out.append(Instance.from_dict(item, default_kind))
        except MalformedInstance as exc:
            out.append(exc)
    return out


def load_instances(path, default_kind: Optional[str] = None) -> list:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedInstance(f"cannot read {path}: {exc.strerror}") from None
    return parse_instances(text, default_kind)


@dataclass
class ResultRecord:
    status: str  # "ok" or "error"
    source: Optional[str] = None
    instance: Optional[dict] = None
    regime: Optional[str] = None
    point: Optional[list] = None
    value: Optional[float] = None
    weights: Optional[list] = None
    scale: Optional[float] = None
    power: Optional[float] = None
    permutation: Optional[list] = None
    diagnostics: dict = field(default_factory=dict)
    oracle: Optional[dict] = None
    error: Optional[dict] = None

    @property
    def exit_code(self) -> int:
        return 0 if self.error is None else int(self.error["code"])

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None and v != {}}

    @classmethod
    def from_dict(cls, data: dict) -> "ResultRecord":
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown record fields: {sorted(unknown)}")
        return cls(**data)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), allow_nan=True)

    @classmethod
    def loads(cls, line: str) -> "ResultRecord":
        return cls.from_dict(json.loads(line))


def error_record(exc: Exception, source=None, instance=None) -> ResultRecord:
    code = getattr(exc, "exit_code", 3)
    return ResultRecord(
        status="error",
        source=source,
        instance=instance,
        error={"code": code, "type": type(exc).__name__, "message": str(exc)},
    )
