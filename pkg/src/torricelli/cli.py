"""Command-line front end.

Usage:
    torricelli solve INSTANCE.json [...]       weighted direct problem
    torricelli classical INSTANCE.json [...]   equal weights
    torricelli inverse INSTANCE.json [...]     planar inverse weights
    torricelli inverse3d INSTANCE.json [...]   tetrahedron inverse weights
    torricelli verify INSTANCE.json [...]      closed form vs oracle, any kind
    torricelli verify --random 200 --seed 1    same, on random instances
    torricelli corpus                          built-in regression fixtures

Records go to stdout, one JSON object per line (``--pretty`` for a table).
Use ``-`` to read an instance document from stdin.

Exit codes:
    0  every instance succeeded
    2  invalid input (malformed file, collinear anchors, target not interior)
    3  internal inconsistency (residual above tolerance, oracle disagreement)
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

import numpy as np

from .batch import run_batch
from .corpus import FIXTURES, run_corpus
from .errors import MalformedInstance
from .records import Instance, error_record, load_instances, parse_instances

_KIND_OF = {
    "solve": "direct2d",
    "classical": "classical2d",
    "inverse": "inverse2d",
    "inverse3d": "inverse3d",
    "verify": None,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torricelli",
        description="Closed-form weighted Fermat-Torricelli solver",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="exit codes: 0 ok, 2 invalid input, 3 internal inconsistency",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (
        ("solve", "solve direct2d instances"),
        ("classical", "solve classical2d (equal weight) instances"),
        ("inverse", "inverse weights for inverse2d instances"),
        ("inverse3d", "inverse weights for inverse3d instances"),
        ("verify", "check closed form against the iterative oracle"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("files", nargs="*" if name == "verify" else "+", metavar="FILE",
                       help="instance file (JSON object or list); '-' for stdin")
        p.add_argument("--tol", type=float, default=None,
                       help="residual tolerance (default 1e-9, or the file's options.tol)")
        p.add_argument("--pretty", action="store_true", help="print a table instead of JSON lines")
        if name == "verify":
            p.add_argument("--random", type=int, default=0, metavar="N",
                           help="also verify N random instances")
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--kind", choices=("direct2d", "inverse2d", "inverse3d"),
                           default="direct2d", help="kind of random instance")
        else:
            p.add_argument("--oracle", action="store_true",
                           help="attach the oracle comparison to each record")

    p = sub.add_parser("corpus", help="run the built-in regression fixtures")
    p.add_argument("--json", action="store_true", help="emit one JSON record per fixture")
    return parser


def random_instances(n: int, kind: str, seed: int) -> list:
    """Random instances: anchors uniform in [-10, 10]^dim, weights in [0.5, 2],
    inverse targets drawn from a Dirichlet(1,..,1) barycentric distribution."""
    rng = np.random.default_rng(seed)
    out = []
    dim = 3 if kind == "inverse3d" else 2
    count = 4 if kind == "inverse3d" else 3
    while len(out) < n:
        anchors = rng.uniform(-10, 10, size=(count, dim))
        data = {"kind": kind, "anchors": anchors.tolist(), "name": f"random-{len(out)}"}
        if kind == "direct2d":
            data["weights"] = rng.uniform(0.5, 2.0, size=3).tolist()
        else:
            data["target"] = (rng.dirichlet(np.ones(count)) @ anchors).tolist()
        out.append(Instance.from_dict(data))
    return out


def _read(path: str, kind: Optional[str]) -> list:
    try:
        if path == "-":
            return parse_instances(sys.stdin.read(), kind)
        return load_instances(path, kind)
    except MalformedInstance as exc:
        return [exc]


def _fmt(v, digits=10) -> str:
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt(c, digits) for c in v) + ")"
    return f"{v:.{digits}g}"


def _print_table(records, out) -> None:
    rows = [("source", "status", "regime", "point", "value", "worst residual / error")]
    for r in records:
        name = (r.instance or {}).get("name") or r.source or "-"
        if r.error is not None:
            rows.append((name, "error", "-", "-", "-", f"[{r.error['code']}] {r.error['type']}: {r.error['message']}"))
            continue
        worst = max(r.diagnostics.values(), default=0.0)
        rows.append((name, r.status, r.regime or "-", _fmt(r.point), _fmt(r.value), f"{worst:.2e}"))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]) - 1)]
    for row in rows:
        cells = [c.ljust(w) for c, w in zip(row, widths)] + [row[-1]]
        print("  ".join(cells), file=out)


def _run_corpus(as_json: bool, out) -> int:
    results = run_corpus()
    if as_json:
        import json
        from dataclasses import asdict

        for fx, res in zip(FIXTURES, results):
            print(json.dumps({"instance": fx.instance_dict(), **asdict(res)}), file=out)
    else:
        print(f"{'fixture':<12}{'result':<8}{'point err':>12}{'value err':>12}{'decimals':>12}{'ratio err':>12}", file=out)
        for res in results:
            print(
                f"{res.name:<12}{'PASS' if res.passed else 'FAIL':<8}"
                f"{res.point_error:>12.2e}{res.value_error:>12.2e}"
                f"{res.decimal_error:>12.2e}{res.ratio_error:>12.2e}"
                + (f"  {res.detail}" if res.detail else ""),
                file=out,
            )
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} fixtures passed", file=sys.stderr if as_json else out)
    return 0 if passed == len(results) else 3


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = _build_parser().parse_args(argv)
    if args.command == "corpus":
        return _run_corpus(args.json, out)

    kind = _KIND_OF[args.command]
    verify = args.command == "verify"
    records = []
    for path in args.files:
        records.extend(run_batch(_read(path, kind), args.tol, getattr(args, "oracle", False),
                                 verify, source=path))
    if verify and args.random:
        try:
            items = random_instances(args.random, args.kind, args.seed)
        except MalformedInstance as exc:  # pragma: no cover - generator builds valid documents
            items = [exc]
        records.extend(run_batch(items, args.tol, True, True, source="random"))
    if not records:
        records.append(error_record(MalformedInstance("no instances given")))

    if args.pretty:
        _print_table(records, out)
    else:
        for r in records:
            print(r.dumps(), file=out)
    return max(r.exit_code for r in records)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
