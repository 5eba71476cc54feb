"""Command-line entry point.

Exit codes: 0 all checks pass, 1 some check fails (report still written),
2 scenario schema error, 3 check precondition failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
import time
from pathlib import Path

from . import __version__
from .errors import IsoperimError
from .radial import PRESETS
from .scenario import DEFAULT_GRID, ReportDocument, ScenarioError, Settings, load, run, validate

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA, EXIT_PRECONDITION, EXIT_IO = 0, 1, 2, 3, 4
CSV_COLUMNS = ("name", "lhs", "rhs", "slack", "tolerance", "pass")

_COS = {"type": "fourier", "coeffs": [[1, 0.5, 0.0], [-1, 0.5, 0.0]]}
_FLAT = {"type": "preset", "name": "flat", "c": 0.0}

# equality anchors with closed-form answers, plus two strict cases
SELFTEST = [
    {"spec": 1, "check": "conformal_residual", "boundary": _COS, "grid": {"nr": 32, "ntheta": 64}, "tolerance": 1e-10},
    {"spec": 1, "check": "nehari", "boundary": _FLAT},
    {"spec": 1, "check": "nehari", "boundary": _COS},
    *(
        {"spec": 1, "check": ["bol", "alexandrov"], "boundary": {"type": "preset", "name": "bubble", "beta": b}, "lambda": 2.0, "K0": 1.0}
        for b in (0.5, 1.0, 2.0)
    ),
    {"spec": 1, "check": "alexandrov", "boundary": {"type": "preset", "name": "bubble", "beta": 1.0}, "K0": 0.5},
    {"spec": 1, "check": "green_bound", "pole": [0.0, 0.0], "tolerance": 1e-6},
    {"spec": 1, "check": "green_bound", "pole": [0.5, 0.0], "tolerance": 1e-6},
    {"spec": 1, "check": "huber_point", "boundary": _FLAT, "alpha": math.pi, "pole": [0.0, 0.0], "tolerance": 1e-5},
    {"spec": 1, "check": "huber_point", "boundary": _FLAT, "alpha": 0.0, "pole": [0.0, 0.0]},
    {"spec": 1, "check": "huber_superlevel", "measure": {"atoms": [[math.pi, 0.0, 0.0]]}, "radius": 0.5},
    *(
        {"spec": 1, "check": "gauss_bonnet", "boundary": {"type": "preset", "name": name}, "r0": r0}
        for name in ("flat", "sphere", "hyperbolic")
        for r0 in (0.25, 0.5, 0.9)
    ),
    *(
        {"spec": 1, "check": "fiala", "boundary": {"type": "preset", "name": name}, "r0": r0, "direction": d, "tolerance": 1e-5}
        for name, r0 in (("sphere", 1.0), ("hyperbolic", 0.5), ("flat", 0.6))
        for d in ("outward", "inward")
    ),
]


def render(doc: ReportDocument, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc.to_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for c in doc.checks:
        writer.writerow([c.name, repr(c.lhs), repr(c.rhs), repr(c.slack), repr(c.tolerance), str(c.passed).lower()])
    return buf.getvalue()


def emit(doc: ReportDocument, fmt: str = "json", out_path: str = "-") -> None:
    """Write the report to ``out_path`` (``-`` for stdout), atomically for files."""
    text = render(doc, fmt)
    if out_path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(out_path)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run_selftest() -> ReportDocument:
    """Run every anchor scenario and merge the results into one document."""
    start = time.perf_counter()
    merged = ReportDocument(__version__, SELFTEST, {"grid_default": dict(DEFAULT_GRID)})
    for data in SELFTEST:
        validate(data)
        doc = run(data)
        merged.checks.extend(doc.checks)
        merged.refinement.extend(doc.refinement)
    merged.wall_time = time.perf_counter() - start
    return merged


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"{text} is not positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isoperim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run a scenario file")
    check.add_argument("scenario", help="scenario JSON file")
    check.add_argument("--grid-nr", type=int, dest="nr")
    check.add_argument("--grid-ntheta", type=int, dest="ntheta")
    check.add_argument("--levels", type=int, dest="nlevels")
    check.add_argument("--tol", type=_positive_float, dest="tolerance")
    check.add_argument("--seed", type=int)

    selftest = sub.add_parser("selftest", help="run the equality-anchor suite")
    for p in (check, selftest):
        p.add_argument("--out", default="-", help="output path, '-' for stdout (default)")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    presets = sub.add_parser("presets", help="list radial presets")
    presets.add_argument("action", choices=("list",))
    return parser


def _list_presets() -> int:
    import inspect

    for name in sorted(PRESETS):
        params = inspect.signature(PRESETS[name]).parameters.values()
        args = ", ".join(f"{p.name}={p.default}" for p in params)
        print(f"{name}({args})")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "presets":
        return _list_presets()
    try:
        if args.command == "selftest":
            doc = run_selftest()
        else:
            overrides = {k: getattr(args, k) for k in ("nr", "ntheta", "nlevels", "tolerance", "seed")}
            data = load(args.scenario)
            doc = run(data, Settings.resolve(data, overrides))
    except ScenarioError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (IsoperimError, ValueError, ArithmeticError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    try:
        emit(doc, args.format, args.out)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    for c in doc.checks:
        if not c.passed:
            print(f"FAIL {c.name}: slack {c.slack:.3e} below -{c.tolerance:.1e}", file=sys.stderr)
    return EXIT_OK if doc.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
