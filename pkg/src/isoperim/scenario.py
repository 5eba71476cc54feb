"""Scenario files: schema, loading, and dispatch to the individual checks.

A scenario is a JSON object::

    {"spec": 1, "check": "bol",
     "boundary": {"type": "preset", "name": "bubble", "beta": 1.0},
     "lambda": 2.0}

``check`` may also be a list of check names; they run in order on the same
inputs.  Every quadrature-based check is rerun on a grid of half the
resolution and the differences are reported as a refinement estimate.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable

import jsonschema
import numpy as np

from . import __version__
from .alexandrov import CurvatureScenario, alexandrov_check
from .errors import DegenerateFieldError, IsoperimError, UnsupportedScenarioError
from .fiala import DEFAULT_STEP, Direction, fiala_ineq_check, gauss_bonnet_check, parallel_flow
from .fourier import DEFAULT_TAYLOR_MODES, FourierCoeffs, random_band_limited
from .geometry import nehari_check
from .green import green_level_bound_check, huber_measure_check, huber_point_check, huber_superlevel_check, measure_from_atoms
from .harmonic import build_conformal_factor, disk_test_points, poisson_extend, residual_check
from .levelsets import bol_check, level_set_report, radial_fields
from .quadrature import PolarGrid
from .radial import PRESETS, RadialProfile
from .report import CheckReport

SPEC_VERSION = 1
DEFAULT_GRID = {"nr": 128, "ntheta": 256, "nlevels": 64}
GRID_MINIMA = {"nr": 32, "ntheta": 64, "nlevels": 16}
QUADRATURE_TOLERANCE = 1e-8
FD_TOLERANCE = 1e-3
FD_CHECKS = frozenset({"fiala"})

CHECKS = (
    "nehari",
    "bol",
    "huber_point",
    "huber_measure",
    "huber_superlevel",
    "alexandrov",
    "green_bound",
    "fiala",
    "gauss_bonnet",
    "conformal_residual",
)

# fields each check cannot run without
REQUIRED = {
    "nehari": ("boundary",),
    "bol": ("boundary", "lambda"),
    "huber_point": ("boundary", "alpha", "pole"),
    "huber_measure": ("boundary", "measure"),
    "huber_superlevel": ("measure",),
    "alexandrov": ("boundary", "K0"),
    "green_bound": ("pole",),
    "fiala": ("boundary", "r0"),
    "gauss_bonnet": ("boundary", "r0"),
    "conformal_residual": ("boundary",),
}

_BOUNDARY = {
    "fourier": {
        "additionalProperties": False,
        "required": ["coeffs"],
        "properties": {
            "type": {},
            "coeffs": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "array",
                    "prefixItems": [{"type": "integer"}, {"type": "number"}, {"type": "number"}],
                    "minItems": 3,
                    "maxItems": 3,
                },
            },
        },
    },
    "preset": {
        "additionalProperties": False,
        "required": ["name"],
        "properties": {
            "type": {},
            "name": {"enum": sorted(PRESETS)},
            "beta": {"type": "number", "exclusiveMinimum": 0},
            "c": {"type": "number"},
        },
    },
    "random": {
        "additionalProperties": False,
        "required": ["n_max"],
        "properties": {
            "type": {},
            "n_max": {"type": "integer", "minimum": 0, "maximum": 64},
            "amplitude": {"type": "number", "minimum": 0},
        },
    },
}

_POINT = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

SCHEMA: dict = {
    "type": "object",
    "additionalProperties": False,
    "required": ["spec", "check"],
    "properties": {
        "spec": {"type": "integer", "minimum": 1},
        "check": {
            "oneOf": [
                {"enum": list(CHECKS)},
                {"type": "array", "items": {"enum": list(CHECKS)}, "minItems": 1},
            ]
        },
        "boundary": {
            "type": "object",
            "required": ["type"],
            "properties": {"type": {"enum": list(_BOUNDARY)}},
            "allOf": [
                {"if": {"properties": {"type": {"const": kind}}}, "then": body}
                for kind, body in _BOUNDARY.items()
            ],
        },
        "lambda": {"type": "number", "minimum": 0},
        "K0": {"type": "number", "minimum": 0},
        "alpha": {"type": "number", "minimum": 0},
        "pole": _POINT,
        "measure": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "atoms": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3},
                },
                "alpha0": {"type": "number", "minimum": 0},
            },
        },
        "radius": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
        "r0": {"type": "number", "exclusiveMinimum": 0},
        "p_max": {"type": "number", "exclusiveMinimum": 0},
        "step": {"type": "number", "exclusiveMinimum": 0},
        "direction": {"enum": [d.value for d in Direction]},
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {k: {"type": "integer", "minimum": v} for k, v in GRID_MINIMA.items()},
        },
        "tolerance": {"type": "number", "exclusiveMinimum": 0},
        "seed": {"type": "integer", "minimum": 0},
    },
}


class ScenarioError(ValueError):
    """Scenario does not match the schema; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _json_path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def validate(data: Any) -> None:
    """Raise :class:`ScenarioError` unless ``data`` is a valid scenario."""
    if isinstance(data, dict) and isinstance(data.get("spec"), int) and data["spec"] > SPEC_VERSION:
        raise ScenarioError("$.spec", f"version {data['spec']} is newer than supported {SPEC_VERSION}")
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise ScenarioError(_json_path(err.absolute_path), err.message)
    for name in check_names(data):
        for key in REQUIRED[name]:
            if key not in data:
                raise ScenarioError(f"$.{key}", f"required by check {name!r}")


def check_names(data: dict) -> list[str]:
    checks = data["check"]
    return [checks] if isinstance(checks, str) else list(checks)


def load(path: str | Path) -> dict:
    """Read and validate a scenario file."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError("$", f"invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    validate(data)
    return data


@dataclass(frozen=True)
class Settings:
    """Resolved numerical settings: scenario values overridden by command-line flags."""

    nr: int = DEFAULT_GRID["nr"]
    ntheta: int = DEFAULT_GRID["ntheta"]
    nlevels: int = DEFAULT_GRID["nlevels"]
    tolerance: float | None = None
    seed: int = 0

    @classmethod
    def resolve(cls, data: dict, overrides: dict | None = None) -> "Settings":
        values = dict(DEFAULT_GRID)
        values.update(data.get("grid", {}))
        values["tolerance"] = data.get("tolerance")
        values["seed"] = data.get("seed", 0)
        for key, value in (overrides or {}).items():
            if value is not None:
                values[key] = value
        for key, low in GRID_MINIMA.items():
            if values[key] < low:
                raise ScenarioError(f"$.grid.{key}", f"{values[key]} is below the minimum {low}")
        if values["tolerance"] is not None and not values["tolerance"] > 0:
            raise ScenarioError("$.tolerance", "must be positive")
        return cls(**values)

    def halved(self) -> "Settings":
        return replace(self, nr=self.nr // 2, ntheta=self.ntheta // 2, nlevels=self.nlevels // 2)

    def tolerance_for(self, check: str) -> float:
        if self.tolerance is not None:
            return self.tolerance
        return FD_TOLERANCE if check in FD_CHECKS else QUADRATURE_TOLERANCE

    def to_dict(self) -> dict:
        return {"nr": self.nr, "ntheta": self.ntheta, "nlevels": self.nlevels, "tolerance": self.tolerance, "seed": self.seed}


@dataclass(frozen=True)
class Inputs:
    """Mathematical objects built from a scenario."""

    data: dict
    boundary: FourierCoeffs | None
    profile: RadialProfile | None

    @classmethod
    def build(cls, data: dict, seed: int) -> "Inputs":
        spec = data.get("boundary")
        boundary = profile = None
        if spec is None:
            pass
        elif spec["type"] == "fourier":
            boundary = FourierCoeffs.from_modes([(n, complex(re, im)) for n, re, im in spec["coeffs"]])
        elif spec["type"] == "random":
            rng = np.random.default_rng(seed)
            boundary = random_band_limited(rng, spec["n_max"], spec.get("amplitude", 1.0))
        else:
            params = {k: v for k, v in spec.items() if k not in ("type", "name")}
            try:
                profile = PRESETS[spec["name"]](**params)
            except TypeError as exc:
                raise ScenarioError("$.boundary", f"preset {spec['name']!r} does not take {sorted(params)}") from exc
        return cls(data, boundary, profile)

    def boundary_data(self) -> FourierCoeffs:
        """Boundary values of ``u`` as a Fourier series."""
        if self.boundary is not None:
            return self.boundary
        if self.profile is not None:
            self.profile.check_domain(1.0)
            return FourierCoeffs.constant(float(self.profile(1.0)))
        return FourierCoeffs.constant(0.0)

    def radial(self, check: str) -> RadialProfile:
        if self.profile is None:
            raise UnsupportedScenarioError(f"check {check!r} needs a preset (radial) boundary")
        return self.profile


def _conformal_residual(inp: Inputs, s: Settings, tol: float) -> CheckReport:
    u = inp.boundary_data()
    cf = build_conformal_factor(u, max(DEFAULT_TAYLOR_MODES, 2 * u.n_max))
    res = residual_check(cf, u, disk_test_points(s.nr, s.ntheta))
    return CheckReport("conformal_residual", res, 0.0, -res, tol, {"grid": [s.nr, s.ntheta], "n_max": u.n_max})


def _nehari(inp: Inputs, s: Settings, tol: float) -> CheckReport:
    u = inp.boundary_data()
    return nehari_check(u, m_max=max(2 * s.nr, 2 * u.n_max), tolerance=tol)


def _bol(inp: Inputs, s: Settings, tol: float) -> CheckReport:
    lam = float(inp.data["lambda"])
    grid = PolarGrid(s.nr, s.ntheta)
    if inp.profile is None:
        u = inp.boundary_data()
        field = grid.field(poisson_extend(u), "u")
        return bol_check(field, u, lam, tol)
    inp.profile.check_domain(1.0)
    u_field, v, h_const = radial_fields(inp.profile, grid)
    report = bol_check(u_field, h_const, lam, tol)
    if lam <= 0:
        return report
    try:
        diff = level_set_report(u_field, v, h_const, lam, s.nlevels)
    except DegenerateFieldError:
        return report
    meta = dict(report.metadata, differential_slack=diff.slack, differential_pass=diff.passed)
    return replace(report, metadata=meta)


def _measure(inp: Inputs):
    spec = inp.data["measure"]
    return measure_from_atoms(spec.get("atoms", []), spec.get("alpha0", 0.0))


def _pole(inp: Inputs) -> complex:
    x, y = inp.data["pole"]
    return complex(x, y)


def _huber_point(inp: Inputs, s: Settings, tol: float) -> CheckReport:
    return huber_point_check(inp.boundary_data(), float(inp.data["alpha"]), _pole(inp), s.nr, s.ntheta, tol)


def _huber_measure(inp: Inputs, s: Settings, tol: float) -> CheckReport:
    return huber_measure_check(inp.boundary_data(), _measure(inp), s.nr, s.ntheta, tol)


def _huber_superlevel(inp: Inputs, s: Settings, tol: float) -> CheckReport:
    u = inp.boundary_data()
    if u.n_max > 0 and np.any(np.abs(np.delete(u.coeffs, u.n_max)) > 0):
        raise UnsupportedScenarioError("superlevel Huber check needs a constant boundary")
    return huber_superlevel_check(_measure(inp), float(inp.data.get("radius", 1.0)), float(u[0].real), s.nr, tol)


def _alexandrov(inp: Inputs, s: Settings, tol: float) -> CheckReport:
    sc = CurvatureScenario.build(inp.radial("alexandrov"), float(inp.data["K0"]), PolarGrid(s.nr, s.ntheta))
    return alexandrov_check(sc, s.nlevels, tol)


def _green_bound(inp: Inputs, s: Settings, tol: float) -> CheckReport:
    h = inp.boundary_data() if "boundary" in inp.data else None
    return green_level_bound_check(_pole(inp), h, s.nlevels, s.nr, s.ntheta, tol)


def _gauss_bonnet(inp: Inputs, s: Settings, tol: float) -> CheckReport:
    return gauss_bonnet_check(inp.radial("gauss_bonnet"), float(inp.data["r0"]), tol, panels=max(16, s.nr // 2))


def _fiala(inp: Inputs, s: Settings, tol: float) -> CheckReport:
    trace = parallel_flow(
        inp.radial("fiala"),
        float(inp.data["r0"]),
        float(inp.data.get("p_max", 0.5)),
        inp.data.get("direction", "outward"),
        float(inp.data.get("step", DEFAULT_STEP * DEFAULT_GRID["nr"] / s.nr)),
    )
    return fiala_ineq_check(trace, tol)


RUNNERS: dict[str, Callable[[Inputs, Settings, float], CheckReport]] = {
    "nehari": _nehari,
    "bol": _bol,
    "huber_point": _huber_point,
    "huber_measure": _huber_measure,
    "huber_superlevel": _huber_superlevel,
    "alexandrov": _alexandrov,
    "green_bound": _green_bound,
    "fiala": _fiala,
    "gauss_bonnet": _gauss_bonnet,
    "conformal_residual": _conformal_residual,
}


@dataclass
class ReportDocument:
    version: str
    scenario: Any
    settings: dict
    checks: list[CheckReport] = field(default_factory=list)
    refinement: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "scenario": self.scenario,
            "settings": self.settings,
            "checks": [c.to_dict() for c in self.checks],
            "refinement": self.refinement,
            "wall_time": self.wall_time,
            "pass": self.passed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReportDocument":
        return cls(
            version=data["version"],
            scenario=data["scenario"],
            settings=data["settings"],
            checks=[CheckReport.from_dict(c) for c in data["checks"]],
            refinement=data["refinement"],
            wall_time=data["wall_time"],
        )


def _refinement(name: str, full: CheckReport, half_settings: Settings, inp: Inputs, tol: float) -> dict:
    entry = {"name": name, "half_grid": [half_settings.nr, half_settings.ntheta, half_settings.nlevels]}
    try:
        half = RUNNERS[name](inp, half_settings, tol)
    except IsoperimError as exc:
        entry["error"] = str(exc)
        return entry
    for attr in ("lhs", "rhs", "slack"):
        entry[f"delta_{attr}"] = getattr(full, attr) - getattr(half, attr)
    return entry


def run(data: dict, settings: Settings | None = None) -> ReportDocument:
    """Run every check named in a validated scenario."""
    settings = Settings.resolve(data) if settings is None else settings
    start = time.perf_counter()
    inp = Inputs.build(data, settings.seed)
    doc = ReportDocument(__version__, data, settings.to_dict())
    half = settings.halved()
    for name in check_names(data):
        tol = settings.tolerance_for(name)
        report = RUNNERS[name](inp, settings, tol)
        doc.checks.append(report)
        doc.refinement.append(_refinement(name, report, half, inp, tol))
    doc.wall_time = time.perf_counter() - start
    return doc


def run_scenario(path: str | Path, overrides: dict | None = None) -> ReportDocument:
    data = load(path)
    return run(data, Settings.resolve(data, overrides))
