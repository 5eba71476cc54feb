"""Superlevel-set distribution functions and the Bol inequality.

For a field ``v`` and a positive density ``w`` on the disk,
``a(mu) = int_{v > mu} w`` is non-increasing in ``mu``.  Its inverse
``mu(a)``, the companion ``H(a) = lambda int_{v > mu(a)} e^u`` and the
auxiliary ``P(a) = a H' - H + H^2 / (2c)`` (``c = 4 pi`` in the Bol case)
are all sampled on the same level grid.

Masses are accumulated from node indicators.  The default ``"midpoint"``
method assigns half of each tie group's weight to its own level and joins
those knots with a monotone cubic, which removes the staircase of the raw
node sums; ``"strict"`` returns the raw ``v > mu`` sums.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from .errors import DegenerateFieldError, InconsistencyError, InvalidInputError
from .fourier import FourierCoeffs
from .geometry import boundary_length
from .quadrature import PolarGrid, ScalarField
from .radial import RadialProfile, bubble
from .report import CheckReport

BOL_CONSTANT = 4 * np.pi
FD_TOLERANCE = 1e-3
METHODS = ("midpoint", "strict")


def build_bubble_field(beta: float, grid: PolarGrid) -> tuple[ScalarField, ScalarField, float]:
    """Curvature-one bubble ``u``, its zero-boundary part ``v = u - u(1)``, and ``u(1)``."""
    prof = bubble(beta)
    h_const = float(prof(1.0))
    u = grid.radial_field(prof, "u")
    v = grid.radial_field(lambda r: 2 * np.log1p(beta * beta) - 2 * np.log1p(beta * beta * r * r), "v")
    return u, v, h_const


def radial_fields(profile: RadialProfile, grid: PolarGrid) -> tuple[ScalarField, ScalarField, float]:
    """Same split as :func:`build_bubble_field` for any radial profile."""
    profile.check_domain(1.0)
    h_const = float(profile(1.0))
    u = grid.radial_field(profile, "u")
    v = u.map(lambda x: x - h_const, "v")
    return u, v, h_const


class _SuperlevelSums:
    """Cumulative superlevel integrals of several densities over one field."""

    def __init__(self, v: ScalarField):
        self.values, self.inverse = np.unique(v.values.ravel(), return_inverse=True)
        if self.values.size < 2:
            raise DegenerateFieldError("field is constant; its distribution is a single step")
        self.weights = v.grid.weights.ravel()

    def strict(self, density: np.ndarray, levels: np.ndarray) -> np.ndarray:
        mass = np.bincount(self.inverse, weights=density.ravel() * self.weights)
        above = np.concatenate([np.cumsum(mass[::-1])[::-1], [0.0]])
        # first tie group strictly above each level
        idx = np.searchsorted(self.values, levels, side="right")
        return above[idx]

    def knots(self, density: np.ndarray) -> tuple[np.ndarray, float]:
        mass = np.bincount(self.inverse, weights=density.ravel() * self.weights)
        total = float(np.sum(mass))
        above = np.cumsum(mass[::-1])[::-1] - mass
        return above + mass / 2, total

    def midpoint(self, density: np.ndarray, levels: np.ndarray) -> np.ndarray:
        knots, total = self.knots(density)
        curve = PchipInterpolator(self.values, knots, extrapolate=False)
        out = curve(levels)
        out = np.where(levels < self.values[0], total, out)
        return np.where(levels > self.values[-1], 0.0, out)

    def evaluate(self, density: np.ndarray, levels: np.ndarray, method: str) -> np.ndarray:
        if method == "strict":
            return self.strict(density, levels)
        return self.midpoint(density, levels)


@dataclass(frozen=True, eq=False)
class DistributionProfile:
    """``a(mu_k)`` on strictly increasing levels ``mu_k``."""

    levels: np.ndarray
    masses: np.ndarray
    total: float
    weight_tag: str
    method: str
    field: ScalarField
    weight: ScalarField

    def mass_at(self, mu) -> np.ndarray:
        """Evaluate ``a(mu)`` at arbitrary levels with the profile's method."""
        mu = np.atleast_1d(np.asarray(mu, dtype=float))
        return _SuperlevelSums(self.field).evaluate(self.weight.values, mu, self.method)

    @property
    def spacing(self) -> float:
        return float(self.levels[1] - self.levels[0])


def distribution(
    v: ScalarField,
    weight: ScalarField,
    nlevels: int = 64,
    method: str = "midpoint",
) -> DistributionProfile:
    """Superlevel masses of ``v`` weighted by ``weight`` on ``nlevels`` equispaced levels.

    Levels span ``[min v, max v]`` over the grid nodes.
    """
    if nlevels < 8:
        raise InvalidInputError(f"nlevels must be >= 8, got {nlevels}")
    if method not in METHODS:
        raise InvalidInputError(f"unknown method {method!r}; expected one of {METHODS}")
    if np.any(weight.values <= 0):
        raise InvalidInputError("weight must be positive")
    sums = _SuperlevelSums(v)
    levels = np.linspace(sums.values[0], sums.values[-1], nlevels)
    masses = sums.evaluate(weight.values, levels, method)
    if np.any(np.diff(masses) > 0):
        raise InconsistencyError("distribution function increased with the level")
    return DistributionProfile(
        levels=levels,
        masses=masses,
        total=weight.integrate(),
        weight_tag=weight.name or "weight",
        method=method,
        field=v,
        weight=weight,
    )


@dataclass(frozen=True, eq=False)
class MonotoneInverse:
    """Piecewise-linear ``mu(a)`` built from a decreasing profile."""

    masses: np.ndarray  # increasing
    levels: np.ndarray  # matching, decreasing

    def __call__(self, a):
        return np.interp(a, self.masses, self.levels)


def mu_of_a(profile: DistributionProfile) -> MonotoneInverse:
    """Inverse of the distribution function; clamps outside the sampled masses."""
    a = profile.masses
    if np.any(np.diff(a) > 0):
        raise InconsistencyError("profile masses are not non-increasing")
    # drop plateaus, keeping the lowest level of each
    keep = np.concatenate([[True], np.diff(a) < 0])
    a, mu = a[keep], profile.levels[keep]
    if a.size < 2:
        raise InconsistencyError("profile has fewer than two distinct masses")
    return MonotoneInverse(a[::-1].copy(), mu[::-1].copy())


@dataclass(frozen=True, eq=False)
class LevelFunction:
    """A quantity sampled along a distribution profile (one value per level)."""

    a: np.ndarray
    values: np.ndarray
    levels: np.ndarray
    end_value: float

    def at(self, a) -> np.ndarray:
        """Linear interpolation anchored by ``F(0) = 0`` and ``F(total) = end_value``."""
        order = np.argsort(self.a)
        xs = np.concatenate([[0.0], self.a[order], [np.inf]])
        ys = np.concatenate([[0.0], self.values[order], [self.end_value]])
        return np.interp(a, xs[:-1], ys[:-1], right=self.end_value)


def H_of_a(u_field: ScalarField, v: ScalarField, lam: float, profile: DistributionProfile) -> LevelFunction:
    """``H(a) = lambda int_{v > mu(a)} e^u`` on the profile's levels."""
    if lam < 0:
        raise InvalidInputError(f"lambda must be non-negative, got {lam}")
    density = lam * np.exp(u_field.values)
    if lam == 0:
        values = np.zeros_like(profile.levels)
    else:
        values = _SuperlevelSums(v).evaluate(density, profile.levels, profile.method)
    return LevelFunction(
        a=profile.masses,
        values=values,
        levels=profile.levels,
        end_value=float(u_field.grid.integrate(density)),
    )


def _interior(n: int) -> np.ndarray:
    # two samples trimmed at each end: mu(a) is restricted to regular values
    return np.arange(2, n - 2)


def diff_ineq_check(
    profile: DistributionProfile,
    H: LevelFunction,
    constant: float = BOL_CONSTANT,
    tolerance: float = FD_TOLERANCE,
    name: str = "level_set_differential",
) -> CheckReport:
    """``-dmu/da <= H(a) / (constant * a)`` at interior samples.

    ``lhs`` is the largest residual ``-dmu/da - H/(constant a)``; ``rhs`` is 0.
    """
    a, mu = profile.masses, profile.levels
    idx = _interior(len(a))
    if idx.size == 0:
        raise InvalidInputError("profile too short for interior differences")
    with np.errstate(divide="ignore", invalid="ignore"):
        dmu_da = (mu[idx + 1] - mu[idx - 1]) / (a[idx + 1] - a[idx - 1])
        residual = -dmu_da - H.values[idx] / (constant * a[idx])
    if not np.all(np.isfinite(residual)):
        raise InconsistencyError("flat stretch in the profile; refine the grid or reduce nlevels")
    worst = float(np.max(residual))
    return CheckReport(
        name=name,
        lhs=worst,
        rhs=0.0,
        slack=-worst,
        tolerance=tolerance,
        metadata={
            "constant": constant,
            "samples": int(idx.size),
            "a": a[idx],
            "slack_per_sample": -residual,
        },
    )


@dataclass(frozen=True, eq=False)
class PProfile:
    a: np.ndarray  # increasing
    P: np.ndarray
    max_decrease: float
    tolerance: float

    @property
    def monotone(self) -> bool:
        return self.max_decrease <= self.tolerance


def P_profile(
    profile: DistributionProfile,
    H: LevelFunction,
    constant: float = BOL_CONSTANT,
    rel_tol: float = 1e-3,
    abs_tol: float = FD_TOLERANCE,
) -> PProfile:
    """``P(a) = a H'(a) - H(a) + H(a)^2 / (2 constant)`` with centred ``H'``.

    Monotonicity is judged within ``max(rel_tol * max|P|, abs_tol)``.
    """
    a, Hv = profile.masses, H.values
    idx = np.arange(1, len(a) - 1)
    dH = (Hv[idx + 1] - Hv[idx - 1]) / (a[idx + 1] - a[idx - 1])
    P = a[idx] * dH - Hv[idx] + Hv[idx] ** 2 / (2 * constant)
    keep = slice(1, -1)  # same trimmed interior as diff_ineq_check
    a_in, P_in = a[idx][keep][::-1], P[keep][::-1]
    drops = -np.diff(P_in)
    max_drop = float(drops.max()) if drops.size else 0.0
    tol = max(rel_tol * float(np.max(np.abs(P_in), initial=0.0)), abs_tol)
    return PProfile(a=a_in.copy(), P=P_in.copy(), max_decrease=max_drop, tolerance=tol)


def H_derivative(profile: DistributionProfile, H: LevelFunction) -> tuple[np.ndarray, np.ndarray]:
    """Centred ``dH/da`` at interior samples, with the matching levels."""
    a, Hv = profile.masses, H.values
    idx = _interior(len(a))
    return (Hv[idx + 1] - Hv[idx - 1]) / (a[idx + 1] - a[idx - 1]), profile.levels[idx]


def _boundary_length_of(u_boundary) -> float:
    if isinstance(u_boundary, FourierCoeffs):
        return boundary_length(u_boundary)
    return boundary_length(FourierCoeffs.constant(float(u_boundary)))


def bol_rhs(constant: float, lam: float, mass: float) -> float:
    """``(constant - (lambda/2) M) M``; shared so reductions agree to the bit."""
    return (constant - (lam / 2) * mass) * mass


def bol_check(
    u_field: ScalarField,
    u_boundary: FourierCoeffs | float,
    lam: float,
    tolerance: float = 1e-8,
) -> CheckReport:
    """``(int e^{u/2} dsigma)^2 >= (4 pi - (lambda/2) M) M`` with ``M = int e^u``.

    ``slack = lhs - rhs``.
    """
    if lam < 0:
        raise InvalidInputError(f"lambda must be non-negative, got {lam}")
    length = _boundary_length_of(u_boundary)
    mass = u_field.grid.integrate(np.exp(u_field.values))
    lhs = length**2
    rhs = bol_rhs(BOL_CONSTANT, lam, mass)
    return CheckReport(
        name="bol",
        lhs=lhs,
        rhs=rhs,
        slack=lhs - rhs,
        tolerance=tolerance,
        metadata={
            "lambda": lam,
            "area": mass,
            "length": length,
            "grid": [u_field.grid.nr, u_field.grid.ntheta],
        },
    )


def level_set_report(
    u_field: ScalarField,
    v: ScalarField,
    h_const: float,
    lam: float,
    nlevels: int,
    constant: float = BOL_CONSTANT,
    tolerance: float = FD_TOLERANCE,
    name: str = "level_set_differential",
) -> CheckReport:
    """Differential inequality plus ``P`` monotonicity for a radial split ``u = h + v``."""
    weight = ScalarField(v.grid, np.full(v.values.shape, np.exp(h_const)), "e^h")
    profile = distribution(v, weight, nlevels)
    H = H_of_a(u_field, v, lam, profile)
    report = diff_ineq_check(profile, H, constant, tolerance, name=name)
    P = P_profile(profile, H, constant)
    meta = dict(report.metadata)
    meta.update({"P_max_abs": float(np.max(np.abs(P.P))), "P_max_decrease": P.max_decrease, "P_monotone": P.monotone})
    meta.pop("a")
    return CheckReport(report.name, report.lhs, report.rhs, report.slack, report.tolerance, meta)


def radial_superlevel_radius(profile: RadialProfile, mu: float) -> float:
    """Radius of ``{u - u(1) > mu}`` for a profile decreasing in ``r``."""
    profile.check_domain(1.0)
    h_const = float(profile(1.0))

    def gap(r):
        return float(profile(r)) - h_const - mu

    if gap(0.0) <= 0:
        raise InvalidInputError(f"level {mu} is above the field maximum")
    if gap(1.0) >= 0:
        return 1.0
    return float(brentq(gap, 0.0, 1.0, xtol=1e-15, rtol=1e-15))
