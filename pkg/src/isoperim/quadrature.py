"""Quadrature on the unit disk.

Tensor rules: Gauss-Legendre in the radius, trapezoid in the angle.  Point
singularities of the form ``|x - y|^(-beta)`` are handled with Gauss-Jacobi
rules carrying the exact local exponent, centred on the singular point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.special import roots_jacobi

from .errors import InvalidInputError


@lru_cache(maxsize=64)
def _gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=256)
def _gauss_jacobi_unit(n: int, exponent: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on [0, 1] for ``int_0^1 t^exponent f(t) dt``."""
    x, w = roots_jacobi(n, 0.0, exponent)
    t = (x + 1.0) / 2.0
    w = w / 2.0 ** (exponent + 1.0)
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


@dataclass(frozen=True, eq=False)
class PolarGrid:
    """Tensor quadrature on ``B_1``: ``nr`` Gauss-Legendre radii by ``ntheta`` angles.

    ``weights[i, j]`` already includes the Jacobian ``r``; they sum to ``pi``.
    """

    nr: int
    ntheta: int

    def __post_init__(self):
        if self.nr < 1 or self.ntheta < 1:
            raise InvalidInputError("grid sizes must be positive")
        x, w = _gauss_legendre(self.nr)
        r = (x + 1.0) / 2.0
        theta = 2 * np.pi * np.arange(self.ntheta) / self.ntheta
        weights = np.outer(w / 2.0 * r, np.full(self.ntheta, 2 * np.pi / self.ntheta))
        for name, arr in (("r", r), ("theta", theta), ("weights", weights)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        points = np.multiply.outer(r, np.exp(1j * theta))
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    @property
    def radii(self) -> np.ndarray:
        return np.broadcast_to(self.r[:, None], (self.nr, self.ntheta))

    @property
    def cell_area(self) -> float:
        """Largest single node weight."""
        return float(self.weights.max())

    def integrate(self, values) -> float:
        return float(np.sum(np.asarray(values) * self.weights))

    def field(self, fn: Callable, name: str = "") -> "ScalarField":
        """Sample ``fn(z)`` (complex argument) on the nodes."""
        return ScalarField(self, np.real(fn(self.points)), name)

    def radial_field(self, fn: Callable, name: str = "") -> "ScalarField":
        """Sample a radial profile ``fn(r)``."""
        values = np.broadcast_to(np.asarray(fn(self.r), dtype=float)[:, None], (self.nr, self.ntheta))
        return ScalarField(self, values, name)

    def halved(self) -> "PolarGrid":
        return PolarGrid(max(self.nr // 2, 2), max(self.ntheta // 2, 4))


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Real values sampled on the nodes of a :class:`PolarGrid`."""

    grid: PolarGrid
    values: np.ndarray
    name: str = ""

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (self.grid.nr, self.grid.ntheta):
            raise InvalidInputError(
                f"field shape {values.shape} does not match grid {(self.grid.nr, self.grid.ntheta)}"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidInputError(f"field {self.name!r} has non-finite samples")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def map(self, fn: Callable, name: str = "") -> "ScalarField":
        return ScalarField(self.grid, fn(self.values), name or self.name)

    def integrate(self) -> float:
        return self.grid.integrate(self.values)

    @property
    def is_radial(self) -> bool:
        return bool(np.all(self.values == self.values[:, :1]))


def integrate_disk(fn: Callable, nr: int, ntheta: int, center: complex = 0j, radius: float = 1.0) -> float:
    """Integrate ``fn(z)`` over the disk ``|z - center| < radius``."""
    x, w = _gauss_legendre(nr)
    s = (x + 1.0) / 2.0
    theta = 2 * np.pi * np.arange(ntheta) / ntheta
    z = center + radius * np.multiply.outer(s, np.exp(1j * theta))
    vals = np.real(fn(z))
    return float(radius**2 * np.sum((w / 2.0 * s) @ vals) * (2 * np.pi / ntheta))


def integrate_radial_power(smooth: Callable, exponent: float, radius: float, n: int = 64) -> float:
    """``int_0^radius r^exponent smooth(r) dr`` with the power absorbed in the rule."""
    if exponent <= -1.0:
        raise InvalidInputError(f"r^{exponent} is not integrable at 0")
    t, w = _gauss_jacobi_unit(n, float(exponent))
    return float(radius ** (exponent + 1.0) * np.dot(w, smooth(radius * t)))


@dataclass(frozen=True)
class PointSingularity:
    """Integrand factor behaving like ``|x - location|^(-order)`` near ``location``."""

    location: complex
    order: float


def _bump(t: np.ndarray, inner: float = 0.25) -> np.ndarray:
    """C-infinity cutoff: 1 on ``[0, inner]``, 0 on ``[1, inf)``."""
    t = np.asarray(t, dtype=float)

    def f(s):
        return np.where(s > 0, np.exp(-1.0 / np.where(s > 0, s, 1.0)), 0.0)

    a = f(1.0 - t)
    b = f(t - inner)
    return a / (a + b)


def integrate_singular(
    fn: Callable,
    singularities: Sequence[PointSingularity],
    nr: int = 128,
    ntheta: int = 256,
) -> float:
    """Integrate ``fn`` over ``B_1`` where ``fn`` has integrable point singularities.

    One singular point: polar coordinates centred on it, reaching the unit
    circle along each ray, with a Gauss-Jacobi radial rule of the exact
    local exponent.  Several points: a smooth partition of unity isolates
    each point in its own disk, the remainder is smooth and goes on the
    ordinary polar grid.
    """
    sings = [s for s in singularities if s.order != 0.0]
    if not sings:
        grid = PolarGrid(nr, ntheta)
        return grid.integrate(np.real(fn(grid.points)))
    for s in sings:
        if abs(s.location) >= 1.0:
            raise InvalidInputError(f"singular point {s.location} is not interior")
        if s.order >= 2.0:
            raise InvalidInputError(f"|x|^-{s.order} is not integrable in the plane")
    if len(sings) == 1:
        return _integrate_star(fn, sings[0], nr, ntheta)
    return _integrate_partitioned(fn, sings, nr, ntheta)


def _integrate_star(fn, sing: PointSingularity, nr: int, ntheta: int) -> float:
    y = sing.location
    phi = 2 * np.pi * np.arange(ntheta) / ntheta
    e = np.exp(1j * phi)
    b = np.real(np.conj(e) * y)
    reach = -b + np.sqrt(b * b + 1.0 - abs(y) ** 2)
    exponent = 1.0 - sing.order
    t, w = _gauss_jacobi_unit(nr, exponent)
    rho = np.multiply.outer(t, reach)
    z = y + rho * e
    # fn = |x-y|^-order * smooth; the rule carries rho^(1-order)
    smooth = np.real(fn(z)) * rho**sing.order
    per_ray = reach ** (exponent + 1.0) * (w @ smooth)
    return float(np.sum(per_ray) * (2 * np.pi / ntheta))


def _integrate_partitioned(fn, sings, nr: int, ntheta: int) -> float:
    locs = np.array([s.location for s in sings])
    radii = []
    for k, y in enumerate(locs):
        others = np.delete(locs, k)
        gap = np.min(np.abs(others - y)) / 2.0 if others.size else np.inf
        radii.append(0.9 * min(1.0 - abs(y), gap))
    radii = np.array(radii)

    def cutoff(z):
        total = np.zeros(np.shape(z))
        for y, rad in zip(locs, radii):
            total = total + _bump(np.abs(z - y) / rad)
        return total

    # the cutoff transition must be resolved by the remainder grid
    refine = max(1.0, 0.3 / float(radii.min()))
    grid = PolarGrid(int(np.ceil(nr * refine)), int(np.ceil(ntheta * refine)))
    pts = grid.points
    mask = cutoff(pts)
    # remainder vanishes where the cutoff is 1, so skip evaluating fn there
    live = mask < 1.0
    remainder = np.zeros(pts.shape)
    remainder[live] = np.real(fn(pts[live])) * (1.0 - mask[live])
    total = grid.integrate(remainder)

    phi = 2 * np.pi * np.arange(ntheta) / ntheta
    e = np.exp(1j * phi)
    for s, rad in zip(sings, radii):
        exponent = 1.0 - s.order
        t, w = _gauss_jacobi_unit(nr, exponent)
        rho = np.multiply.outer(t * rad, np.ones(ntheta))
        z = s.location + rho * e
        smooth = np.real(fn(z)) * rho**s.order * _bump(rho / rad)
        total += float(rad ** (exponent + 1.0) * np.sum(w @ smooth) * (2 * np.pi / ntheta))
    return total
