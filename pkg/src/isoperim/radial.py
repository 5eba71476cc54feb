"""Radial conformal factors ``u(r)`` with analytic derivatives.

The metric is ``e^{u(r)} |dz|^2``; its Gauss curvature is
``K = -(1/2) e^{-u} (u'' + u'/r)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True)
class RadialProfile:
    """A radial conformal factor and its first two derivatives.

    ``value``, ``d1`` and ``d2`` take arrays of radii.  ``r_max`` bounds the
    domain of definition (``inf`` for entire profiles).
    """

    name: str
    value: Callable[[np.ndarray], np.ndarray]
    d1: Callable[[np.ndarray], np.ndarray]
    d2: Callable[[np.ndarray], np.ndarray]
    r_max: float = np.inf
    params: dict = field(default_factory=dict)

    def __call__(self, r):
        return self.value(np.asarray(r, dtype=float))

    def check_domain(self, r_outer: float) -> None:
        if not r_outer < self.r_max:
            raise InvalidInputError(
                f"profile {self.name!r} is only defined for r < {self.r_max}, requested {r_outer}"
            )

    def laplacian(self, r) -> np.ndarray:
        """``u'' + u'/r`` with the limit ``2 u''(0)`` at the origin."""
        r = np.asarray(r, dtype=float)
        safe = np.where(r > 0, r, 1.0)
        return np.where(r > 0, self.d2(r) + self.d1(r) / safe, 2.0 * self.d2(r))


def flat(c: float = 0.0) -> RadialProfile:
    return RadialProfile(
        "flat",
        lambda r: np.full(np.shape(r), float(c)),
        lambda r: np.zeros(np.shape(r)),
        lambda r: np.zeros(np.shape(r)),
        params={"c": c},
    )


def bubble(beta: float = 1.0) -> RadialProfile:
    """Curvature-one factor ``log(4 beta^2 / (1 + beta^2 r^2)^2)``."""
    if beta <= 0:
        raise InvalidInputError(f"beta must be positive, got {beta}")
    b2 = beta * beta

    def value(r):
        return np.log(4 * b2) - 2 * np.log1p(b2 * r * r)

    def d1(r):
        return -4 * b2 * r / (1 + b2 * r * r)

    def d2(r):
        s = b2 * r * r
        return -4 * b2 * (1 - s) / (1 + s) ** 2

    return RadialProfile("bubble", value, d1, d2, params={"beta": beta})


def sphere() -> RadialProfile:
    """Round unit sphere in stereographic coordinates (the ``beta = 1`` bubble)."""
    prof = bubble(1.0)
    return RadialProfile("sphere", prof.value, prof.d1, prof.d2, params={})


def hyperbolic() -> RadialProfile:
    """Poincare disk ``log(4 / (1 - r^2)^2)``, curvature ``-1``."""

    def value(r):
        return np.log(4.0) - 2 * np.log1p(-r * r)

    def d1(r):
        return 4 * r / (1 - r * r)

    def d2(r):
        s = r * r
        return 4 * (1 + s) / (1 - s) ** 2

    return RadialProfile("hyperbolic", value, d1, d2, r_max=1.0, params={})


def paraboloid(c: float = 1.0) -> RadialProfile:
    """``c (1 - r^2)``; a convenient non-extremal test field."""
    return RadialProfile(
        "paraboloid",
        lambda r: c * (1 - np.asarray(r) ** 2),
        lambda r: -2 * c * np.asarray(r),
        lambda r: np.full(np.shape(r), -2.0 * c),
        params={"c": c},
    )


PRESETS: dict[str, Callable[..., RadialProfile]] = {
    "flat": flat,
    "bubble": bubble,
    "sphere": sphere,
    "hyperbolic": hyperbolic,
    "paraboloid": paraboloid,
}


def curvature_from_u(profile: RadialProfile, r) -> np.ndarray:
    """Gauss curvature ``-(1/2) e^{-u} (u'' + u'/r)`` of ``e^u |dz|^2``."""
    r = np.asarray(r, dtype=float)
    return -0.5 * np.exp(-profile.value(r)) * profile.laplacian(r)


def geodesic_curvature(profile: RadialProfile, r) -> np.ndarray:
    """Geodesic curvature of the circle of radius ``r``, normal pointing outward."""
    r = np.asarray(r, dtype=float)
    return np.exp(-profile.value(r) / 2) * (1.0 / r + profile.d1(r) / 2)
