"""Harmonic extension of boundary data and the conformal map with |g'|^2 = e^h.

Normalization: ``g(0) = 0`` and ``g'(0) = exp(c_0 / 2) > 0``, so the map is
unique (the underlying problem fixes ``g`` only up to rotation and an
additive constant).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .fourier import (
    DEFAULT_TAYLOR_MODES,
    FourierCoeffs,
    TaylorCoeffs,
    series_exp,
)

HERMITIAN_TOL = 1e-12


def _require_real_data(u: FourierCoeffs) -> FourierCoeffs:
    if not u.is_hermitian(HERMITIAN_TOL):
        raise InvalidInputError(
            f"boundary data must be real (Hermitian spectrum); defect {u.hermitian_defect():.3e}"
        )
    return u


@dataclass(frozen=True, eq=False)
class HarmonicField:
    """Harmonic function on the closed unit disk with Fourier boundary data.

    Evaluates ``h(r, theta) = sum_n c_n r^|n| exp(i n theta)`` directly from
    the boundary spectrum.
    """

    boundary: FourierCoeffs

    def __call__(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        c = self.boundary
        r = np.abs(z)
        # unit phase; angle is irrelevant at r = 0
        phase = np.where(r > 0, z / np.where(r > 0, r, 1.0), 1.0)
        total = np.full(z.shape, c[0].real)
        power = np.ones(z.shape, dtype=complex)
        for n in range(1, c.n_max + 1):
            power = power * r * phase
            total = total + 2.0 * np.real(c[n] * power)
        return total

    @property
    def mean_value(self) -> float:
        return self.boundary[0].real

    def on_circle(self, count: int) -> np.ndarray:
        theta = 2 * np.pi * np.arange(count) / count
        return self(np.exp(1j * theta))


@dataclass(frozen=True, eq=False)
class ConformalFactor:
    """Holomorphic completion ``F`` (``Re F = h``), ``g' = exp(F/2)`` and ``g``."""

    F: TaylorCoeffs
    g_prime: TaylorCoeffs
    g: TaylorCoeffs

    def metric_density(self, z) -> np.ndarray:
        """``|g'(z)|^2``, which equals ``e^{h(z)}``."""
        return np.abs(self.g_prime(z)) ** 2


def poisson_extend(u: FourierCoeffs) -> HarmonicField:
    """Harmonic extension of real boundary data ``u``."""
    return HarmonicField(_require_real_data(u))


def holomorphic_completion(u: FourierCoeffs) -> TaylorCoeffs:
    """Holomorphic ``F`` with ``Re F`` the harmonic extension of ``u`` and ``Im F(0) = 0``."""
    u = _require_real_data(u)
    coeffs = np.empty(u.n_max + 1, dtype=complex)
    coeffs[0] = u[0].real
    coeffs[1:] = 2.0 * u.coeffs[u.n_max + 1 :]
    return TaylorCoeffs(u.n_max, coeffs)


def build_conformal_factor(u: FourierCoeffs, m_max: int = DEFAULT_TAYLOR_MODES) -> ConformalFactor:
    """Solve ``|g'|^2 = e^h`` on the disk by power series.

    Parameters
    ----------
    u : FourierCoeffs
        Real boundary data of ``h``.
    m_max : int
        Truncation degree of ``g'``; must be at least ``2 * u.n_max``.
    """
    if m_max < 2 * u.n_max:
        raise InvalidInputError(f"m_max={m_max} below 2*n_max={2 * u.n_max}")
    F = holomorphic_completion(u)
    g_prime = series_exp(F.scaled(0.5), m_max)
    return ConformalFactor(F=F, g_prime=g_prime, g=g_prime.primitive(0j))


def residual_check(cf: ConformalFactor, u: FourierCoeffs, points) -> float:
    """Max of ``|2 log|g'(z)| - h(z)|`` over ``points`` in the closed disk."""
    points = np.asarray(points, dtype=complex)
    if np.any(np.abs(points) > 1.0 + 1e-14):
        raise InvalidInputError("residual points must lie in the closed unit disk")
    h = poisson_extend(u)(points)
    lhs = 2.0 * np.log(np.abs(cf.g_prime(points)))
    return float(np.max(np.abs(lhs - h)))


def disk_test_points(nr: int, ntheta: int) -> np.ndarray:
    """Tensor grid on the closed disk: radii ``i/(nr-1)``, equispaced angles."""
    r = np.linspace(0.0, 1.0, nr)
    theta = 2 * np.pi * np.arange(ntheta) / ntheta
    return np.multiply.outer(r, np.exp(1j * theta))
