"""Area and length of conformal images of the disk, and the Nehari check."""

from __future__ import annotations

import numpy as np

from .errors import InconsistencyError, InvalidInputError
from .fourier import (
    DEFAULT_TAYLOR_MODES,
    FourierCoeffs,
    TaylorCoeffs,
    coeffs_to_samples,
)
from .harmonic import _require_real_data, build_conformal_factor
from .report import CheckReport

DEFAULT_TOLERANCE = 1e-8


def area_series(g: TaylorCoeffs) -> float:
    """Area ``int_{B_1} |g'|^2 = pi sum_{n>=1} n |a_n|^2`` (``a_0`` unused)."""
    n = np.arange(1, g.m_max + 1)
    return float(np.pi * np.sum(n * np.abs(g.coeffs[1:]) ** 2))


def area_stokes(g_boundary: FourierCoeffs) -> float:
    """Area enclosed by ``g(dB_1)`` from the contour integral of ``conj(g) dg``.

    Evaluates ``(1/4i) int (conj(g) g_theta - g conj(g_theta)) dtheta`` with
    the trapezoid rule on ``4 * bandwidth`` nodes.
    """
    scale = float(np.max(np.abs(g_boundary.coeffs))) or 1.0
    negative = np.abs(g_boundary.coeffs[: g_boundary.n_max])
    if negative.size and negative.max() > 1e-8 * scale:
        raise InconsistencyError("boundary trace has negative frequencies; g is not holomorphic")
    count = max(4 * g_boundary.n_max, 8)
    g = coeffs_to_samples(g_boundary, count)
    dg = coeffs_to_samples(g_boundary.derivative(), count)
    integrand = np.conj(g) * dg - g * np.conj(dg)
    value = (2 * np.pi / count) * np.sum(integrand) / 4j
    if abs(value.imag) > 1e-8 * max(1.0, abs(value.real)):
        raise InconsistencyError(f"contour area has imaginary part {value.imag:.3e}")
    return float(value.real)


def _circle_nodes(u: FourierCoeffs) -> int:
    # e^{u/2} is not band-limited; oversample the data bandwidth
    return max(256, 16 * u.n_max + 1)


def boundary_length(u: FourierCoeffs) -> float:
    """Conformal boundary length ``int_0^{2pi} exp(u(theta)/2) dtheta``."""
    u = _require_real_data(u)
    count = _circle_nodes(u)
    values = np.real(coeffs_to_samples(u, count))
    return float((2 * np.pi / count) * np.sum(np.exp(values / 2)))


def nehari_check(
    u: FourierCoeffs,
    m_max: int | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """``4 pi Area <= Length^2`` for ``|g'|^2 = e^h``; slack is ``rhs - lhs``."""
    m_max = max(DEFAULT_TAYLOR_MODES, 2 * u.n_max) if m_max is None else m_max
    cf = build_conformal_factor(u, m_max)
    area = area_series(cf.g)
    lhs = 4 * np.pi * area
    rhs = boundary_length(u) ** 2
    return CheckReport(
        name="nehari",
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        tolerance=tolerance,
        metadata={
            "area": area,
            "n_max": u.n_max,
            "m_max": m_max,
            "equality_case": equality_case_detect(cf.g, 1e-12),
        },
    )


def equality_case_detect(g: TaylorCoeffs, tol: float) -> bool:
    """True when ``g`` is (numerically) a rotation-dilation ``a_1 z``."""
    n = np.arange(1, g.m_max + 1)
    weighted = n * np.abs(g.coeffs[1:]) ** 2
    total = float(np.sum(weighted))
    if total == 0.0:
        raise InvalidInputError("zero series has no equality case")
    return float(np.sum(weighted[1:])) <= tol * total
