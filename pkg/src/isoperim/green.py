"""Green's function of the unit disk, atomic potentials and the Huber chain.

``G(x, y) = (1/2pi) log(|1 - x conj(y)| / |x - y|)`` in complex notation:
non-negative, zero on the unit circle, and with unit outward flux in
magnitude (the normal derivative itself is negative on the boundary).

An atom of mass ``alpha`` at ``y`` contributes ``2 alpha G(x, y)`` to the
potential, so ``e^{p}`` behaves like ``|x - y|^(-alpha/pi)`` near ``y``.
The origin term ``alpha0`` contributes ``2 alpha0 log(1/|x|)``, i.e. it is
an atom of mass ``2 pi alpha0`` at the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidInputError, SingularityError, UnsupportedScenarioError
from .fourier import FourierCoeffs
from .geometry import area_series, boundary_length
from .harmonic import build_conformal_factor, poisson_extend
from .quadrature import PointSingularity, integrate_disk, integrate_radial_power, integrate_singular
from .report import CheckReport

TWO_PI = 2 * np.pi


def green_disk(x, y) -> np.ndarray:
    """Dirichlet Green's function of ``B_1`` with pole ``y``; vectorised over ``x``."""
    x = np.asarray(x, dtype=complex)
    y = complex(y)
    if abs(y) >= 1.0:
        raise InvalidInputError(f"pole {y} must be interior")
    dist = np.abs(x - y)
    if np.any(dist == 0):
        raise SingularityError(f"Green's function evaluated at its pole {y}")
    return np.log(np.abs(1.0 - x * np.conj(y)) / dist) / TWO_PI


def green_gradient(x, y) -> np.ndarray:
    """Gradient of ``G(., y)`` as a complex number ``G_x1 + i G_x2``."""
    x = np.asarray(x, dtype=complex)
    y = complex(y)
    return (-y / (1.0 - np.conj(x) * y) - 1.0 / (np.conj(x) - np.conj(y))) / TWO_PI


def _flux_nodes(y: complex) -> int:
    # trapezoid error on the Poisson kernel decays like |y|^n
    ry = abs(y)
    if ry < 1e-3:
        return 64
    need = int(np.ceil(40.0 / -np.log(ry)))
    return max(64, 1 << (need - 1).bit_length())


def green_flux_check(y, tolerance: float = 1e-8) -> CheckReport:
    """``|int_{dB_1} d_nu G(., y) dsigma| = 1``; slack is ``tolerance``-scaled closeness."""
    y = complex(y)
    n = _flux_nodes(y)
    x = np.exp(1j * TWO_PI * np.arange(n) / n)
    normal_derivative = np.real(green_gradient(x, y) * np.conj(x))
    flux = float(np.sum(normal_derivative) * TWO_PI / n)
    lhs = abs(flux)
    return CheckReport(
        name="green_flux",
        lhs=lhs,
        rhs=1.0,
        slack=-abs(lhs - 1.0),
        tolerance=tolerance,
        metadata={"pole": [y.real, y.imag], "nodes": n, "signed_flux": flux},
    )


def _green_superlevel_disk(y: complex, s: float) -> tuple[complex, float]:
    """``{G(., y) > t}`` with ``s = e^{-2 pi t}`` is a Euclidean disk: (centre, radius)."""
    ry2 = abs(y) ** 2
    denom = 1.0 - s * s * ry2
    return y * (1.0 - s * s) / denom, s * (1.0 - ry2) / denom


def green_level_bound_check(
    y,
    h: FourierCoeffs | None = None,
    nlevels: int = 32,
    nr: int = 64,
    ntheta: int = 128,
    tolerance: float = 1e-6,
) -> CheckReport:
    """``t <= (1/4pi) log(A / a(t))`` along superlevel sets of ``G(., y)``.

    ``a(t) = int_{G > t} e^h`` is integrated over the exact superlevel disk of
    each level; ``A = int_{B_1} e^h`` on the same rule.  ``slack`` is the
    minimum over levels of ``rhs - lhs``.
    """
    y = complex(y)
    h = FourierCoeffs.constant(0.0) if h is None else h
    field_h = poisson_extend(h)

    def density(z):
        return np.exp(field_h(z))

    total = integrate_disk(density, nr, ntheta)
    s = np.arange(1, nlevels + 1) / (nlevels + 1)
    t = -np.log(s) / TWO_PI
    masses = np.empty(nlevels)
    for k, sk in enumerate(s):
        centre, radius = _green_superlevel_disk(y, sk)
        masses[k] = integrate_disk(density, nr, ntheta, centre, radius)
    bound = np.log(total / masses) / (2 * TWO_PI)
    gap = bound - t
    k = int(np.argmin(gap))
    return CheckReport(
        name="green_bound",
        lhs=float(t[k]),
        rhs=float(bound[k]),
        slack=float(gap[k]),
        tolerance=tolerance,
        metadata={
            "pole": [y.real, y.imag],
            "total": total,
            "levels": t,
            "masses": masses,
            "slack_per_level": gap,
        },
    )


@dataclass(frozen=True)
class PointMassMeasure:
    """Finite signed atomic measure ``mu_2 - mu_1`` plus an origin term.

    ``positive`` and ``negative`` hold ``(alpha, y)`` pairs with ``alpha > 0``
    and ``|y| < 1``.
    """

    positive: tuple = ()
    negative: tuple = ()
    alpha0: float = 0.0

    def __post_init__(self):
        pos = tuple((float(a), complex(y)) for a, y in self.positive)
        neg = tuple((float(a), complex(y)) for a, y in self.negative)
        for a, y in pos + neg:
            if a <= 0:
                raise InvalidInputError(f"atom mass must be positive, got {a}")
            if abs(y) >= 1:
                raise InvalidInputError(f"atom location {y} is not interior")
        if self.alpha0 < 0:
            raise InvalidInputError("alpha0 must be non-negative")
        object.__setattr__(self, "positive", pos)
        object.__setattr__(self, "negative", neg)
        object.__setattr__(self, "alpha0", float(self.alpha0))

    @classmethod
    def single(cls, alpha: float, y) -> "PointMassMeasure":
        return cls(positive=((alpha, y),)) if alpha > 0 else cls()

    @property
    def positive_mass(self) -> float:
        """``mu_2(D)``, counting the origin term as mass ``2 pi alpha0``."""
        return float(sum(a for a, _ in self.positive) + TWO_PI * self.alpha0)

    @property
    def is_empty(self) -> bool:
        return not self.positive and not self.negative and self.alpha0 == 0

    @property
    def is_radial(self) -> bool:
        return all(y == 0 for _, y in self.positive + self.negative)

    def signed_atoms(self) -> list[tuple[float, complex]]:
        """Atoms as ``(signed mass, location)``, origin term included."""
        atoms = [(a, y) for a, y in self.positive] + [(-a, y) for a, y in self.negative]
        if self.alpha0:
            atoms.append((TWO_PI * self.alpha0, 0j))
        return atoms

    def singularities(self) -> list[PointSingularity]:
        """Net local order of ``e^p`` at each distinct atom location."""
        merged: dict[complex, float] = {}
        for a, y in self.signed_atoms():
            merged[y] = merged.get(y, 0.0) + a / np.pi
        return [PointSingularity(y, order) for y, order in merged.items() if order != 0]


def potential(m: PointMassMeasure, x) -> np.ndarray:
    """``p(x) = sum_k 2 alpha_k G(x, y_k)`` (signed) plus ``2 alpha0 log(1/|x|)``."""
    x = np.asarray(x, dtype=complex)
    total = np.zeros(x.shape)
    for a, y in m.positive:
        total = total + 2 * a * green_disk(x, y)
    for a, y in m.negative:
        total = total - 2 * a * green_disk(x, y)
    if m.alpha0:
        r = np.abs(x)
        if np.any(r == 0):
            raise SingularityError("origin term evaluated at the origin")
        total = total - 2 * m.alpha0 * np.log(r)
    return total


def _weighted_potential_integral(h: FourierCoeffs, m: PointMassMeasure, nr: int, ntheta: int) -> float:
    """``int_{B_1} e^{h + p}``; the singular part of ``e^p`` is left to the rule."""
    field_h = poisson_extend(h)

    def integrand(z):
        return np.exp(field_h(z) + potential(m, z))

    return integrate_singular(integrand, m.singularities(), nr, ntheta)


def _huber_chain(name: str, h: FourierCoeffs, m: PointMassMeasure, nr: int, ntheta: int, tolerance: float) -> CheckReport:
    alpha = m.positive_mass
    if alpha >= TWO_PI:
        raise InvalidInputError(f"positive mass {alpha:.6g} must be below 2 pi")
    cf = build_conformal_factor(h, max(256, 2 * h.n_max))
    area = area_series(cf.g)
    if m.is_empty:
        weighted = area
    else:
        weighted = _weighted_potential_integral(h, m, nr, ntheta)
    lhs = 2 * (TWO_PI - alpha) * weighted
    middle = 4 * np.pi * area
    rhs = boundary_length(h) ** 2
    slack1 = middle - lhs
    slack2 = rhs - middle
    return CheckReport(
        name=name,
        lhs=lhs,
        rhs=rhs,
        slack=min(slack1, slack2),
        tolerance=tolerance,
        metadata={
            "alpha": alpha,
            "middle": middle,
            "slack_potential": slack1,
            "slack_nehari": slack2,
            "weighted_integral": weighted,
            "grid": [nr, ntheta],
        },
    )


def huber_point_check(
    h: FourierCoeffs,
    alpha: float,
    y,
    nr: int = 128,
    ntheta: int = 256,
    tolerance: float = 1e-8,
) -> CheckReport:
    """``2(2pi - alpha) int e^{h + 2 alpha G(., y)} <= 4 pi A <= (int e^{h/2})^2``."""
    if not 0 <= alpha < TWO_PI:
        raise InvalidInputError(f"alpha must lie in [0, 2 pi), got {alpha}")
    return _huber_chain("huber_point", h, PointMassMeasure.single(alpha, y), nr, ntheta, tolerance)


def huber_measure_check(
    h: FourierCoeffs,
    m: PointMassMeasure,
    nr: int = 128,
    ntheta: int = 256,
    tolerance: float = 1e-8,
) -> CheckReport:
    """Huber chain for the potential of a finite signed atomic measure."""
    return _huber_chain("huber_measure", h, m, nr, ntheta, tolerance)


def huber_superlevel_check(
    m: PointMassMeasure,
    radius: float,
    h_const: float = 0.0,
    n: int = 64,
    tolerance: float = 1e-8,
) -> CheckReport:
    """Huber bound on the sub-disk ``|x| < radius`` with the global constant ``2pi - mu_2(D)``.

    Radial scenarios only: the superlevel set is one disk and ``e^{h+p}``
    reduces to ``e^h r^(-order)``.
    """
    if not m.is_radial:
        raise UnsupportedScenarioError("superlevel Huber check needs every atom at the origin")
    if not 0 < radius <= 1:
        raise InvalidInputError(f"sub-disk radius must lie in (0, 1], got {radius}")
    alpha = m.positive_mass
    if alpha >= TWO_PI:
        raise InvalidInputError(f"positive mass {alpha:.6g} must be below 2 pi")
    order = sum((s.order for s in m.singularities()), 0.0)
    base = np.exp(h_const)
    inner = TWO_PI * base * integrate_radial_power(lambda r: np.ones_like(r), 1.0 - order, radius, n)
    lhs = 2 * (TWO_PI - alpha) * inner
    p_edge = -order * np.log(radius)
    rhs = (TWO_PI * radius * np.exp((h_const + p_edge) / 2)) ** 2
    return CheckReport(
        name="huber_superlevel",
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        tolerance=tolerance,
        metadata={"alpha": alpha, "radius": radius, "order": order, "h": h_const},
    )


def measure_from_atoms(atoms: Sequence, alpha0: float = 0.0) -> PointMassMeasure:
    """Split signed ``(mass, x, y)`` triples into positive and negative parts."""
    pos, neg = [], []
    for mass, x, y in atoms:
        (pos if mass > 0 else neg).append((abs(mass), complex(x, y)))
    return PointMassMeasure(tuple(pos), tuple(neg), alpha0)


__all__ = [
    "PointMassMeasure",
    "green_disk",
    "green_gradient",
    "green_flux_check",
    "green_level_bound_check",
    "potential",
    "huber_point_check",
    "huber_measure_check",
    "huber_superlevel_check",
    "measure_from_atoms",
]
