"""Alexandrov's inequality for radial conformal metrics.

With curvature threshold ``K0 >= 0``, ``lambda = 2 K0`` and
``alpha = 2 pi - int_{K > K0} (K - K0) e^u``, the boundary length ``L`` and
area ``M`` of ``e^u |dz|^2`` on the unit disk satisfy
``L^2 >= (2 alpha - (lambda/2) M) M``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .levelsets import FD_TOLERANCE, bol_check, bol_rhs, level_set_report, radial_fields
from .quadrature import PolarGrid, ScalarField
from .radial import RadialProfile, curvature_from_u
from .report import CheckReport

# K - K0 below this is rounding noise, not excess curvature
CURVATURE_FLOOR = 1e-10


@dataclass(frozen=True, eq=False)
class CurvatureScenario:
    profile: RadialProfile
    K0: float
    grid: PolarGrid
    u: ScalarField
    K: ScalarField
    excess_mass: float

    @classmethod
    def build(cls, profile: RadialProfile, K0: float, grid: PolarGrid) -> "CurvatureScenario":
        if K0 < 0:
            raise InvalidInputError(f"K0 must be non-negative, got {K0}")
        profile.check_domain(1.0)
        u = grid.radial_field(profile, "u")
        K = grid.radial_field(lambda r: curvature_from_u(profile, r), "K")
        excess = K.values - K0
        excess = np.where(excess > CURVATURE_FLOOR * max(1.0, abs(K0)), excess, 0.0)
        mass = grid.integrate(excess * np.exp(u.values))
        return cls(profile, float(K0), grid, u, K, float(mass))

    @property
    def lam(self) -> float:
        return 2.0 * self.K0

    @property
    def alpha(self) -> float:
        return 2 * np.pi - self.excess_mass


def alexandrov_check(
    sc: CurvatureScenario,
    nlevels: int = 64,
    tolerance: float = 1e-8,
    fd_tolerance: float = FD_TOLERANCE,
) -> CheckReport:
    """``L^2 >= (2 alpha - (lambda/2) M) M``; ``slack = lhs - rhs``.

    Metadata carries the level-set differential inequality with constant
    ``2 alpha`` in place of ``4 pi``.
    """
    alpha = sc.alpha
    if alpha <= 0:
        raise InvalidInputError(f"alpha = {alpha:.6g} must be positive")
    h_const = float(sc.profile(1.0))
    bol = bol_check(sc.u, h_const, sc.lam, tolerance)
    mass = bol.metadata["area"]
    constant = 2 * alpha
    # 2 * (2 pi) == 4 pi in floating point, so alpha = 2 pi reproduces Bol to the bit
    rhs = bol_rhs(constant, sc.lam, mass)
    meta = {
        "alpha": alpha,
        "lambda": sc.lam,
        "K0": sc.K0,
        "area": mass,
        "excess_curvature_mass": sc.excess_mass,
        "length": bol.metadata["length"],
    }
    if sc.lam > 0:
        _, v, _ = radial_fields(sc.profile, sc.grid)
        diff = level_set_report(sc.u, v, h_const, sc.lam, nlevels, constant, fd_tolerance)
        meta["differential_slack"] = diff.slack
        meta["differential_pass"] = diff.passed
    return CheckReport(
        name="alexandrov",
        lhs=bol.lhs,
        rhs=rhs,
        slack=bol.lhs - rhs,
        tolerance=tolerance,
        metadata=meta,
    )
