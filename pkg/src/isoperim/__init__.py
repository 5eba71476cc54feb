"""Numerical checks of the isoperimetric inequality chain on the unit disk."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DegenerateFieldError,
    InconsistencyError,
    InvalidInputError,
    IsoperimError,
    SeriesRangeError,
    SingularityError,
    UnsupportedScenarioError,
)
from .fourier import FourierCoeffs, TaylorCoeffs  # noqa: E402
from .quadrature import PolarGrid, ScalarField  # noqa: E402
from .report import CheckReport  # noqa: E402

__all__ = [
    "__version__",
    "CheckReport",
    "DegenerateFieldError",
    "FourierCoeffs",
    "InconsistencyError",
    "InvalidInputError",
    "IsoperimError",
    "PolarGrid",
    "ScalarField",
    "SeriesRangeError",
    "SingularityError",
    "TaylorCoeffs",
    "UnsupportedScenarioError",
]
