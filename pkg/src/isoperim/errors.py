"""Exception hierarchy shared by every checker."""


class IsoperimError(Exception):
    """Base class for toolkit errors."""


class InvalidInputError(IsoperimError, ValueError):
    """An argument violates a documented precondition."""


class SeriesRangeError(IsoperimError, OverflowError):
    """A series operation left the representable floating point range."""


class InconsistencyError(IsoperimError, ArithmeticError):
    """A computed quantity contradicts an identity it must satisfy."""


class SingularityError(IsoperimError, ZeroDivisionError):
    """Evaluation requested at a pole of a kernel or potential."""


class DegenerateFieldError(IsoperimError, ValueError):
    """A scalar field has no non-trivial superlevel structure."""


class UnsupportedScenarioError(IsoperimError, NotImplementedError):
    """The scenario falls outside the supported (radial) regime."""
