"""Exception types shared across the package."""


class SiegelflowError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(SiegelflowError):
    """Operands have incompatible genus or matrix dimensions."""


class ValidationError(SiegelflowError):
    """An input value violates a structural precondition."""


class NumericalDegeneracy(SiegelflowError):
    """A matrix is singular or indefinite beyond the working tolerance."""


class NotInParabolic(SiegelflowError):
    """An integer symplectic matrix does not have the corank-1 stabilizer shape."""


class PoleError(SiegelflowError):
    """A special function was evaluated at one of its poles."""


class ConvergenceRegionError(SiegelflowError):
    """A series parameter lies outside the region of absolute convergence."""


class TailError(SiegelflowError):
    """A truncation tail estimate exceeds the requested tolerance."""


class ScaleError(SiegelflowError):
    """A request needs more series terms than the desk-scale guard allows."""


class AccuracyError(SiegelflowError):
    """Quadrature did not converge to the requested tolerance.

    Carries the best value and its error estimate so callers can still
    inspect the result.
    """

    def __init__(self, message, value, error_estimate):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate
