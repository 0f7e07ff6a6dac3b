"""Exception hierarchy.

Two families matter downstream: parameter problems (CLI exit code 2) and
numerical failures (CLI exit code 3). Everything raised by this package
derives from RealzerosError.
"""

from __future__ import annotations


class RealzerosError(Exception):
    pass


class ParameterError(RealzerosError):
    """Invalid parameters or violated preconditions."""


class DomainError(ParameterError):
    """Argument outside the domain an operation is defined on."""


class PoleError(ParameterError):
    """Gamma evaluated at a non-positive integer."""


class OrderError(ParameterError):
    """Requested series order exceeds the supported cap."""


class ContourError(ParameterError):
    """Mellin-Barnes contour abscissa violates c < -|y|."""


class NumericalError(RealzerosError):
    """Computation started with valid parameters but could not finish."""


class NonConvergence(NumericalError):
    """Refinement limit reached before the tolerance was met."""


class IntegrandNegative(NumericalError):
    """A provably nonnegative integrand sampled below -1e-14 * scale.

    The decomposition integrands are sums of squares times positive
    factors, so a genuinely negative sample means the computation cannot
    be trusted, not that the inequality fails.
    """


class EvaluationError(NumericalError):
    """A function value came out non-finite or otherwise unusable."""


class BoundaryZeroError(NumericalError):
    """A rectangle boundary passes too close to a zero to count windings."""

    def __init__(self, message: str, point: complex | None = None):
        super().__init__(message)
        self.point = point


class PhaseResolutionError(NumericalError):
    """Adaptive boundary sampling hit its subdivision limit."""
