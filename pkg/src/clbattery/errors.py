"""Exception hierarchy shared by all numerical modules."""


class CLBatteryError(Exception):
    """Base class for every error raised by this package."""


class NonConvergence(CLBatteryError):
    """Adaptive quadrature ran out of subdivisions above tolerance.

    Attributes:
        result: the best (unconverged) QuadratureResult, if available.
        worst_interval: ``(a, b)`` of the subinterval with the largest
            error contribution, in the original integration variable when
            it is finite.
    """

    def __init__(self, message, result=None, worst_interval=None):
        super().__init__(message)
        self.result = result
        self.worst_interval = worst_interval


class NonFiniteIntegrand(CLBatteryError):
    """The integrand returned NaN or inf at a quadrature node."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class PoleAtBoundary(CLBatteryError):
    """Principal value requested for a pole that is not strictly inside."""


class NegativeFrequency(CLBatteryError, ValueError):
    """A spectral quantity was requested at omega < 0."""


class DivergentRenormalization(CLBatteryError):
    """The cutoff integral defining omega_R^2 does not converge."""


class NotPositiveDefinite(CLBatteryError, ValueError):
    """Matrix is not symmetric positive definite."""


class UnphysicalCovariance(CLBatteryError, ValueError):
    """Covariance matrix violates the uncertainty principle or is invalid."""


class ZeroDenominator(CLBatteryError):
    """Connection-disconnection work too small for a meaningful efficiency."""


class UnknownAsymptote(CLBatteryError):
    """Ultrastrong-coupling limit g_inf does not exist for this cutoff."""
