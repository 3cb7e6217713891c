"""Exception types shared by every module.

Each class carries a short ``code`` used by the command-line front end as a
machine-parsable prefix on error lines.
"""


class GammaEError(Exception):
    code = "ERROR"


class DomainError(GammaEError, ValueError):
    """An argument lies outside the documented domain of an operation."""

    code = "DOMAIN_ERROR"


class ConvergenceError(GammaEError, ArithmeticError):
    """Adaptive quadrature could not reach the requested tolerance.

    ``estimate`` is the best value found and ``error`` the achieved absolute
    error estimate at the point of failure.
    """

    code = "CONVERGENCE_FAILURE"

    def __init__(self, message, estimate=float("nan"), error=float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
