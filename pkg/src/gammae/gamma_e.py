r"""Evaluation routes for Euler's generalized factorial and its constant A.

Euler's function is the product

.. math:: \Gamma_E(i) = a (a+b) (a+2b) \cdots (a+(i-1)b),

interpolated to real ``x`` by :math:`\Gamma_E(x) = b^x\,\Gamma(x+a/b)/\Gamma(a/b)`.
Every value is returned in log space (:class:`~gammae.core.LogValue`) so
that ``i`` in the millions never overflows.

Domain: real ``a, b > 0``.  The closed form is used wherever
``x + a/b > 0``; the integral form's convergence needs exactly this, which
is weaker than the often-quoted ``x - 1 + a/b > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import kernels
from .core import HALF_LOG_2PI, LogValue, log_gamma, stirling_log
from .errors import DomainError

MAX_PRODUCT_TERMS = 10**7

# Euler-Maclaurin tail starts where a + b m >= EM_START_RATIO * b; the B6
# remainder there is ~ 8e-4 * EM_START_RATIO**-5 < 1e-11 in the log.
EM_START_RATIO = 40.0

_B2 = 1.0 / 6.0
_B4 = -1.0 / 30.0


@dataclass(frozen=True)
class Params:
    """The pair (a, b); both must be finite and strictly positive."""

    a: float
    b: float

    def __post_init__(self):
        for name in ("a", "b"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise DomainError(f"{name} must be a real number, got {v!r}")
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be finite and > 0, got {v!r}")
            object.__setattr__(self, name, float(v))

    def ratio(self) -> float:
        return self.a / self.b

    def scaled(self, lam: float) -> Params:
        return Params(lam * self.a, lam * self.b)


@dataclass(frozen=True)
class ConvergenceRecord:
    """One row of an empirical-A table; ``rel_error`` is derived."""

    i: int
    a_hat: float
    a_closed: float
    rel_error: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "rel_error", abs(self.a_hat / self.a_closed - 1.0))

    def as_dict(self) -> dict:
        return {
            "i": self.i,
            "a_hat": self.a_hat,
            "a_closed": self.a_closed,
            "rel_error": self.rel_error,
        }


def _positive_int(i, name="i", minimum=1) -> int:
    if isinstance(i, bool):
        raise DomainError(f"{name} must be an integer, got {i!r}")
    if isinstance(i, float):
        if not i.is_integer():
            raise DomainError(f"{name} must be an integer, got {i!r}")
        i = int(i)
    if not isinstance(i, int):
        raise DomainError(f"{name} must be an integer, got {i!r}")
    if i < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {i}")
    if i > MAX_PRODUCT_TERMS:
        raise DomainError(
            f"{name}={i} exceeds the product cost bound {MAX_PRODUCT_TERMS}"
        )
    return i


def _real(x, name="x") -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return x


def gamma_e_product(i: int, p: Params) -> LogValue:
    """Direct product of the ``i`` factors a + k b, k = 0 .. i-1."""
    i = _positive_int(i)
    return LogValue(1, kernels.log_rising_sum(p.a, p.b, i))


def log_gamma_e_closed(x: float, p: Params) -> float:
    x = _real(x)
    r = p.ratio()
    if not x + r > 0:
        raise DomainError(f"closed form needs x + a/b > 0, got x={x}, a/b={r}")
    return x * math.log(p.b) - log_gamma(r) + log_gamma(x + r)


def gamma_e_closed(x: float, p: Params) -> LogValue:
    """b**x * Gamma(x + a/b) / Gamma(a/b); valid for real x with x + a/b > 0."""
    return LogValue(1, log_gamma_e_closed(x, p))


def _em_correction(f1_hi, f1_lo, f3_hi, f3_lo, order):
    corr = 0.0
    if order >= 1:
        corr += _B2 / 2.0 * (f1_hi - f1_lo)
    if order >= 2:
        corr += _B4 / 24.0 * (f3_hi - f3_lo)
    return corr


def log_gamma_e_euler_maclaurin(
    i: int, p: Params, order: int = 2, exact_terms: int | None = None
) -> float:
    r"""Euler-Maclaurin estimate of :math:`\sum_{k=0}^{i-1}\ln(a+kb)`.

    The first ``exact_terms`` factors are summed directly and the formula
    is applied to f(t) = ln(a + b t) on ``[exact_terms, i-1]``: integral,
    trapezoid endpoints and ``order`` Bernoulli corrections (B2, B4).

    ``exact_terms=0`` is the textbook formula anchored at t = 0.  Its
    remainder tends to a constant set by the derivatives of f at 0 (about
    5e-4 for a = b = 1 at order 2), independent of i.  The default
    (``None``) starts the tail where a + b m >= 40 b, which brings that
    constant below 1e-11.
    """
    i = _positive_int(i, minimum=2)
    if order not in (0, 1, 2):
        raise DomainError(f"order must be 0, 1 or 2, got {order!r}")
    a, b = p.a, p.b
    if exact_terms is None:
        exact_terms = max(0, math.ceil(EM_START_RATIO - a / b))
    if isinstance(exact_terms, bool) or not isinstance(exact_terms, int) or exact_terms < 0:
        raise DomainError(f"exact_terms must be a non-negative integer, got {exact_terms!r}")
    m = min(exact_terms, i - 1)
    head = kernels.log_rising_sum(a, b, m) if m else 0.0

    lo, hi = float(m), float(i - 1)
    z_lo, z_hi = a + b * lo, a + b * hi
    ln_lo, ln_hi = math.log(z_lo), math.log(z_hi)
    integral = (z_hi * (ln_hi - 1.0) - z_lo * (ln_lo - 1.0)) / b
    trapezoid = 0.5 * (ln_lo + ln_hi)
    corr = _em_correction(
        b / z_hi, b / z_lo, 2.0 * b**3 / z_hi**3, 2.0 * b**3 / z_lo**3, order
    )
    return math.fsum((head, integral, trapezoid, corr))


def gamma_e_euler_maclaurin(
    i: int, p: Params, order: int = 2, exact_terms: int | None = None
) -> LogValue:
    return LogValue(1, log_gamma_e_euler_maclaurin(i, p, order, exact_terms))


def log_constant_A(p: Params) -> float:
    r = p.ratio()
    return HALF_LOG_2PI - log_gamma(r) + (1.0 - r) + (0.5 - r) * math.log(p.b)


def constant_A(p: Params) -> float:
    r"""The constant in Euler's asymptotic form,

    .. math:: A = \frac{\sqrt{2\pi}}{\Gamma(a/b)}\,e^{1-a/b}\,b^{1/2-a/b}.
    """
    return math.exp(log_constant_A(p))


def euler_asymptotic_log(i: float, p: Params, A: float = 1.0, *, log_A: float | None = None) -> float:
    """ln of A (a - b + b i)**(a/b + i - 1/2) e**-i.

    Pass ``log_A`` instead of ``A`` when A itself is outside the double
    range (A underflows once a/b is in the hundreds).
    """
    i = _real(i, "i")
    if log_A is None:
        A = _real(A, "A")
        if not A > 0:
            raise DomainError(f"A must be > 0, got {A}")
        log_A = math.log(A)
    else:
        log_A = _real(log_A, "log_A")
    base = p.a - p.b + p.b * i
    if not base > 0:
        raise DomainError(f"asymptotic form needs a - b + b i > 0, got {base}")
    return log_A + (p.ratio() + i - 0.5) * math.log(base) - i


def stirling_asymptotic_log(x: float, p: Params) -> float:
    """Stirling's formula applied to the closed form at z = x + a/b - 1.

    Algebraically identical to ``euler_asymptotic_log(x, p, constant_A(p))``.
    """
    x = _real(x)
    z = x + p.ratio() - 1.0
    if not z > 0:
        raise DomainError(f"Stirling form needs x + a/b - 1 > 0, got {z}")
    return x * math.log(p.b) - log_gamma(p.ratio()) + stirling_log(z)


def estimate_A(i: int, p: Params) -> ConvergenceRecord:
    """Empirical A: the exact product divided by Euler's form with A = 1."""
    i = _positive_int(i, minimum=2)
    log_A = log_constant_A(p)
    if not -700.0 < log_A < 700.0:
        raise DomainError(
            f"A = exp({log_A:.6g}) is outside the double range; compare in log space "
            "with log_constant_A instead"
        )
    log_hat = gamma_e_product(i, p).log_abs - euler_asymptotic_log(i, p, 1.0)
    return ConvergenceRecord(i=i, a_hat=math.exp(log_hat), a_closed=math.exp(log_A))


def convergence_table(p: Params, i_values) -> list[ConvergenceRecord]:
    return [estimate_A(i, p) for i in i_values]


def functional_equation_residual(x: float, p: Params) -> float:
    """|ln G(x+1) - ln(a + b x) - ln G(x)| with G the closed form."""
    x = _real(x)
    r = p.ratio()
    if not x + r > 0:
        raise DomainError(f"functional equation needs x + a/b > 0, got x={x}")
    lhs = log_gamma_e_closed(x + 1.0, p)
    rhs = math.log(p.a + p.b * x) + log_gamma_e_closed(x, p)
    return abs(lhs - rhs)
