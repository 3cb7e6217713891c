r"""Log-space real arithmetic and a self-contained log-gamma engine.

``log_gamma`` scheme
--------------------
The argument range ``x > 0`` is split into four pieces.

* ``x >= 10``: Stirling series
  :math:`(x-\tfrac12)\ln x - x + \tfrac12\ln 2\pi + \sum_{k=1}^{8}
  B_{2k}/(2k(2k-1)x^{2k-1})`.  The first omitted term is bounded by
  :math:`|B_{18}|/(18\cdot17\,x^{17}) < 2\times10^{-18}`, far below one unit
  of rounding of :math:`\ln\Gamma(10) \approx 12.8`.
* ``1.5 <= x < 2.5``: with ``z = x - 2`` (exact subtraction),
  :math:`\ln\Gamma(2+z) = (1-\gamma)z + \sum_{k\ge2}(-1)^k(\zeta(k)-1)z^k/k`
  (Abramowitz & Stegun 6.1.41 with the :math:`\ln(1+z)` term absorbed).
  For :math:`|z|\le\tfrac12` the k-th term is below :math:`4^{-k}/k`, so
  30 terms leave a truncation error under :math:`10^{-19}`.  The result is
  exactly zero at ``x = 2`` and keeps full relative accuracy near it.
* ``0.5 <= x < 1.5``: the same series at ``z = x - 1`` minus ``log1p(z)``;
  exact zero at ``x = 1``.
* ``0 < x < 0.5``: :math:`\ln\Gamma(x) = \ln\Gamma(1+x) - \ln x` with the
  series evaluated at ``z = x`` directly, so no rounding of ``1 + x``.
* ``2.5 <= x < 10``: downward recurrence to ``[1.5, 2.5)``; every term of
  the recurrence is non-negative, so there is no cancellation.

The constants :math:`\zeta(k)-1` are computed once at import by
Euler-Maclaurin summation (20 explicit terms, six Bernoulli corrections),
and the Bernoulli numbers come from exact rational arithmetic.  Measured
relative error against a 50-digit reference is below ``1e-15`` over
``[0.1, 1e6]`` (see ``tests/test_core.py``), inside the ``1e-13`` budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering

from .errors import DomainError

EULER_GAMMA = 0.57721566490153286061
HALF_LOG_2PI = 0.91893853320467274178


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (convention B_1 = -1/2)."""
    if n < 0:
        raise DomainError(f"bernoulli index must be >= 0, got {n}")
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    # Akiyama-Tanigawa yields B_1 = +1/2 but agrees for every even index.
    row = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
    return row[0]


def _zeta_minus_one(k: int, cutoff: int = 20) -> float:
    terms = [float(n) ** -k for n in range(cutoff - 1, 1, -1)]
    N = float(cutoff)
    terms.append(N ** (1 - k) / (k - 1))
    terms.append(0.5 * N**-k)
    rising = 1.0
    for j in range(1, 7):
        # rising = k (k+1) ... (k+2j-2)
        if j == 1:
            rising = float(k)
        else:
            rising *= (k + 2 * j - 3) * (k + 2 * j - 2)
        coef = float(bernoulli(2 * j) / math.factorial(2 * j))
        terms.append(coef * rising * N ** (-k - 2 * j + 1))
    return math.fsum(terms)


_SERIES_TERMS = 30
# Coefficients c_k = (-1)^k (zeta(k) - 1) / k for k = 2 .. 31.
_SERIES = tuple(
    (-1) ** k * _zeta_minus_one(k) / k for k in range(2, 2 + _SERIES_TERMS)
)
# B_2k / (2k (2k-1)) for k = 1 .. 8.
_STIRLING = tuple(
    float(bernoulli(2 * k) / (2 * k * (2 * k - 1))) for k in range(1, 9)
)


def _lgamma_two_plus(z: float) -> float:
    # ln Gamma(2 + z) for |z| <= 1/2.
    acc = 0.0
    for c in reversed(_SERIES):
        acc = acc * z + c
    return z * ((1.0 - EULER_GAMMA) + z * acc)


def _lgamma_one_plus(z: float) -> float:
    return _lgamma_two_plus(z) - math.log1p(z)


def _stirling_series(x: float) -> float:
    r = 1.0 / (x * x)
    acc = 0.0
    for c in reversed(_STIRLING):
        acc = acc * r + c
    return (x - 0.5) * math.log(x) - x + HALF_LOG_2PI + acc / x


def log_gamma(x: float) -> float:
    """Natural log of the Gamma function for real ``x > 0``."""
    x = float(x)
    if not (x > 0.0 and math.isfinite(x)):
        raise DomainError(f"log_gamma requires finite x > 0, got {x!r}")
    if x >= 10.0:
        return _stirling_series(x)
    if x < 0.5:
        return _lgamma_one_plus(x) - math.log(x)
    if x < 1.5:
        return _lgamma_one_plus(x - 1.0)
    if x < 2.5:
        return _lgamma_two_plus(x - 2.0)
    n = int(x - 1.5)
    y = x - n
    prod = 1.0
    for k in range(n):
        prod *= y + k
    return math.log(prod) + _lgamma_two_plus(y - 2.0)


def stirling_log(x: float) -> float:
    """Log of the bare Stirling approximant sqrt(2 pi x) x^x e^-x to Gamma(x+1).

    No correction terms are applied.
    """
    x = float(x)
    if not (x > 0.0 and math.isfinite(x)):
        raise DomainError(f"stirling_log requires finite x > 0, got {x!r}")
    return HALF_LOG_2PI + 0.5 * math.log(x) + x * (math.log(x) - 1.0)


@total_ordering
@dataclass(frozen=True, eq=False)
class LogValue:
    """A real number stored as ``sign`` and ``log_abs = ln|value|``.

    ``sign == 0`` is exact zero and ``log_abs`` is then ignored.
    """

    sign: int
    log_abs: float = 0.0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"LogValue sign must be -1, 0 or +1, got {self.sign!r}")
        if self.sign == 0:
            object.__setattr__(self, "log_abs", 0.0)
        elif math.isnan(self.log_abs):
            raise DomainError("LogValue log_abs is NaN")
        elif self.log_abs == -math.inf:
            object.__setattr__(self, "sign", 0)
            object.__setattr__(self, "log_abs", 0.0)

    @classmethod
    def zero(cls) -> LogValue:
        return cls(0, 0.0)

    @classmethod
    def from_real(cls, r: float) -> LogValue:
        r = float(r)
        if math.isnan(r):
            raise DomainError("cannot represent NaN as a LogValue")
        if r == 0.0:
            return cls(0, 0.0)
        return cls(1 if r > 0 else -1, math.log(abs(r)))

    @classmethod
    def from_log(cls, log_abs: float, sign: int = 1) -> LogValue:
        return cls(sign, float(log_abs))

    def to_real(self) -> float:
        """Convert back to a float; ``OverflowError`` past the double range."""
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def multiply(self, other: LogValue) -> LogValue:
        if self.sign == 0 or other.sign == 0:
            return LogValue.zero()
        return LogValue(self.sign * other.sign, self.log_abs + other.log_abs)

    def divide(self, other: LogValue) -> LogValue:
        if other.sign == 0:
            raise DomainError("LogValue division by zero")
        if self.sign == 0:
            return LogValue.zero()
        return LogValue(self.sign * other.sign, self.log_abs - other.log_abs)

    def pow_scalar(self, p: float) -> LogValue:
        p = float(p)
        if self.sign == 0:
            if p > 0:
                return LogValue.zero()
            raise DomainError(f"zero raised to non-positive power {p}")
        if self.sign < 0:
            if not p.is_integer():
                raise DomainError(f"negative LogValue raised to non-integer power {p}")
            sign = -1 if int(p) % 2 else 1
        else:
            sign = 1
        return LogValue(sign, p * self.log_abs)

    def signed_add(self, other: LogValue) -> LogValue:
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        big, small = (self, other) if self.log_abs >= other.log_abs else (other, self)
        d = small.log_abs - big.log_abs
        if big.sign == small.sign:
            return LogValue(big.sign, big.log_abs + math.log1p(math.exp(d)))
        if d == 0.0:
            return LogValue.zero()
        return LogValue(big.sign, big.log_abs + math.log1p(-math.exp(d)))

    def negate(self) -> LogValue:
        return LogValue(-self.sign, self.log_abs)

    __mul__ = multiply
    __truediv__ = divide
    __pow__ = pow_scalar
    __add__ = signed_add
    __neg__ = negate

    def __sub__(self, other: LogValue) -> LogValue:
        return self.signed_add(other.negate())

    def _key(self):
        if self.sign == 0:
            return (0, 0.0)
        return (self.sign, self.sign * self.log_abs)

    def __eq__(self, other):
        if not isinstance(other, LogValue):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        if not isinstance(other, LogValue):
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())


def multiply(u: LogValue, v: LogValue) -> LogValue:
    return u.multiply(v)


def divide(u: LogValue, v: LogValue) -> LogValue:
    return u.divide(v)


def pow_scalar(u: LogValue, p: float) -> LogValue:
    return u.pow_scalar(p)


def signed_add(u: LogValue, v: LogValue) -> LogValue:
    return u.signed_add(v)
