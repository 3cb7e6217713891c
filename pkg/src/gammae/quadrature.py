r"""Adaptive quadrature on [0, T] plus a certified tail for [T, inf).

Strategy
--------
The integral over ``[0, inf)`` is split as ``[0, T] + [T, inf)``.

``[0, T]`` is integrated by globally adaptive bisection with the 21-point
Gauss-Kronrod rule.  Each panel's error is estimated by ``|K21 - G10|``;
because the Kronrod sum is exact to degree 31 and the Gauss sum only to 19,
this overestimates the error of the returned K21 value.  The panel with the
largest estimate is bisected until the summed estimate is at most
``rel_tolerance / 2`` of the running integral.

For an integrand that behaves like ``y**(alpha - 1)`` at the origin with
``alpha < 1`` the first segment ``[0, y1]`` is integrated in the variable
``u = y**alpha``; there ``y**(alpha-1) dy = du / alpha`` and the endpoint
singularity disappears.

Tail: for ``f(y) = exp(s ln y - r y - c)`` and ``T > max(s, 0) / r`` the
log-derivative of f on ``[T, inf)`` is at most ``-(r - max(s, 0)/T)``, so

.. math:: \int_T^\infty f \le f(T) / (r - \max(s,0)/T).

``T`` is pushed out until this bound is at most ``rel_tolerance / 4`` of
the integral and ``f(T) T < rel_tolerance`` times the integral.  Generic
callables get the same treatment with the decay rate estimated from the
local log-slope at ``T``; that bound is rigorous when ``ln f`` is concave
beyond ``T``.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

from . import kernels
from ._gk21 import WG, WGK, XGK
from .core import LogValue, log_gamma
from .errors import ConvergenceError, DomainError
from .gamma_e import Params, _real

MAX_INTEGRAL_PEAK = 300.0


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tolerance: float = 1e-10
    max_subdivisions: int = 2000
    tail_cut: float | None = None

    def __post_init__(self):
        if not 0.0 < self.rel_tolerance < 1e-2:
            raise DomainError(
                f"rel_tolerance must lie in (0, 1e-2), got {self.rel_tolerance}"
            )
        if isinstance(self.max_subdivisions, bool) or not isinstance(self.max_subdivisions, int) or self.max_subdivisions < 1:
            raise DomainError(
                f"max_subdivisions must be a positive integer, got {self.max_subdivisions!r}"
            )
        if self.tail_cut is not None and not (self.tail_cut > 0 and math.isfinite(self.tail_cut)):
            raise DomainError(f"tail_cut must be finite and > 0, got {self.tail_cut}")


@dataclass(frozen=True)
class PowerExp:
    """The integrand ``exp(power * ln y - rate * y - shift)`` on y > 0."""

    power: float
    rate: float = 1.0
    shift: float = 0.0

    def __post_init__(self):
        if not self.power > -1.0:
            raise DomainError(f"power must exceed -1 for integrability, got {self.power}")
        if not self.rate > 0.0:
            raise DomainError(f"rate must be > 0, got {self.rate}")

    def log_value(self, y: float) -> float:
        return self.power * math.log(y) - self.rate * y - self.shift

    def __call__(self, y: float) -> float:
        if y <= 0.0:
            return 0.0 if self.power > 0 else (1.0 if self.power == 0 else math.inf)
        return math.exp(self.log_value(y))

    @property
    def singular_exponent(self) -> float:
        return self.power + 1.0

    @property
    def peak(self) -> float:
        return max(self.power, 0.0) / self.rate

    @property
    def width(self) -> float:
        return math.sqrt(max(self.power, 1.0)) / self.rate

    def tail_bound(self, T: float) -> float:
        slope = self.rate - max(self.power, 0.0) / T
        if slope <= 0.0:
            return math.inf
        return self(T) / slope


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float
    tail_cut: float
    tail_bound: float
    subdivisions: int


def _gk21_callable(f, lo, hi):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    resk = WGK[10] * f(mid)
    resg = 0.0
    for j in range(10):
        dx = half * XGK[j]
        fsum = f(mid - dx) + f(mid + dx)
        resk += WGK[j] * fsum
        if j % 2:
            resg += WG[j // 2] * fsum
    return resk * half, resg * half


def _panel_rules(f, alpha, y1):
    """(regular, singular) panel functions; the singular one lives in u-space."""
    if isinstance(f, PowerExp):
        power, rate, shift = f.power, f.rate, f.shift

        def regular(lo, hi):
            return kernels.gk21_power_exp(lo, hi, power, rate, shift, 1.0)

        def singular(lo, hi):
            return kernels.gk21_power_exp(lo, hi, power, rate, shift, alpha)

        return regular, singular

    def regular(lo, hi):
        return _gk21_callable(f, lo, hi)

    inv = 1.0 / alpha

    def h(u):
        return f(u**inv) * u ** (inv - 1.0) * inv

    def singular(lo, hi):
        return _gk21_callable(h, lo, hi)

    return regular, singular


class _Adaptive:
    """Global adaptive bisection over a growing set of segments."""

    def __init__(self, rel_tol, max_panels):
        self.rel_tol = rel_tol
        self.max_panels = max_panels
        self.heap = []
        self.total = 0.0
        self.error = 0.0
        self.panels = 0
        self._seq = 0

    def add(self, rule, lo, hi):
        k, g = rule(lo, hi)
        err = abs(k - g)
        self.total += k
        self.error += err
        self.panels += 1
        self._seq += 1
        heapq.heappush(self.heap, (-err, self._seq, lo, hi, k, rule))

    def refine(self):
        while self.error > 0.5 * self.rel_tol * abs(self.total):
            if self.panels >= self.max_panels:
                raise ConvergenceError(
                    f"quadrature did not reach rel_tolerance {self.rel_tol} "
                    f"within {self.max_panels} subdivisions",
                    estimate=self.total,
                    error=self.error,
                )
            neg_err, _, lo, hi, k, rule = heapq.heappop(self.heap)
            mid = 0.5 * (lo + hi)
            if not lo < mid < hi:
                raise ConvergenceError(
                    "quadrature panel collapsed to machine resolution",
                    estimate=self.total,
                    error=self.error,
                )
            self.total -= k
            self.error += neg_err
            self.panels -= 1
            self.add(rule, lo, mid)
            self.add(rule, mid, hi)
        # Refresh sums to drop accumulated drift from the running updates.
        self.total = math.fsum(item[4] for item in self.heap)
        self.error = math.fsum(-item[0] for item in self.heap)


def _scales(f):
    if isinstance(f, PowerExp):
        return f.peak, f.width
    return 0.0, 1.0


def _seed_segment(adaptive, regular, lo, hi, width):
    budget = max(1, adaptive.max_panels - adaptive.panels)
    n = min(64, budget, max(1, math.ceil((hi - lo) / width)))
    edges = [lo + (hi - lo) * j / n for j in range(n + 1)]
    edges[-1] = hi
    for left, right in zip(edges, edges[1:]):
        adaptive.add(regular, left, right)


def _integrate_span(f, upper, cfg, alpha):
    _, width = _scales(f)
    # Singular segment [0, y1]; for PowerExp with power < 0 the exponential
    # factor is still O(1) there.
    y1 = min(upper, 1.0 / f.rate if isinstance(f, PowerExp) else 1.0)
    regular, singular = _panel_rules(f, alpha, y1)
    adaptive = _Adaptive(cfg.rel_tolerance, cfg.max_subdivisions)
    if alpha < 1.0:
        adaptive.add(singular, 0.0, y1**alpha)
        if upper > y1:
            _seed_segment(adaptive, regular, y1, upper, width)
    else:
        _seed_segment(adaptive, regular, 0.0, upper, width)
    adaptive.refine()
    return adaptive, regular


def _log_slope_decay(f, T):
    fT = f(T)
    if fT == 0.0:
        return fT, math.inf
    d = 1e-3 * T
    f2 = f(T + d)
    if f2 <= 0.0:
        return fT, math.inf
    return fT, -(math.log(f2) - math.log(fT)) / d


def _tail_bound(f, T):
    if isinstance(f, PowerExp):
        return f(T), f.tail_bound(T)
    fT, rate = _log_slope_decay(f, T)
    if rate == math.inf:
        return fT, 0.0
    if rate <= 0.0:
        return fT, math.inf
    return fT, fT / rate


def _tail_ok(fT, bound, T, total, rel_tol):
    scale = abs(total)
    return bound <= 0.25 * rel_tol * scale and fT * T < rel_tol * scale


def integrate(
    f: Callable[[float], float],
    upper: float = math.inf,
    cfg: QuadratureConfig | None = None,
    *,
    singular_exponent: float | None = None,
) -> QuadratureResult:
    """Integrate ``f`` over ``[0, upper]``; ``upper`` may be ``inf``.

    ``singular_exponent`` is the alpha with ``f(y) ~ y**(alpha - 1)`` at 0;
    it is taken from the integrand for :class:`PowerExp`.
    """
    cfg = cfg or QuadratureConfig()
    if singular_exponent is None:
        singular_exponent = f.singular_exponent if isinstance(f, PowerExp) else 1.0
    alpha = float(singular_exponent)
    if not alpha > 0.0:
        raise DomainError(f"singular_exponent must be > 0, got {alpha}")
    if not upper > 0.0:
        raise DomainError(f"upper limit must be > 0, got {upper}")

    if math.isfinite(upper):
        adaptive, _ = _integrate_span(f, upper, cfg, alpha)
        return QuadratureResult(adaptive.total, adaptive.error, upper, 0.0, adaptive.panels)

    peak, width = _scales(f)
    if cfg.tail_cut is not None:
        T = cfg.tail_cut
    elif isinstance(f, PowerExp):
        T = peak + 8.0 * width + 1.0 / f.rate
    else:
        T = 1.0
    adaptive, regular = _integrate_span(f, T, cfg, alpha)
    fT, bound = _tail_bound(f, T)
    step_count = 0
    while not _tail_ok(fT, bound, T, adaptive.total, cfg.rel_tolerance):
        if cfg.tail_cut is not None:
            raise ConvergenceError(
                f"tail_cut={T} violates the truncation criterion "
                f"(integrand(T)={fT:.3e}, tail bound={bound:.3e})",
                estimate=adaptive.total,
                error=adaptive.error + bound,
            )
        step_count += 1
        if step_count > 200:
            raise ConvergenceError(
                "could not certify the tail of the integrand",
                estimate=adaptive.total,
                error=adaptive.error + bound,
            )
        new_T = T + 8.0 * width if isinstance(f, PowerExp) else 2.0 * T
        _seed_segment(adaptive, regular, T, new_T, width)
        adaptive.refine()
        T = new_T
        fT, bound = _tail_bound(f, T)
    return QuadratureResult(
        adaptive.total, adaptive.error + bound, T, bound, adaptive.panels
    )


def integrate_semi_infinite(f, cfg: QuadratureConfig | None = None, *, singular_exponent=None) -> float:
    """Integral of ``f`` over ``[0, inf)`` to relative tolerance ``cfg.rel_tolerance``."""
    return integrate(f, math.inf, cfg, singular_exponent=singular_exponent).value


def integrate_from_zero(f, upper: float, cfg: QuadratureConfig | None = None, *, singular_exponent=None) -> float:
    return integrate(f, upper, cfg, singular_exponent=singular_exponent).value


def log_integral_power_exp(
    power: float, rate: float, upper: float = math.inf, cfg: QuadratureConfig | None = None
) -> float:
    """ln of int_0^upper y**power e**(-rate y) dy, integrated peak-normalized."""
    peak = max(power, 0.0) / rate
    shift = power * math.log(peak) - rate * peak if peak > 0 else 0.0
    value = integrate(PowerExp(power, rate, shift), upper, cfg).value
    return shift + math.log(value)


def gamma_e_integral(x: float, p: Params, cfg: QuadratureConfig | None = None) -> LogValue:
    """Integral route: b**x / Gamma(a/b) * int_0^inf y**(x-1+a/b) e**-y dy.

    The integrand is normalized by its peak value so the quadrature works on
    O(1) numbers; the peak ``x - 1 + a/b`` is capped at 300.
    """
    x = _real(x)
    r = p.ratio()
    if not x + r > 0:
        raise DomainError(f"integral route needs x + a/b > 0, got x={x}, a/b={r}")
    s = x - 1.0 + r
    if s > MAX_INTEGRAL_PEAK:
        raise DomainError(
            f"integrand peak x - 1 + a/b = {s:g} exceeds {MAX_INTEGRAL_PEAK:g}; "
            "use gamma_e_closed for large x"
        )
    log_int = log_integral_power_exp(s, 1.0, math.inf, cfg)
    return LogValue(1, x * math.log(p.b) - log_gamma(r) + log_int)
