r"""Numerical checks of the integral-ansatz derivation.

The ansatz ``G(x) = int_c^d y**(x-1) P(y) dy`` solves
``G(x+1) = (a + b x) G(x)`` when P and an auxiliary Q satisfy

    y P = a P + y Q'        and        0 = b P + Q,

whose solutions are ``P = -(C/b) e**(-y/b) y**(a/b)`` and ``Q = -b P``, and
when ``d**x Q(d) - c**x Q(c) = 0``.  The functions below evaluate these
pieces and measure how well each identity holds numerically.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

from .core import log_gamma
from .errors import DomainError
from .gamma_e import Params, _real
from .quadrature import QuadratureConfig, log_integral_power_exp

_EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class Check:
    label: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass
class VerifyReport:
    suite_name: str
    checks: list[Check] = field(default_factory=list)
    evidence: list[dict] = field(default_factory=list)

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, label, residual, tolerance):
        self.checks.append(Check(label, float(residual), float(tolerance)))

    def extend(self, other: VerifyReport, prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.label, c.residual, c.tolerance))
        self.evidence.extend(other.evidence)

    def as_dict(self) -> dict:
        out = {
            "suite_name": self.suite_name,
            "overall_pass": self.overall_pass,
            "checks": [c.as_dict() for c in self.checks],
        }
        if self.evidence:
            out["evidence"] = self.evidence
        return out


def _check_y(y):
    y = _real(y, "y")
    if not y > 0:
        raise DomainError(f"y must be > 0, got {y}")
    return y


def _check_C(C):
    C = _real(C, "C")
    if C == 0:
        raise DomainError("the integration constant C must be nonzero")
    return C


def p_function(y: float, p: Params, C: float) -> float:
    """P(y) = -(C/b) e**(-y/b) y**(a/b)."""
    return -q_function(y, p, C) / p.b


def q_function(y: float, p: Params, C: float) -> float:
    """Q(y) = C e**(-y/b) y**(a/b)."""
    y, C = _check_y(y), _check_C(C)
    # one exponential so y**(a/b) cannot overflow before the decay cancels it
    return C * math.exp(p.ratio() * math.log(y) - y / p.b)


def _q_third_derivative(y, p, C):
    # Q = C exp(phi), phi' = g = r/y - 1/b; Q''' = Q (g^3 + 3 g g' + g'').
    r = p.ratio()
    g = r / y - 1.0 / p.b
    g1 = -r / y**2
    g2 = 2.0 * r / y**3
    return q_function(y, p, C) * (g**3 + 3.0 * g * g1 + g2)


def integration_constant(p: Params) -> float:
    """The C fixed by G(1) = a: C = -b**(1 - a/b) / Gamma(a/b)."""
    r = p.ratio()
    return -math.exp((1.0 - r) * math.log(p.b) - log_gamma(r))


def ansatz_value(x: float, p: Params, C: float, cfg: QuadratureConfig | None = None) -> float:
    """-(C/b) int_0^inf y**(x-1) e**(-y/b) y**(a/b) dy by quadrature."""
    x, C = _real(x), _check_C(C)
    s = x - 1.0 + p.ratio()
    if not s > -1.0:
        raise DomainError(f"ansatz integral needs x + a/b > 0, got x={x}")
    log_int = log_integral_power_exp(s, 1.0 / p.b, math.inf, cfg)
    return -(C / p.b) * math.exp(log_int)


def ode_system_residual(y: float, p: Params, C: float, h: float) -> VerifyReport:
    """Residuals of ``y P = a P + y Q'`` (Q' by central difference) and ``b P + Q = 0``.

    The first tolerance is twice the central-difference truncation bound
    ``y h**2 max|Q'''| / 6`` over ``[y-h, y+h]`` (sampled at three points)
    plus a rounding allowance; the second is ``1e-13 |Q(y)|``.
    """
    y, C = _check_y(y), _check_C(C)
    h = _real(h, "h")
    if not 0 < h <= y / 10:
        raise DomainError(f"step h must lie in (0, y/10], got h={h}, y={y}")
    a, b = p.a, p.b
    P = p_function(y, p, C)
    Q = q_function(y, p, C)
    q_plus, q_minus = q_function(y + h, p, C), q_function(y - h, p, C)
    dq = (q_plus - q_minus) / (2.0 * h)

    first = abs(y * P - a * P - y * dq)
    q3 = max(abs(_q_third_derivative(t, p, C)) for t in (y - h, y, y + h))
    q_max = max(abs(Q), abs(q_plus), abs(q_minus))
    tol_first = (
        2.0 * y * h * h * q3 / 6.0
        + 4.0 * _EPS * y * q_max / h
        + 4.0 * _EPS * (abs(y * P) + abs(a * P))
    )
    second = abs(b * P + Q)

    report = VerifyReport("ode")
    report.add(f"y P = a P + y Q' at y={y:g}, h={h:g}, C={C:g}", first, tol_first)
    report.add(f"b P + Q = 0 at y={y:g}, C={C:g}", second, 1e-13 * abs(Q))
    return report


def auxiliary_equation_terms(x, y_hi, p: Params, C, cfg: QuadratureConfig | None = None):
    """The three terms of the auxiliary equation on ``[0, y_hi]``.

    Returns ``(int t**x P, (a + b x) int t**(x-1) P, y_hi**x Q(y_hi))``.
    """
    x, C = _real(x), _check_C(C)
    y_hi = _check_y(y_hi)
    r = p.ratio()
    if not x + r > 0:
        raise DomainError(f"auxiliary equation needs x + a/b > 0, got x={x}")
    rate = 1.0 / p.b
    coef = -C / p.b
    upper = coef * math.exp(log_integral_power_exp(x + r, rate, y_hi, cfg))
    lower = coef * math.exp(log_integral_power_exp(x - 1.0 + r, rate, y_hi, cfg))
    boundary = y_hi**x * q_function(y_hi, p, C)
    return upper, (p.a + p.b * x) * lower, boundary


def auxiliary_equation_residual(
    x: float, y_hi: float, p: Params, C: float, cfg: QuadratureConfig | None = None
) -> float:
    """|int_0^Y t**x P - (a + b x) int_0^Y t**(x-1) P - Y**x Q(Y)|."""
    upper, lower, boundary = auxiliary_equation_terms(x, y_hi, p, C, cfg)
    return abs(upper - lower - boundary)


NEAR_ZERO = (1e-4, 1e-6, 1e-8)
NEAR_INFINITY = (1e2, 1e3)


def _log_boundary_term(y, x, p, C):
    # ln |y**x Q(y)|
    return math.log(abs(C)) + (x + p.ratio()) * math.log(y) - y / p.b


def boundary_check(x: float, p: Params, C: float) -> VerifyReport:
    """Evidence that ``y**x Q(y)`` vanishes at both ends of ``(0, inf)``.

    Near 0 the fitted power-law exponent between consecutive sample points
    must match ``x + a/b`` up to the known slope contribution of
    ``exp(-y/b)``, and magnitudes must shrink toward 0.  Near infinity the
    sample points are pushed past the maximum at ``y = b (x + a/b)`` when
    needed; the log-slope there must be dominated by ``-1/b`` and the
    far value must sit below double-precision resolution relative to |C|.
    """
    x, C = _real(x), _check_C(C)
    expo = x + p.ratio()
    if not expo > 0:
        raise DomainError(f"boundary check needs x + a/b > 0, got x={x}")
    report = VerifyReport("boundary")
    log_c = math.log(abs(C))

    logs = [_log_boundary_term(y, x, p, C) for y in NEAR_ZERO]
    for y, lv in zip(NEAR_ZERO, logs):
        report.evidence.append({"end": "0+", "y": y, "C": C, "log_abs": lv})
    for (y1, l1), (y2, l2) in zip(zip(NEAR_ZERO, logs), zip(NEAR_ZERO[1:], logs[1:])):
        span = math.log(y1 / y2)
        fitted = (l1 - l2) / span
        tol = (y1 - y2) / (p.b * span) + 1e-9 * max(1.0, expo)
        report.add(
            f"y->0+: decay exponent on [{y2:g}, {y1:g}] vs x+a/b={expo:g}, C={C:g}",
            abs(fitted - expo),
            tol,
        )
        report.add(
            f"y->0+: |y^x Q| ratio {y2:g}/{y1:g} < 1, C={C:g}",
            math.exp(l2 - l1),
            math.nextafter(1.0, 0.0),
        )

    scale = max(1.0, p.b * max(expo, 1.0) / 10.0)
    far = [y * scale for y in NEAR_INFINITY]
    logs = [_log_boundary_term(y, x, p, C) for y in far]
    for y, lv in zip(far, logs):
        report.evidence.append({"end": "inf", "y": y, "C": C, "log_abs": lv})
    slope = (logs[1] - logs[0]) / (far[1] - far[0])
    report.add(
        f"y->inf: log-slope on [{far[0]:g}, {far[1]:g}] dominated by -1/b, C={C:g}",
        abs(slope * p.b + 1.0),
        0.5,
    )
    report.add(
        f"y->inf: ln|y^x Q / C| at y={far[1]:g} below ln(eps), C={C:g}",
        logs[1] - log_c,
        math.log(_EPS),
    )
    return report
