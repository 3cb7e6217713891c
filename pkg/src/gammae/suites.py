"""Named verification suites run by ``gammae verify``.

Each suite takes the parameter pair, a seed for randomized sweeps and a
quadrature configuration, and returns a :class:`~gammae.verify.VerifyReport`.
"""

from __future__ import annotations

import math
import random

from .gamma_e import (
    Params,
    constant_A,
    estimate_A,
    euler_asymptotic_log,
    functional_equation_residual,
    gamma_e_product,
    log_gamma_e_closed,
    log_gamma_e_euler_maclaurin,
    stirling_asymptotic_log,
)
from .quadrature import QuadratureConfig, gamma_e_integral
from .verify import (
    VerifyReport,
    ansatz_value,
    auxiliary_equation_terms,
    boundary_check,
    integration_constant,
    ode_system_residual,
)

C_VALUES = (-1.0, 2.0, 10.0)
INTEGRAL_GRID = (0.5, 1.0, 2.5, 5.0, 20.0)
LAMBDAS = (0.5, 2.0, 10.0)
CONVERGENCE_I = (100, 1000, 10000)


def sample_domain(p: Params, n: int, seed: int) -> list[float]:
    """x values with x + a/b log-uniform on [1e-2, 1e3]."""
    rng = random.Random(seed)
    r = p.ratio()
    return [10.0 ** rng.uniform(-2.0, 3.0) - r for _ in range(n)]


def functional_suite(p: Params, seed: int = 0, n: int = 1000) -> VerifyReport:
    report = VerifyReport("functional")
    xs = sample_domain(p, n, seed)
    residuals = [functional_equation_residual(x, p) for x in xs]
    worst = max(range(n), key=residuals.__getitem__)
    report.add(
        f"G(x+1) = (a+bx) G(x): max over {n} samples (worst x={xs[worst]:.6g})",
        residuals[worst],
        1e-10,
    )
    report.add(
        "initial condition G(1) = a",
        abs(log_gamma_e_closed(1.0, p) - math.log(p.a)),
        1e-12 * max(1.0, abs(math.log(p.a))),
    )
    rng = random.Random(seed + 1)
    r = p.ratio()
    gap = -math.inf
    for _ in range(200):
        x, y = (10.0 ** rng.uniform(-2.0, 2.5) - r for _ in range(2))
        mid = log_gamma_e_closed(0.5 * (x + y), p)
        avg = 0.5 * (log_gamma_e_closed(x, p) + log_gamma_e_closed(y, p))
        gap = max(gap, mid - avg)
    report.add("log-convexity: max of ln G(mid) - mean(ln G) over 200 pairs", gap, 1e-10)
    return report


def routes_suite(p: Params, cfg: QuadratureConfig | None = None) -> VerifyReport:
    cfg = cfg or QuadratureConfig()
    report = VerifyReport("routes")

    diff = max(
        abs(gamma_e_product(i, p).log_abs - log_gamma_e_closed(i, p)) for i in range(1, 51)
    )
    report.add("product vs closed form, i = 1..50 (log abs)", diff, 1e-11)

    diff = 0.0
    for x in INTEGRAL_GRID:
        if x - 1.0 + p.ratio() > 300.0:
            continue
        d = gamma_e_integral(x, p, cfg).log_abs - log_gamma_e_closed(x, p)
        diff = max(diff, abs(math.expm1(d)))
    report.add(
        "integral vs closed form on x in {0.5, 1, 2.5, 5, 20} (rel)",
        diff,
        10.0 * cfg.rel_tolerance,
    )

    for i in CONVERGENCE_I:
        d = abs(log_gamma_e_euler_maclaurin(i, p, order=2) - gamma_e_product(i, p).log_abs)
        report.add(f"Euler-Maclaurin order 2 vs product, i={i} (log abs)", d, 1e-8)

    A = constant_A(p)
    for x in (10.0, 100.0, 1000.0):
        d = abs(stirling_asymptotic_log(x, p) - euler_asymptotic_log(x, p, A))
        report.add(f"Stirling-applied form = Euler form with closed A, x={x:g}", d, 1e-10)

    C = integration_constant(p)
    got = ansatz_value(1.0, p, C, cfg)
    report.add("ansatz with fitted C reproduces G(1) = a (rel)", abs(got / p.a - 1.0), 1e-10)

    for lam in LAMBDAS:
        q = p.scaled(lam)
        d = max(
            abs(log_gamma_e_closed(x, q) - (x * math.log(lam) + log_gamma_e_closed(x, p)))
            / max(1.0, abs(log_gamma_e_closed(x, q)))
            for x in (0.5, 3.0, 17.25)
        )
        d = max(
            d,
            max(
                abs(gamma_e_product(i, q).log_abs - (i * math.log(lam) + gamma_e_product(i, p).log_abs))
                / max(1.0, abs(gamma_e_product(i, q).log_abs))
                for i in (1, 7, 40)
            ),
        )
        report.add(f"scaling G(x; la, lb) = l^x G(x; a, b), l={lam:g} (rel)", d, 1e-11)
        ratio = constant_A(q) / (constant_A(p) * lam ** (0.5 - p.ratio()))
        report.add(f"scaling A(la, lb) = A(a, b) l^(1/2-a/b), l={lam:g} (rel)", abs(ratio - 1.0), 1e-11)
    return report


def _ratio_point(p: Params) -> tuple[float, float]:
    """A (y, h) where |Q'''| is well away from zero, so the h-halving ratio is clean.

    h is 1/50 of the local length scale of Q, keeping truncation dominant
    over both rounding and the next-order term.
    """
    r = p.ratio()
    best, best_score, best_h = 1.0, -1.0, 0.02
    candidates = (1.0, 2.0, 0.5, 3.0, 5.0, p.b * r) + tuple(p.b * k for k in (0.5, 1.0, 2.0, 4.0))
    for y in candidates:
        g = r / y - 1.0 / p.b
        g1, g2 = -r / y**2, 2.0 * r / y**3
        q3 = abs(g**3 + 3.0 * g * g1 + g2)
        score = q3 / (abs(g) ** 3 + abs(3.0 * g * g1) + abs(g2))
        if score > best_score:
            length = min(y, 1.0 / max(abs(g), abs(g1) ** 0.5, abs(g2) ** (1.0 / 3.0)))
            best, best_score, best_h = y, score, length / 50.0
    return best, best_h


def ode_order_ratio(y: float, p: Params, C: float, h: float) -> float:
    r1 = ode_system_residual(y, p, C, h).checks[0].residual
    r2 = ode_system_residual(y, p, C, h / 2.0).checks[0].residual
    return r1 / r2


def ode_suite(p: Params) -> VerifyReport:
    report = VerifyReport("ode")
    y_ratio, h_ratio = _ratio_point(p)
    for C in C_VALUES:
        for y in (0.5, 1.0, 3.0):
            report.extend(ode_system_residual(y, p, C, 1e-4 * y))
        ratio = ode_order_ratio(y_ratio, p, C, h_ratio)
        report.add(
            f"central difference order 2: residual ratio under h halving at y={y_ratio:g}, C={C:g} "
            f"(= {ratio:.4f}, must lie in [3.5, 4.5])",
            abs(ratio - 4.0),
            0.5,
        )
    return report


def boundary_suite(p: Params) -> VerifyReport:
    report = VerifyReport("boundary")
    for x in (0.5, 2.0):
        for C in C_VALUES:
            report.extend(boundary_check(x, p, C), prefix=f"x={x:g}: ")
    return report


def auxiliary_suite(p: Params, cfg: QuadratureConfig | None = None) -> VerifyReport:
    cfg = cfg or QuadratureConfig()
    report = VerifyReport("auxiliary")
    for C in C_VALUES:
        for x in (1.0, 2.0, 2.5):
            for y_hi in (0.5, 3.0, 10.0):
                terms = auxiliary_equation_terms(x, y_hi, p, C, cfg)
                residual = abs(terms[0] - terms[1] - terms[2])
                scale = max(abs(t) for t in terms)
                report.add(
                    f"auxiliary equation on [0, {y_hi:g}], x={x:g}, C={C:g}",
                    residual,
                    1e-9 * scale,
                )
    for x in (1.0, 2.5):
        d = (
            gamma_e_integral(x + 1.0, p, cfg).log_abs
            - gamma_e_integral(x, p, cfg).log_abs
            - math.log(p.a + p.b * x)
        )
        report.add(
            f"y_hi -> inf: integral route satisfies G(x+1) = (a+bx) G(x), x={x:g} (rel)",
            abs(math.expm1(d)),
            1e-9,
        )
    return report


def convergence_suite(p: Params) -> VerifyReport:
    report = VerifyReport("convergence")
    records = [estimate_A(i, p) for i in CONVERGENCE_I]
    for rec in records:
        report.add(
            f"A-hat({rec.i}) rel_error <= 1/(6i)", rec.rel_error, 1.0 / (6.0 * rec.i)
        )
    for prev, nxt in zip(records, records[1:]):
        report.add(
            f"rel_error decreases from i={prev.i} to i={nxt.i} (ratio < 1)",
            nxt.rel_error / prev.rel_error,
            math.nextafter(1.0, 0.0),
        )
    return report


SUITES = ("functional", "routes", "ode", "boundary", "auxiliary", "convergence")


def run_suite(
    name: str, p: Params, seed: int = 0, cfg: QuadratureConfig | None = None
) -> VerifyReport:
    if name == "all":
        report = VerifyReport("all")
        for sub in SUITES:
            report.extend(run_suite(sub, p, seed, cfg), prefix=f"{sub}: ")
        return report
    if name == "functional":
        return functional_suite(p, seed)
    if name == "routes":
        return routes_suite(p, cfg)
    if name == "ode":
        return ode_suite(p)
    if name == "boundary":
        return boundary_suite(p)
    if name == "auxiliary":
        return auxiliary_suite(p, cfg)
    if name == "convergence":
        return convergence_suite(p)
    raise ValueError(f"unknown suite {name!r}")
