"""Acceptance criteria 1-9.

Run with ``pytest tests/test_acceptance.py`` (or execute this file); the
terminal summary prints one PASS/FAIL line per criterion.
"""

import csv
import io
import json
import math
import random
import time

import pytest

from gammae.cli import main
from gammae.gamma_e import (
    Params,
    constant_A,
    estimate_A,
    functional_equation_residual,
    gamma_e_product,
    log_constant_A,
    log_gamma_e_closed,
    log_gamma_e_euler_maclaurin,
)
from gammae.quadrature import gamma_e_integral
from gammae.suites import ode_order_ratio
from gammae.verify import (
    auxiliary_equation_residual,
    auxiliary_equation_terms,
    boundary_check,
    ode_system_residual,
)

FIVE_PAIRS = [(1, 1), (1, 2), (2, 1), (3, 0.5), (0.5, 3)]
SIXTEEN_PAIRS = [(a, b) for a in (0.25, 1, 2.5, 10) for b in (0.25, 1, 2.5, 10)]
QUAD_X = (0.5, 1, 2.5, 5, 20)
QUAD_PAIRS = [(1, 1), (1, 2), (2, 1), (3, 0.5)]
C_VALUES = (-1.0, 2.0, 10.0)
LAMBDAS = (0.5, 2.0, 10.0)


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


@pytest.mark.criterion(1, "empirical A(1e4) within 2e-5 of closed-form A on five pairs, < 1 s each")
@pytest.mark.parametrize("a,b", FIVE_PAIRS)
def test_constant_a_reproduction(a, b):
    rec, elapsed = timed(lambda: estimate_A(10**4, Params(a, b)))
    assert rec.a_closed == pytest.approx(constant_A(Params(a, b)), rel=1e-15)
    assert rec.rel_error <= 2e-5
    assert elapsed < 1.0


@pytest.mark.criterion(2, "rel_error of empirical A at i = 1e2, 1e3, 1e4 is 1/(12 i) within 20%, < 1 s")
def test_convergence_rate():
    p = Params(1, 1)
    recs, elapsed = timed(lambda: [estimate_A(i, p) for i in (100, 1000, 10000)])
    for r in recs:
        assert abs(r.rel_error * 12 * r.i - 1.0) <= 0.2, r
    assert elapsed < 1.0


@pytest.mark.criterion(3, "product vs closed form to 1e-11 (log abs) for i in 1..50 on 16 pairs, < 0.1 s")
def test_product_closed_equivalence():
    def sweep():
        worst = 0.0
        for a, b in SIXTEEN_PAIRS:
            p = Params(a, b)
            for i in range(1, 51):
                worst = max(worst, abs(gamma_e_product(i, p).log_abs - log_gamma_e_closed(i, p)))
        return worst

    worst, elapsed = timed(sweep)
    assert worst <= 1e-11
    assert elapsed < 0.1


@pytest.mark.criterion(4, "integral vs closed form to 1e-9 relative on the 20-point grid, < 5 s")
def test_quadrature_equivalence():
    def sweep():
        worst = 0.0
        for a, b in QUAD_PAIRS:
            p = Params(a, b)
            for x in QUAD_X:
                d = gamma_e_integral(x, p).log_abs - log_gamma_e_closed(x, p)
                worst = max(worst, abs(math.expm1(d)))
        return worst

    worst, elapsed = timed(sweep)
    assert worst <= 1e-9
    assert elapsed < 5.0


@pytest.mark.criterion(5, "ODE order-2 ratio, auxiliary residual and boundary decay for C in {-1, 2, 10}, < 5 s")
def test_derivation_suite():
    pairs = [(1, 1), (2, 1), (1, 2), (3, 0.5)]

    def sweep():
        failures = []
        for a, b in pairs:
            p = Params(a, b)
            for C in C_VALUES:
                ratio = ode_order_ratio(1.0, p, C, 1e-2)
                if not 3.5 <= ratio <= 4.5:
                    failures.append(("order ratio", a, b, C, ratio))
                if not ode_system_residual(1.0, p, C, 1e-4).overall_pass:
                    failures.append(("ode residual", a, b, C))
                for x in (0.5, 2.0, 5.0):
                    for y_hi in (0.5, 3.0, 30.0):
                        scale = max(abs(t) for t in auxiliary_equation_terms(x, y_hi, p, C))
                        res = auxiliary_equation_residual(x, y_hi, p, C)
                        if not res <= 1e-9 * scale:
                            failures.append(("auxiliary", a, b, C, x, y_hi, res / scale))
                    rep = boundary_check(x, p, C)
                    if not rep.overall_pass or not rep.evidence:
                        failures.append(("boundary", a, b, C, x))
        return failures

    failures, elapsed = timed(sweep)
    assert failures == []
    assert elapsed < 5.0


@pytest.mark.criterion(6, "functional equation over 1000 seeded samples, max residual <= 1e-10, < 1 s")
def test_functional_equation_sweep():
    rng = random.Random(20240601)

    def sweep():
        worst = 0.0
        for _ in range(1000):
            a = math.exp(rng.uniform(math.log(0.1), math.log(10.0)))
            b = math.exp(rng.uniform(math.log(0.1), math.log(10.0)))
            p = Params(a, b)
            x = math.exp(rng.uniform(math.log(1e-2), math.log(1e3))) - p.ratio()
            worst = max(worst, functional_equation_residual(x, p))
        return worst

    worst, elapsed = timed(sweep)
    assert worst <= 1e-10
    assert elapsed < 1.0


@pytest.mark.criterion(7, "lambda-scaling of G and A to 1e-11 relative for lambda in {0.5, 2, 10}, < 0.1 s")
def test_scaling_identities():
    def sweep():
        worst = 0.0
        for a, b in FIVE_PAIRS:
            p = Params(a, b)
            for lam in LAMBDAS:
                q = p.scaled(lam)
                for x in (0.5, 3.0, 17.5, 50.0):
                    d = log_gamma_e_closed(x, q) - x * math.log(lam) - log_gamma_e_closed(x, p)
                    worst = max(worst, abs(math.expm1(d)))
                for i in (1, 7, 50):
                    d = gamma_e_product(i, q).log_abs - i * math.log(lam) - gamma_e_product(i, p).log_abs
                    worst = max(worst, abs(math.expm1(d)))
                d = log_constant_A(q) - log_constant_A(p) - (0.5 - p.ratio()) * math.log(lam)
                worst = max(worst, abs(math.expm1(d)))
        return worst

    worst, elapsed = timed(sweep)
    assert worst <= 1e-11
    assert elapsed < 0.1


@pytest.mark.criterion(8, "Euler-Maclaurin order 2 within 1e-8 (log) of the product for every i in [100, 1e4], < 1 s")
@pytest.mark.parametrize("a,b", FIVE_PAIRS)
def test_euler_maclaurin_route(a, b):
    p = Params(a, b)

    def sweep():
        # running compensated sum of ln(a + k b) gives the exact log for every i
        total, comp = 0.0, 0.0
        worst = 0.0
        exact = {}
        for k in range(10**4):
            term = math.log(a + k * b)
            t = total + term
            comp += (total - t) + term if abs(total) >= abs(term) else (term - t) + total
            total = t
            i = k + 1
            if i >= 100:
                log_exact = total + comp
                if i in (100, 1234, 10**4):
                    exact[i] = log_exact
                worst = max(worst, abs(log_gamma_e_euler_maclaurin(i, p, order=2) - log_exact))
        return worst, exact

    (worst, exact), elapsed = timed(sweep)
    for i, v in exact.items():
        assert v == pytest.approx(gamma_e_product(i, p).log_abs, rel=1e-15, abs=1e-13)
    assert worst <= 1e-8
    assert elapsed < 1.0


def _cli(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


@pytest.mark.criterion(9, "CLI examples for table, constant-a and verify")
def test_cli_contract(capsys):
    # table
    status, out, _ = _cli(capsys, "table", "--a", "1", "--b", "1", "--i", "100,1000,10000", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert status == 0
    assert out.splitlines()[0] == "i,a_hat,a_closed,rel_error"
    assert [int(r["i"]) for r in rows] == [100, 1000, 10000]
    for r in rows:
        assert abs(float(r["rel_error"]) * 12 * int(r["i"]) - 1.0) <= 0.2
    status, out, _ = _cli(capsys, "table", "--a", "1", "--b", "2", "--i", "10,100", "--format", "json")
    errs = [r["rel_error"] for r in json.loads(out)["rows"]]
    assert status == 0 and errs[0] > errs[1]
    with pytest.raises(SystemExit) as info:
        main(["table", "--a", "1", "--b", "1", "--i", ""])
    assert info.value.code != 0
    capsys.readouterr()

    # constant-a
    status, out, _ = _cli(capsys, "constant-a", "--a", "1", "--b", "1")
    assert status == 0 and out.strip() == "A = 2.50662827463100"
    status, out, _ = _cli(capsys, "constant-a", "--a", "1", "--b", "2", "--empirical", "1000", "--format", "json")
    doc = json.loads(out)
    assert status == 0
    assert f"{doc['A']:.6g}" == "2.33164"
    assert doc["empirical"]["rel_error"] <= 2e-4
    status, out, _ = _cli(capsys, "constant-a", "--a", "2", "--b", "1")
    assert status == 0 and out.strip() == "A = 0.922137008895789"

    # verify
    status, out, _ = _cli(capsys, "verify", "--suite", "functional", "--a", "7", "--b", "3",
                          "--seed", "42", "--format", "json")
    doc = json.loads(out)
    assert status == 0 and doc["overall_pass"]
    assert max(c["residual"] for c in doc["checks"]) <= 1e-10
    status, out, _ = _cli(capsys, "verify", "--suite", "boundary", "--a", "1", "--b", "1")
    assert status == 0 and "decay evidence" in out and "overall: PASS" in out
    status, out, _ = _cli(capsys, "verify", "--suite", "all", "--a", "1", "--b", "1")
    assert status == 0 and out.rstrip().endswith("overall: PASS")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
