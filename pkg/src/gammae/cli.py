"""Command-line interface: ``gammae {eval,constant-a,verify,table}``.

Exit status: 0 success, 1 verification check failed, 2 usage error,
3 domain error, 4 quadrature convergence failure, 5 suite infrastructure
failure.  Errors print one line ``error: <CODE>: <message>`` to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .errors import ConvergenceError, DomainError, GammaEError
from .gamma_e import (
    Params,
    constant_A,
    estimate_A,
    gamma_e_closed,
    gamma_e_euler_maclaurin,
    gamma_e_product,
    log_constant_A,
)
from .quadrature import QuadratureConfig, gamma_e_integral
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_CONVERGENCE = 4
EXIT_SUITE = 5

METHODS = ("product", "closed", "integral", "euler-maclaurin")


def fmt15(v) -> str:
    if v is None:
        return "overflow"
    return f"{v:#.15g}"


def _safe_real(log_abs, sign):
    try:
        return sign * math.exp(log_abs)
    except OverflowError:
        return None


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _integer_x(x: float, method: str) -> int:
    if not float(x).is_integer():
        raise DomainError(f"method {method} requires integer x, got {x}")
    return int(x)


def cmd_eval(args) -> tuple[str, int]:
    p = Params(args.a, args.b)
    if args.method == "product":
        lv = gamma_e_product(_integer_x(args.x, "product"), p)
    elif args.method == "euler-maclaurin":
        lv = gamma_e_euler_maclaurin(_integer_x(args.x, "euler-maclaurin"), p, order=args.order)
    elif args.method == "closed":
        lv = gamma_e_closed(args.x, p)
    else:
        lv = gamma_e_integral(args.x, p, QuadratureConfig(rel_tolerance=args.tol))
    value = _safe_real(lv.log_abs, lv.sign)
    doc = {
        "a": p.a,
        "b": p.b,
        "x": args.x,
        "method": args.method,
        "value_log": lv.log_abs,
        "value": value,
        "sign": lv.sign,
    }
    if args.format == "json":
        return _json(doc), EXIT_OK
    if args.format == "csv":
        return _csv(list(doc), [list(doc.values())]), EXIT_OK
    if args.log:
        return fmt15(lv.log_abs) + "\n", EXIT_OK
    if value is None:
        return f"exp({fmt15(lv.log_abs)})\n", EXIT_OK
    return fmt15(value) + "\n", EXIT_OK


def cmd_constant_a(args) -> tuple[str, int]:
    p = Params(args.a, args.b)
    A = constant_A(p)
    rec = None
    if args.empirical is not None:
        if args.empirical < 2:
            raise DomainError(f"--empirical must be >= 2, got {args.empirical}")
        rec = estimate_A(args.empirical, p)
    if args.format == "json":
        doc = {
            "a": p.a,
            "b": p.b,
            "A": A,
            "log_A": log_constant_A(p),
            "empirical": rec.as_dict() if rec else None,
        }
        return _json(doc), EXIT_OK
    if args.format == "csv":
        header = ["a", "b", "A"]
        row = [p.a, p.b, A]
        if rec:
            header += ["i", "a_hat", "a_closed", "rel_error"]
            row += [rec.i, rec.a_hat, rec.a_closed, rec.rel_error]
        return _csv(header, [row]), EXIT_OK
    lines = [f"A = {fmt15(A)}"]
    if rec:
        lines.append(f"A_hat({rec.i}) = {fmt15(rec.a_hat)}")
        lines.append(f"rel_error = {rec.rel_error:.6e}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_table(args) -> tuple[str, int]:
    p = Params(args.a, args.b)
    records = [estimate_A(i, p) for i in args.i]
    if args.format == "json":
        doc = {"a": p.a, "b": p.b, "rows": [r.as_dict() for r in records]}
        return _json(doc), EXIT_OK
    if args.format == "csv":
        rows = [[r.i, r.a_hat, r.a_closed, r.rel_error] for r in records]
        return _csv(["i", "a_hat", "a_closed", "rel_error"], rows), EXIT_OK
    lines = [f"{'i':>10}  {'a_hat':>22}  {'a_closed':>22}  {'rel_error':>12}"]
    for r in records:
        lines.append(f"{r.i:>10}  {fmt15(r.a_hat):>22}  {fmt15(r.a_closed):>22}  {r.rel_error:>12.4e}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    p = Params(args.a, args.b)
    try:
        report = run_suite(args.suite, p, seed=args.seed)
    except GammaEError:
        raise
    except Exception as exc:  # suite machinery, not a failed check
        raise _SuiteFailure(f"{type(exc).__name__}: {exc}") from exc
    status = EXIT_OK if report.overall_pass else EXIT_CHECK_FAILED
    if args.format == "json":
        doc = {"a": p.a, "b": p.b, "seed": args.seed, **report.as_dict()}
        return _json(doc), status
    if args.format == "csv":
        rows = [[c.label, c.residual, c.tolerance, c.passed] for c in report.checks]
        return _csv(["label", "residual", "tolerance", "pass"], rows), status
    lines = [f"suite {report.suite_name}  a={p.a:g} b={p.b:g} seed={args.seed}"]
    for c in report.checks:
        mark = "PASS" if c.passed else "FAIL"
        lines.append(f"  {mark}  residual={c.residual:.3e}  tol={c.tolerance:.3e}  {c.label}")
    if report.evidence:
        lines.append("  decay evidence (ln|y^x Q(y)|):")
        lines.append(f"    {'end':>4}  {'C':>6}  {'y':>10}  {'log_abs':>14}")
        for e in report.evidence:
            lines.append(f"    {e['end']:>4}  {e['C']:>6g}  {e['y']:>10.3g}  {e['log_abs']:>14.6f}")
    lines.append("overall: " + ("PASS" if report.overall_pass else "FAIL"))
    return "\n".join(lines) + "\n", status


class _SuiteFailure(Exception):
    code = "SUITE_ERROR"


def _int_list(text: str) -> list[int]:
    parts = [t.strip() for t in text.split(",") if t.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("expected a non-empty comma-separated list of integers")
    try:
        values = [int(t) for t in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gammae",
        description="Euler's generalized factorial a(a+b)...(a+(i-1)b) and its asymptotic constant A.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--a", type=float, required=True)
        sp.add_argument("--b", type=float, required=True)
        sp.add_argument("--format", choices=("human", "json", "csv"), default="human")

    sp = sub.add_parser("eval", help="evaluate G(x) by one of four routes")
    common(sp)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--method", choices=METHODS, default="closed")
    sp.add_argument("--log", action="store_true", help="print ln G(x) instead of G(x)")
    sp.add_argument("--order", type=int, choices=(0, 1, 2), default=2,
                    help="Euler-Maclaurin correction order")
    sp.add_argument("--tol", type=float, default=1e-10, help="quadrature relative tolerance")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("constant-a", help="closed-form A, optionally with the empirical estimate")
    common(sp)
    sp.add_argument("--empirical", type=int, metavar="I")
    sp.set_defaults(func=cmd_constant_a)

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp)
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("table", help="empirical-A convergence table")
    common(sp)
    sp.add_argument("--i", type=_int_list, required=True, metavar="I1,I2,...")
    sp.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, status = args.func(args)
    except DomainError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except _SuiteFailure as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_SUITE
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
