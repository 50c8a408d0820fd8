"""Command-line front end.

Subcommands build exact polynomials, run the identity suites, compare
exact values against the asymptotic evaluators along segments or circles,
emit all complex zeros, and dump ray fields; everything lands in CSV or
JSON suitable for external plotting.  Output formatting is fixed (17
significant digits, lowercase scientific, LF line endings) so identical
invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .asymptotic import AsymptoticParams, caustic_radius, h_inner, h_outer, ray_grid
from .errors import CausticSingularity, DomainError, GhpError
from .exact import (
    FamilyParams,
    build_diffdiff,
    build_explicit,
    build_recurrence,
    genfun_check,
    ode_residual,
    symmetry_check,
    value_at_zero,
)
from .logcomplex import eval_log_complex
from .poly import poly_to_json_dict
from .roots import all_roots

DEFAULT_PRECISION_BITS = 128

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _fmt(v) -> str:
    return f"{float(v):.16e}"


def _default_precision() -> int:
    env = os.environ.get("GHP_PRECISION_BITS")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_PRECISION_BITS


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _asym_params(args) -> AsymptoticParams:
    return AsymptoticParams(
        r=args.r,
        series_tol=args.series_tol,
        max_terms=args.max_terms,
        newton_tol=args.newton_tol,
        caustic_guard=args.caustic_guard,
    )


# ---------------------------------------------------------------------------
# poly


def run_poly(args) -> int:
    poly = build_diffdiff(FamilyParams(args.r, args.n))
    if args.format == "json":
        text = json.dumps(poly_to_json_dict(poly, args.r, args.n)) + "\n"
    else:
        lines = [f"{e},{c}" for e, c in poly.sorted_terms(descending=True)]
        text = "\n".join(lines) + "\n"
    _write_text(args.out, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _verify_suites(r_max: int, n_max: int):
    """Run every identity suite; yields (name, cases, failures) where
    failures is a list of human-readable counterexample strings."""

    suites = []

    cases = 0
    fails = []
    for r in range(2, r_max + 1):
        for n in range(n_max + 1):
            p = FamilyParams(r, n)
            a, b, c = build_diffdiff(p), build_explicit(p), build_recurrence(p)
            cases += 1
            if not (a == b == c):
                fails.append(f"r={r},n={n}")
    suites.append(("cross-construction", cases, fails))

    cases = 0
    fails = []
    for r in range(2, r_max + 1):
        prev = build_explicit(FamilyParams(r, 0))
        for n in range(n_max):
            nxt = build_explicit(FamilyParams(r, n + 1))
            cases += 1
            if nxt + prev.derivative() != prev.times_monomial(r, r - 1):
                fails.append(f"r={r},n={n}")
            prev = nxt
    suites.append(("diffdiff-closure", cases, fails))

    cases = 0
    fails = []
    for r in range(2, r_max + 1):
        for n in range(n_max + 1):
            cases += 1
            if not ode_residual(FamilyParams(r, n)).is_zero():
                fails.append(f"r={r},n={n}")
    suites.append(("ode-residual", cases, fails))

    cases = 0
    fails = []
    for r in range(2, r_max + 1):
        cases += 1
        if not genfun_check(r, n_max):
            fails.append(f"r={r},n_max={n_max}")
    suites.append(("generating-function", cases, fails))

    cases = 0
    fails = []
    for r in range(2, r_max + 1):
        for n in range(n_max + 1):
            cases += 1
            if not symmetry_check(FamilyParams(r, n)):
                fails.append(f"r={r},n={n}")
    suites.append(("symmetry", cases, fails))

    cases = 0
    fails = []
    for r in range(2, r_max + 1):
        for n in range(n_max + 1):
            p = FamilyParams(r, n)
            cases += 1
            if value_at_zero(p) != build_recurrence(p).coefficient(0):
                fails.append(f"r={r},n={n}")
    suites.append(("value-at-zero", cases, fails))

    return suites


def run_verify(args) -> int:
    suites = _verify_suites(args.r_max, args.n_max)
    all_pass = all(not fails for _, _, fails in suites)
    if args.format == "json":
        report = {
            "r_max": args.r_max,
            "n_max": args.n_max,
            "identities": [
                {
                    "identity": name,
                    "cases": cases,
                    "status": "PASS" if not fails else "FAIL",
                    "counterexamples": fails[:5],
                }
                for name, cases, fails in suites
            ],
            "all_pass": all_pass,
        }
        text = json.dumps(report) + "\n"
    else:
        lines = []
        total = 0
        for name, cases, fails in suites:
            total += cases
            status = "PASS" if not fails else "FAIL"
            line = f"identity={name} cases={cases} status={status}"
            if fails:
                line += f" counterexample={fails[0]}"
            lines.append(line)
        lines.append(
            f"summary identities={len(suites)} cases={total} "
            f"result={'PASS' if all_pass else 'FAIL'}"
        )
        text = "\n".join(lines) + "\n"
    _write_text(args.out, text)
    return EXIT_OK if all_pass else EXIT_VERIFY_FAIL


# ---------------------------------------------------------------------------
# compare


_METHOD_ORDER = ("exact", "outer", "inner", "auto")


def _sweep_points(args) -> list[complex]:
    k = args.samples
    if args.segment is not None:
        re0, im0, re1, im1 = args.segment
        x0, x1 = complex(re0, im0), complex(re1, im1)
        return [x0 + (x1 - x0) * j / (k - 1) for j in range(k)]
    radius, th0, th1 = args.circle
    return [
        complex(radius * math.cos(th), radius * math.sin(th))
        for th in (th0 + (th1 - th0) * j / (k - 1) for j in range(k))
    ]


def _compare_rows(args, params: AsymptoticParams, methods: list[str]):
    fam = FamilyParams(args.r, args.n)
    need_exact = "exact" in methods
    poly = build_diffdiff(fam) if need_exact else None
    xc = caustic_radius(params, float(args.n))
    guard = params.caustic_guard
    rows = []
    for x in _sweep_points(args):
        exact_lc = (
            eval_log_complex(poly, x, args.precision_bits) if need_exact else None
        )
        for method in methods:
            kind = method
            if method == "auto":
                if abs(x) * (1.0 - guard) > xc:
                    kind = "outer"
                elif abs(x) < (1.0 - guard) * xc:
                    kind = "inner"
                else:
                    rows.append((x, method, None, None, "skipped: caustic-guard"))
                    continue
            if kind == "exact":
                if exact_lc.is_zero:
                    rows.append((x, method, None, None, "exact-zero"))
                else:
                    rows.append((x, method, exact_lc, (0.0, 0.0), "ok"))
                continue
            evaluator = h_outer if kind == "outer" else h_inner
            try:
                lc = evaluator(params, x, args.n)
            except (DomainError, CausticSingularity):
                rows.append((x, method, None, None, "skipped: caustic-guard"))
                continue
            if not lc.is_zero and not (
                math.isfinite(float(lc.log_magnitude))
                and math.isfinite(float(lc.argument))
            ):
                rows.append((x, method, None, None, "error: non-finite"))
                continue
            ratio = None
            if exact_lc is not None and not exact_lc.is_zero and not lc.is_zero:
                d = lc.log_ratio(exact_lc)
                ratio = (d.real, d.imag)
            rows.append((x, method, lc, ratio, "ok"))
    return rows


def run_compare(args) -> int:
    requested = {m.strip() for m in args.methods.split(",") if m.strip()}
    methods = [m for m in _METHOD_ORDER if m in requested]
    params = _asym_params(args)
    rows = _compare_rows(args, params, methods)
    lines = ["x_re,x_im,method,log_mag,arg,ratio_log,ratio_arg,status"]
    for x, method, lc, ratio, status in rows:
        log_mag = arg = ratio_log = ratio_arg = ""
        if lc is not None and not lc.is_zero:
            log_mag = _fmt(lc.log_magnitude)
            arg = _fmt(lc.argument)
        if ratio is not None:
            ratio_log = _fmt(ratio[0])
            ratio_arg = _fmt(ratio[1])
        lines.append(
            f"{_fmt(x.real)},{_fmt(x.imag)},{method},"
            f"{log_mag},{arg},{ratio_log},{ratio_arg},{status}"
        )
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# roots


def run_roots(args) -> int:
    rs = all_roots(FamilyParams(args.r, args.n), tol=args.tol)
    if args.format == "json":
        text = json.dumps(rs.to_json_dict()) + "\n"
    else:
        lines = ["re,im,multiplicity"]
        for z, mult in rs.expanded_points():
            lines.append(f"{_fmt(z.real)},{_fmt(z.imag)},{mult}")
        text = "\n".join(lines) + "\n"
    _write_text(args.out, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# rays


def run_rays(args) -> int:
    params = _asym_params(args)
    steps = args.grid_steps
    s_values = [args.s_max * i / steps for i in range(1, steps + 1)]
    t_values = [args.t_max * j / steps for j in range(steps + 1)]
    pts = ray_grid(params, s_values, t_values)
    lines = ["s,t,x,n,p,q,jacobian"]
    for p in pts:
        fields = (p.s, p.t, p.x, p.n, p.p, p.q, p.jacobian)
        if not all(math.isfinite(v) for v in fields):
            raise DomainError(
                f"ray field overflows floats at s={p.s:g}, t={p.t:g}; "
                "shrink --s-max/--t-max"
            )
        lines.append(",".join(_fmt(v) for v in fields))
    _write_text(args.out, "\n".join(lines) + "\n")

    caustic_path = args.caustic_out
    if caustic_path is None and args.out is not None:
        stem, ext = os.path.splitext(args.out)
        caustic_path = f"{stem}_caustic{ext or '.csv'}"
    if caustic_path is not None:
        r = args.r
        clines = ["x,n,xc"]
        for t in t_values:
            if t == 0:
                continue
            s = (r - 1) * t
            x = r * t
            n = r * s ** (r - 1) * t
            clines.append(f"{_fmt(x)},{_fmt(n)},{_fmt(caustic_radius(params, n))}")
        _write_text(caustic_path, "\n".join(clines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_asym_flags(sp) -> None:
    sp.add_argument("--series-tol", type=float, default=1e-14)
    sp.add_argument("--newton-tol", type=float, default=1e-13)
    sp.add_argument("--caustic-guard", type=float, default=0.1)
    sp.add_argument("--max-terms", type=int, default=10000)


def _comma_floats(count: int):
    def parse(text: str) -> tuple[float, ...]:
        parts = text.split(",")
        if len(parts) != count:
            raise argparse.ArgumentTypeError(
                f"expected {count} comma-separated numbers, got {text!r}"
            )
        return tuple(float(p) for p in parts)

    return parse


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ghp",
        description="Generalized Hermite polynomials: exact values, "
        "asymptotics, zeros, ray fields.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("poly", help="emit one exact polynomial")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--format", choices=["csv", "json"], default="json")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=run_poly)

    sp = sub.add_parser("verify", help="run the exact identity suites")
    sp.add_argument("--r-max", type=int, default=4)
    sp.add_argument("--n-max", type=int, default=10)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=run_verify)

    sp = sub.add_parser("compare", help="sweep exact vs asymptotic values")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    path = sp.add_mutually_exclusive_group(required=True)
    path.add_argument(
        "--segment",
        type=_comma_floats(4),
        default=None,
        metavar="RE0,IM0,RE1,IM1",
    )
    path.add_argument(
        "--circle",
        type=_comma_floats(3),
        default=None,
        metavar="RADIUS,THETA0,THETA1",
    )
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument(
        "--methods",
        default="exact,auto",
        help="comma-separated subset of exact,outer,inner,auto",
    )
    sp.add_argument("--precision-bits", type=int, default=_default_precision())
    sp.add_argument("--out", required=True)
    _add_asym_flags(sp)
    sp.set_defaults(func=run_compare)

    sp = sub.add_parser("roots", help="all complex zeros")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--format", choices=["csv", "json"], default="json")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=run_roots)

    sp = sub.add_parser("rays", help="characteristic-flow grid and caustic")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--s-max", type=float, required=True)
    sp.add_argument("--t-max", type=float, required=True)
    sp.add_argument("--grid-steps", type=int, default=20)
    sp.add_argument("--out", required=True)
    sp.add_argument("--caustic-out", default=None)
    _add_asym_flags(sp)
    sp.set_defaults(func=run_rays)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(parser, args)
        return args.func(args)
    except OverflowError:
        print("error: floating-point overflow; inputs exceed double range",
              file=sys.stderr)
        return EXIT_NUMERIC
    except GhpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def _validate(parser: argparse.ArgumentParser, args) -> None:
    if getattr(args, "r", 2) < 2:
        parser.error("--r must be >= 2")
    if getattr(args, "n", 0) < 0:
        parser.error("--n must be >= 0")
    if args.command == "compare":
        if args.n < 1:
            parser.error("compare requires --n >= 1")
        if args.samples < 2:
            parser.error("--samples must be >= 2")
        if args.circle is not None and args.circle[0] <= 0:
            parser.error("--circle radius must be > 0")
        requested = [m.strip() for m in args.methods.split(",") if m.strip()]
        if not requested:
            parser.error("--methods must name at least one method")
        for m in requested:
            if m not in _METHOD_ORDER:
                parser.error(f"unknown method {m!r}")
    if args.command == "roots" and args.n < 1:
        parser.error("roots requires --n >= 1")
    if args.command == "rays":
        if args.s_max <= 0 or args.t_max <= 0:
            parser.error("--s-max and --t-max must be > 0")
        if args.grid_steps < 1:
            parser.error("--grid-steps must be >= 1")


if __name__ == "__main__":
    sys.exit(main())
