"""Acceptance suite: every criterion at its stated tolerance, one
pass/fail line printed per criterion (run with -s to see them live)."""

import cmath
import math
import subprocess
import sys
import time
from fractions import Fraction

from ghp.asymptotic import (
    AsymptoticParams,
    caustic_radius,
    eikonal_residual,
    h_inner,
    h_outer,
    t_inner,
    t_outer,
)
from ghp.exact import (
    FamilyParams,
    build_diffdiff,
    build_explicit,
    build_recurrence,
    genfun_check,
    ode_residual,
    symmetry_check,
    value_at_zero,
)
from ghp.logcomplex import eval_log_complex
from ghp.poly import eval_exact
from ghp.roots import all_roots


def _report(num: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[criterion {num:02d}] {name}: {status}{suffix}")
    assert ok, f"criterion {num} ({name}) failed{suffix}"


def test_criterion_01_cross_construction_equality():
    t0 = time.monotonic()
    ok = True
    for r in range(2, 7):
        for n in range(26):
            p = FamilyParams(r, n)
            a = build_diffdiff(p)
            ok = ok and a == build_explicit(p) and a == build_recurrence(p)
    elapsed = time.monotonic() - t0
    _report(1, "cross-construction equality", ok and elapsed < 30.0,
            f"r=2..6 n=0..25, {elapsed:.2f}s")


def test_criterion_02_exact_identities():
    ode_ok = all(
        ode_residual(FamilyParams(r, n)).is_zero()
        for r in range(2, 6)
        for n in range(13)
    )
    gen_ok = all(genfun_check(r, 8) for r in range(2, 6))
    vz_ok = all(
        value_at_zero(FamilyParams(r, n))
        == build_recurrence(FamilyParams(r, n)).coefficient(0)
        for r in range(2, 7)
        for n in range(31)
    )
    sym_ok = all(
        symmetry_check(FamilyParams(r, n)) for r in range(2, 7) for n in range(31)
    )
    _report(2, "exact identities", ode_ok and gen_ok and vz_ok and sym_ok,
            f"ode={ode_ok} genfun={gen_ok} value0={vz_ok} symmetry={sym_ok}")


def test_criterion_03_caustic_value():
    xc = caustic_radius(AsymptoticParams(5), 5.0)
    _report(3, "caustic radius X_c(5) for r=5", abs(xc - 1.649) <= 1e-3,
            f"X_c={xc:.6f}")


def test_criterion_04_series_vs_closed_forms():
    from ghp.asymptotic import mu, rho

    t0 = time.monotonic()
    ap2, ap3 = AsymptoticParams(2), AsymptoticParams(3)
    ok = True
    for k in range(1, 21):
        z = 0.8 * 0.25 * k / 20
        ok = ok and abs(rho(ap2, z) - math.sqrt(1 - 4 * z)) <= 1e-12
    r3_radius = (2 / 3) ** 3 / 2
    for k in range(1, 21):
        z = 0.8 * r3_radius * k / 20
        want = math.cos(2 / 3 * math.asin(1.5 * math.sqrt(3 * z)))
        ok = ok and abs(rho(ap3, z) - want) <= 1e-12
    for k in range(1, 21):
        z = 0.8 * 2.0 * k / 20
        want = 1 + z / (2 + math.sqrt(4 + z * z))
        ok = ok and abs(mu(ap2, z) - want) <= 1e-12
    elapsed = time.monotonic() - t0
    _report(4, "series vs closed forms", ok and elapsed < 1.0,
            f"60 points, {elapsed:.3f}s")


def test_criterion_05_branch_residuals():
    worst_outer = 0.0
    n_outer = 0
    for r in (2, 3, 5):
        ap = AsymptoticParams(r)
        for n in (1.0, 2.0, 5.0, 10.0, 25.0, 40.0):
            xc = caustic_radius(ap, n)
            for c in (1.2, 1.5, 3.0, 8.0):
                for th in (0.0, math.pi / (3 * r), -math.pi / (2 * r)):
                    x = c * xc * cmath.exp(1j * th) if xc > 0 else c
                    tb = t_outer(ap, x, n)
                    worst_outer = max(worst_outer, tb.residual)
                    n_outer += 1
    worst_inner = 0.0
    n_inner = 0
    for r in (2, 3, 5):
        ap = AsymptoticParams(r)
        for n in (2.0, 5.0, 10.0, 40.0):
            xc = caustic_radius(ap, n)
            for frac in (0.2, 0.55, 0.85):
                for th in (0.0, math.pi / (2 * r)):
                    x = frac * (1 - ap.caustic_guard) * xc * cmath.exp(1j * th)
                    for l in range(1, r + 1):
                        tb = t_inner(ap, x, n, l)
                        worst_inner = max(worst_inner, tb.residual)
                        n_inner += 1
    ok = worst_outer <= 1e-12 and worst_inner <= 1e-12
    _report(5, "implicit-equation residuals", ok and n_outer >= 200 and n_inner >= 200,
            f"outer: {n_outer} pts max {worst_outer:.2e}; "
            f"inner: {n_inner} pts max {worst_inner:.2e}")


def test_criterion_06_eikonal_convergence_order():
    cases = [
        (2, 6.0, 4.0), (2, 8.0, 10.0), (2, 10.0, 3.0),
        (3, 4.0, 6.0), (3, 5.0, 10.0), (3, 7.0, 2.0),
        (5, 3.0, 5.0), (5, 4.0, 12.0), (5, 6.0, 40.0), (5, 2.8, 3.0),
    ]
    orders = []
    for r, x, n in cases:
        ap = AsymptoticParams(r)
        r1 = eikonal_residual(ap, x, n, 1e-2)
        r2 = eikonal_residual(ap, x, n, 5e-3)
        orders.append(math.log2(r1 / r2))
    ok = all(o >= 1.8 for o in orders)
    _report(6, "eikonal residual order", ok,
            f"min order {min(orders):.3f} over {len(cases)} points")


def test_criterion_07_outer_accuracy_improves_with_n():
    t0 = time.monotonic()
    ok = True
    details = []
    for r in (2, 3, 5):
        ap = AsymptoticParams(r)
        errs = {}
        for n in (10, 40):
            xc = caustic_radius(ap, float(n))
            x = 1.5 * xc
            exact = eval_log_complex(build_explicit(FamilyParams(r, n)), x, 256)
            approx = h_outer(ap, x, n)
            errs[n] = abs(cmath.exp(approx.log_ratio(exact)) - 1)
        ok = ok and errs[40] < errs[10] and errs[40] <= 0.05
        details.append(f"r={r}: {errs[10]:.1e}->{errs[40]:.1e}")
    elapsed = time.monotonic() - t0
    _report(7, "outer accuracy vs exact (256-bit)", ok and elapsed < 60.0,
            "; ".join(details) + f", {elapsed:.2f}s")


def test_criterion_08_inner_reality_and_zero_tracking():
    ap = AsymptoticParams(5, caustic_guard=0.04)  # segment reaches 0.95 Xc
    xc = caustic_radius(ap, 5.0)
    lo, hi = 0.1, 0.95 * xc
    xs = [lo + (hi - lo) * k / 400 for k in range(401)]
    worst_imag = 0.0
    signs = []
    for x in xs:
        v = h_inner(ap, x, 5)
        worst_imag = max(worst_imag, abs(math.sin(float(v.argument))))
        signs.append(1 if math.cos(float(v.argument)) > 0 else -1)
    reality_ok = worst_imag <= 1e-8

    def sign_at(x):
        v = h_inner(ap, x, 5)
        return 1 if math.cos(float(v.argument)) > 0 else -1

    flips = []
    for (a, sa), (b, sb) in zip(zip(xs, signs), zip(xs[1:], signs[1:])):
        if sa != sb:
            while b - a > 1e-6:
                m = 0.5 * (a + b)
                if sign_at(m) == sa:
                    a = m
                else:
                    b = m
            flips.append(0.5 * (a + b))
    exact_roots = [
        o.radius for o in all_roots(FamilyParams(5, 5)).orbits if lo < o.radius < hi
    ]
    track_ok = len(flips) == len(exact_roots) and all(
        abs(f - rt) <= 0.05 for f, rt in zip(flips, exact_roots)
    )
    _report(8, "inner reality and zero tracking", reality_ok and track_ok,
            f"max rel imag {worst_imag:.1e}; "
            f"{len(flips)} sign changes vs {len(exact_roots)} roots")


def test_criterion_09_root_structure():
    ok = True
    for r in range(2, 6):
        for n in range(1, 11):
            rs = all_roots(FamilyParams(r, n))
            ok = ok and rs.total_multiplicity() == n * (r - 1)
            ok = ok and rs.zero_multiplicity == r * math.ceil(n / r) - n

    # r=2, n=6: three positive roots against an exact bisection oracle
    p = FamilyParams(2, 6)
    poly = build_diffdiff(p)

    def bisect(a: Fraction, b: Fraction) -> float:
        fa = eval_exact(poly, a)
        for _ in range(70):
            m = (a + b) / 2
            fm = eval_exact(poly, m)
            if fm == 0:
                return float(m)
            if (fa > 0) == (fm > 0):
                a, fa = m, fm
            else:
                b = m
        return float((a + b) / 2)

    grid = [Fraction(k, 10) for k in range(1, 40)]
    oracle = [
        bisect(a, b)
        for a, b in zip(grid, grid[1:])
        if (eval_exact(poly, a) > 0) != (eval_exact(poly, b) > 0)
    ]
    got = [o.radius for o in all_roots(p, tol=1e-12).orbits]
    h6_ok = len(oracle) == 3 and all(
        abs(g - o) <= 1e-10 for g, o in zip(got, oracle)
    )

    rs55 = all_roots(FamilyParams(5, 5))
    penta_ok = (
        len(rs55.orbits) == 4
        and rs55.zero_multiplicity == 0
        and rs55.non_real_q_roots == ()
    )
    _report(9, "root multiplicities and structure", ok and h6_ok and penta_ok,
            f"identities={ok} h6-oracle={h6_ok} pentagonal={penta_ok}")


def test_criterion_10_cli_determinism(tmp_path):
    def run(*args):
        proc = subprocess.run(
            [sys.executable, "-m", "ghp", *args], capture_output=True
        )
        assert proc.returncode == 0, proc.stderr.decode()
        return proc.stdout

    ok = True
    for args in (
        ("poly", "--r", "5", "--n", "7", "--format", "csv"),
        ("poly", "--r", "3", "--n", "4"),
        ("verify", "--r-max", "3", "--n-max", "5"),
        ("roots", "--r", "5", "--n", "5"),
        ("roots", "--r", "2", "--n", "6", "--format", "csv"),
    ):
        ok = ok and run(*args) == run(*args)

    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    cargs = ("compare", "--r", "5", "--n", "5", "--segment", "0.2,0,7,0.1",
             "--samples", "30", "--methods", "exact,outer,inner,auto")
    run(*cargs, "--out", str(f1))
    run(*cargs, "--out", str(f2))
    ok = ok and f1.read_bytes() == f2.read_bytes()

    r1, r2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
    run("rays", "--r", "5", "--s-max", "4", "--t-max", "1",
        "--grid-steps", "10", "--out", str(r1))
    run("rays", "--r", "5", "--s-max", "4", "--t-max", "1",
        "--grid-steps", "10", "--out", str(r2))
    ok = ok and r1.read_bytes() == r2.read_bytes()
    ok = ok and (tmp_path / "r1_caustic.csv").read_bytes() == (
        tmp_path / "r2_caustic.csv"
    ).read_bytes()
    _report(10, "CLI determinism", ok, "byte-identical reruns for all commands")
