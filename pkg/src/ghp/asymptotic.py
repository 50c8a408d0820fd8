"""Ray-method asymptotics for the generalized Hermite family.

A discrete WKB ansatz exp(f + g) applied to the differential-difference
step yields an eikonal equation for the phase f and a transport equation
for the amplitude g.  Solving along characteristics ("rays") gives a
closed phase once the ray time t(x, n) is known; t satisfies the
polynomial equation r (x - t)^(r-1) t = n, inverted here by power series
(one branch outside the caustic circle, r branches inside) and sharpened
by Newton refinement.  All evaluators work in the log domain so that
exp(x^r)-sized values never overflow.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CausticSingularity, ConvergenceError, DomainError
from .logcomplex import LogComplex, normalize_angle

#: amplitude_g refuses when |x - r t| falls below this fraction of |x| + r|t|
CAUSTIC_EPS = 1e-12


@dataclass(frozen=True)
class AsymptoticParams:
    """Knobs for the asymptotic evaluators.

    ``caustic_guard`` g keeps every branch away from the caustic circle:
    outer formulas require |x| > X_c/(1-g), inner ones |x| < (1-g) X_c.
    """

    r: int
    series_tol: float = 1e-14
    max_terms: int = 10000
    newton_tol: float = 1e-13
    caustic_guard: float = 0.1

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 2:
            raise ValueError(f"r must be an integer >= 2, got {self.r!r}")
        if not (0.0 < self.caustic_guard < 1.0):
            raise ValueError("caustic_guard must lie in (0, 1)")
        if self.series_tol <= 0 or self.newton_tol <= 0 or self.max_terms < 1:
            raise ValueError("tolerances must be positive")

    @property
    def lam(self) -> float:
        """(r - 1) / r, always in [1/2, 1)."""
        return (self.r - 1) / self.r


@dataclass(frozen=True)
class TBranch:
    """One solution t(x, n) of r (x - t)^(r-1) t = n.

    ``residual`` is |r (x - t)^(r-1) t - n| / max(n, 1) for the stored value.
    """

    kind: str  # "outer" or "inner"
    value: complex
    residual: float
    l: int | None = None  # inner sheet index, 1..r


@dataclass(frozen=True)
class RayPoint:
    """One point of the characteristic flow of the eikonal equation."""

    s: float
    t: float
    x: float
    n: float
    p: float
    q: float
    jacobian: float


def caustic_radius(params: AsymptoticParams, n: float) -> float:
    """Radius X_c(n) of the caustic circle where the ray family folds."""
    if n < 0:
        raise ValueError("n must be >= 0")
    lam = params.lam
    return lam ** (-lam) * n ** (1.0 - lam)


def rho(params: AsymptoticParams, z: complex) -> complex:
    """Series sum_k C(rk, k) z^k / (1 - rk), the outer-branch inversion kernel.

    Converges for |z| < lam^r / (r - 1); callers must stay inside the
    guarded disc |z| <= (1 - caustic_guard) * radius.  Truncation stops
    once a geometric tail bound drops below series_tol relative to the
    partial sum.
    """
    r = params.r
    radius = params.lam**r / (r - 1)
    z = complex(z)
    q = abs(z) / radius
    if q > 1.0 - params.caustic_guard:
        raise DomainError(
            f"|z|={abs(z):.6g} outside guarded series disc "
            f"{(1.0 - params.caustic_guard) * radius:.6g}"
        )
    if z == 0:
        return 1.0 + 0.0j
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    coeff_scaled = 1.0  # |a_k| * radius^k, bounded along the series
    bound = 1.0
    prev = Fraction(1)
    log_q = math.log(q)
    for k in range(1, params.max_terms + 1):
        cur = Fraction(math.comb(r * k, k), 1 - r * k)
        ratio = float(cur / prev)
        prev = cur
        term *= ratio * z
        total += term
        coeff_scaled *= abs(ratio) * radius
        bound = max(bound, coeff_scaled)
        log_tail = math.log(bound) + (k + 1) * log_q - math.log1p(-q)
        if total != 0 and log_tail <= math.log(params.series_tol * abs(total)):
            return total
    raise ConvergenceError(f"rho series did not converge in {params.max_terms} terms")


def _mu_coeff(r: int, k: int) -> float:
    # C(k/r, k) / (k + 1); interleaved product keeps intermediates in range
    c = 1.0
    top = k / r
    for i in range(k):
        c *= (top - i) / (i + 1)
    return c / (k + 1)


def mu(params: AsymptoticParams, z: complex) -> complex:
    """Series sum_k C(k/r, k) z^k / (k + 1), the inner-branch inversion kernel.

    Converges for |z| < lam^(-lam) (1-lam)^(lam-1); the guarded disc and
    truncation rule mirror rho.  Coefficients at k = r, 2r, ... vanish,
    so the stop rule bounds the tail through a coefficient envelope
    rather than a single-term ratio.
    """
    r = params.r
    lam = params.lam
    radius = lam ** (-lam) * (1.0 - lam) ** (lam - 1.0)
    z = complex(z)
    q = abs(z) / radius
    if q > 1.0 - params.caustic_guard:
        raise DomainError(
            f"|z|={abs(z):.6g} outside guarded series disc "
            f"{(1.0 - params.caustic_guard) * radius:.6g}"
        )
    if z == 0:
        return 1.0 + 0.0j
    total = 1.0 + 0.0j
    zpow = 1.0 + 0.0j
    log_radius = math.log(radius)
    log_bound = 0.0
    log_q = math.log(q)
    for k in range(1, params.max_terms + 1):
        zpow *= z
        c = _mu_coeff(r, k)
        if c != 0.0:
            total += c * zpow
            log_bound = max(log_bound, math.log(abs(c)) + k * log_radius)
        log_tail = log_bound + (k + 1) * log_q - math.log1p(-q)
        if total != 0 and log_tail <= math.log(params.series_tol * abs(total)):
            return total
    raise ConvergenceError(f"mu series did not converge in {params.max_terms} terms")


def _branch_residual(r: int, x: complex, t: complex, n: float) -> float:
    return abs(r * (x - t) ** (r - 1) * t - n) / max(n, 1.0)


def _newton_refine(params: AsymptoticParams, x: complex, n: float,
                   seed: complex) -> tuple[complex, float]:
    r = params.r
    t = seed
    best_t = t
    best_res = _branch_residual(r, x, t, n)
    for _ in range(50):
        if best_res <= params.newton_tol:
            break
        deriv = r * (x - t) ** (r - 2) * (x - r * t)
        if deriv == 0:
            raise ConvergenceError("Newton derivative vanished (at the caustic?)")
        t = t - (r * (x - t) ** (r - 1) * t - n) / deriv
        res = _branch_residual(r, x, t, n)
        if res < best_res:
            best_t, best_res = t, res
    if best_res > params.newton_tol:
        raise ConvergenceError(
            f"Newton refinement stalled at residual {best_res:.3e}"
        )
    # A refined root that ran far from its series seed has hopped branches.
    if abs(best_t - seed) > 0.5 * (abs(x) + abs(seed)):
        raise ConvergenceError("Newton refinement left the seeded branch")
    return best_t, best_res


def t_outer(params: AsymptoticParams, x: complex, n: float,
            refine: bool = True) -> TBranch:
    """The branch of t(x, n) that vanishes as n -> 0, valid outside the caustic.

    Seeded by lam * x * (1 - rho(n / (r x^r))) and then Newton-refined to
    the residual contract; with ``refine=False`` the series seed is
    returned as-is.
    """
    r = params.r
    x = complex(x)
    xc = caustic_radius(params, n)
    if abs(x) * (1.0 - params.caustic_guard) <= xc:
        raise DomainError(
            f"|x|={abs(x):.6g} inside guarded outer region "
            f"(requires |x| > {xc / (1.0 - params.caustic_guard):.6g})"
        )
    if n == 0:
        return TBranch("outer", 0.0 + 0.0j, 0.0)
    seed = params.lam * x * (1.0 - rho(params, n / (r * x**r)))
    if not refine:
        return TBranch("outer", seed, _branch_residual(r, x, seed, n))
    t, res = _newton_refine(params, x, n, seed)
    return TBranch("outer", t, res)


def tau(params: AsymptoticParams, n: float, l: int) -> complex:
    """Branch point t(0, n) on sheet l: magnitude (n/r)^(1/r), equally
    rotated angles.  The angle is reduced exactly in integer arithmetic so
    that conjugate sheets pair up to the last bit."""
    r = params.r
    if not 1 <= l <= r:
        raise ValueError(f"sheet index l={l} out of range 1..{r}")
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 0.0 + 0.0j
    mag = (n / r) ** (1.0 / r)
    k2 = ((r - 1) * (2 * l + 1)) % (2 * r)  # angle = pi * k2 / r, k2 in [0, 2r)
    if k2 > r:
        k2 -= 2 * r  # fold into (-pi, pi]
    theta = math.pi * k2 / r
    return complex(mag * math.cos(theta), mag * math.sin(theta))


def t_inner(params: AsymptoticParams, x: complex, n: float, l: int,
            refine: bool = True) -> TBranch:
    """Sheet-l branch of t(x, n) inside the caustic disc.

    Seeded by tau_l + lam * x * mu(x / tau_l), then Newton-refined.
    Requires n > 0 and |x| < (1 - caustic_guard) * X_c(n).
    """
    r = params.r
    x = complex(x)
    if n <= 0:
        raise DomainError("inner branches require n > 0")
    xc = caustic_radius(params, n)
    if abs(x) >= (1.0 - params.caustic_guard) * xc:
        raise DomainError(
            f"|x|={abs(x):.6g} outside guarded inner disc "
            f"{(1.0 - params.caustic_guard) * xc:.6g}"
        )
    t0 = tau(params, n, l)
    seed = t0 + params.lam * x * mu(params, x / t0)
    if not refine:
        return TBranch("inner", seed, _branch_residual(r, x, seed, n), l)
    t, res = _newton_refine(params, x, n, seed)
    return TBranch("inner", t, res, l)


def phase_f(params: AsymptoticParams, x: complex, n: float, t: complex) -> complex:
    """Phase f = x^r - (x - t)^r + n [log(n/t) - 1], principal log.

    For n = 0 the phase is x^r - (x - t)^r (zero on the n = 0 branch
    t = 0); for n > 0 the point t = 0 is outside the domain.
    """
    r = params.r
    x = complex(x)
    t = complex(t)
    if n == 0:
        return x**r - (x - t) ** r
    if t == 0:
        raise DomainError("phase undefined at t = 0 for n > 0")
    return x**r - (x - t) ** r + n * (cmath.log(n / t) - 1.0)


def amplitude_g(params: AsymptoticParams, x: complex, t: complex) -> complex:
    """Amplitude correction g = (1/2) log[(x - t)/(x - r t)], principal log.

    Undefined on the caustic x = r t; refuses within CAUSTIC_EPS of it
    (relative to |x| + r |t|).
    """
    r = params.r
    x = complex(x)
    t = complex(t)
    denom = x - r * t
    scale = abs(x) + r * abs(t)
    if abs(denom) <= CAUSTIC_EPS * scale:
        raise CausticSingularity(f"x = r t within {CAUSTIC_EPS:g} relative")
    return 0.5 * cmath.log((x - t) / denom)


def h_outer(params: AsymptoticParams, x: complex, n: int,
            refine: bool = True) -> LogComplex:
    """Single-branch approximation of the family member, |x| above the caustic.

    Composed as exp(f + g) on the outer branch, carried entirely in the
    log domain.  ``h_outer_direct`` evaluates the same quantity without
    the branch abstraction; the two agree to series_tol at the series seed.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("h_outer requires integer n >= 1")
    x = complex(x)
    tb = t_outer(params, x, float(n), refine=refine)
    w = phase_f(params, x, float(n), tb.value) + amplitude_g(params, x, tb.value)
    return LogComplex.from_log(w)


def h_outer_direct(params: AsymptoticParams, x: complex, n: int) -> LogComplex:
    """Outer approximation written out in terms of rho alone (no Newton)."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("h_outer_direct requires integer n >= 1")
    r = params.r
    lam = params.lam
    x = complex(x)
    xc = caustic_radius(params, float(n))
    if abs(x) * (1.0 - params.caustic_guard) <= xc:
        raise DomainError("inside guarded outer region")
    rv = rho(params, n / (r * x**r))
    one_m = 1.0 - rv
    w = (
        x**r * (1.0 - (1.0 - lam * one_m) ** r)
        - n
        + n * cmath.log(n / (lam * x * one_m))
        + 0.5 * cmath.log((1.0 - lam * one_m) / (1.0 - (r - 1) * one_m))
    )
    return LogComplex.from_log(w)


def h_inner(params: AsymptoticParams, x: complex, n: int,
            refine: bool = True) -> LogComplex:
    """Sum of all r branch contributions, |x| inside the caustic disc.

    Each branch contributes exp(f + g); the sum is accumulated after
    scaling by the largest exponent so that individually exp-huge terms
    never overflow.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("h_inner requires integer n >= 1")
    r = params.r
    x = complex(x)
    ws = []
    for l in range(1, r + 1):
        tb = t_inner(params, x, float(n), l, refine=refine)
        w = phase_f(params, x, float(n), tb.value) + amplitude_g(params, x, tb.value)
        ws.append(w)
    m = max(w.real for w in ws)
    s = sum(cmath.exp(w - m) for w in ws)
    if s == 0:
        return LogComplex.zero()
    return LogComplex(m + math.log(abs(s)), normalize_angle(cmath.phase(s)))


def eikonal_residual(params: AsymptoticParams, x: float, n: float, h: float) -> float:
    """|exp(df/dn) + df/dx - r x^(r-1)| with central-difference partials.

    The partials differentiate the composed phase f(x, n, t_outer(x, n));
    the residual is O(h^2) because the composed phase solves the eikonal
    equation identically.
    """
    if h <= 0 or n - h <= 0:
        raise ValueError("need 0 < h < n")

    def f_at(xx: float, nn: float) -> float:
        tb = t_outer(params, xx, nn)
        return phase_f(params, xx, nn, tb.value).real

    dfdx = (f_at(x + h, n) - f_at(x - h, n)) / (2.0 * h)
    dfdn = (f_at(x, n + h) - f_at(x, n - h)) / (2.0 * h)
    return abs(math.exp(dfdn) + dfdx - params.r * x ** (params.r - 1))


def ray_grid(params: AsymptoticParams, s_values, t_values) -> list[RayPoint]:
    """Characteristic flow sampled on the grid s_values x t_values.

    Each point carries x = t + s, n = r s^(r-1) t, the momenta p and q,
    and the ray-to-coordinate Jacobian r s^(r-2) [(r-1) t - s]; the
    Jacobian vanishes exactly on the caustic s = (r-1) t.
    """
    r = params.r
    out = []
    for s in s_values:
        if s < 0:
            raise ValueError("s must be >= 0")
        s_r1 = s ** (r - 1)
        q = math.log(r * s_r1) if s > 0 else -math.inf
        for t in t_values:
            if t < 0:
                raise ValueError("t must be >= 0")
            x = t + s
            n = r * s_r1 * t
            p = r * (x ** (r - 1) - s_r1)
            jac = r * s ** (r - 2) * ((r - 1) * t - s)
            out.append(RayPoint(s=float(s), t=float(t), x=float(x), n=float(n),
                                p=float(p), q=float(q), jacobian=float(jac)))
    return out
