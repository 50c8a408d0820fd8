"""Complex zeros of the family via exact decomposition and Sturm isolation.

Every member factors exactly as x^m * Q(x^r) because all exponents share
one residue class mod r.  Zeros are therefore the origin (multiplicity m)
plus, for each root z of Q, the r-th roots of z.  Empirically Q has only
positive real roots; this module certifies the real-root count with Sturm
sequences over exact integers instead of assuming it, refines roots by
bisection with exact sign tests, and surfaces any non-positive roots of Q
rather than dropping them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import MalformedPolynomial
from .exact import FamilyParams, build_diffdiff
from .logcomplex import eval_log_complex
from .poly import SparsePoly

# ---------------------------------------------------------------------------
# dense integer polynomials, ascending coefficient lists


def _strip(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _deriv_int(p: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(p)][1:]


def _content(p: list[int]) -> int:
    g = 0
    for c in p:
        g = math.gcd(g, c)
    return g or 1


def _primitive(p: list[int]) -> list[int]:
    g = _content(p)
    return [c // g for c in p]


def _prem_signed(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of f by g, equal to (f mod g) up to a positive factor."""
    r = f[:]
    glc = g[-1]
    steps = 0
    while r and len(r) >= len(g):
        k = len(r) - len(g)
        rlc = r[-1]
        r = [glc * c for c in r]
        for i, gc in enumerate(g):
            r[i + k] -= rlc * gc
        _strip(r)
        steps += 1
    if glc < 0 and steps % 2 == 1:
        r = [-c for c in r]
    return r


def _sturm_chain(p: list[int]) -> list[list[int]]:
    """Sturm sequence of a square-free integer polynomial, content-stripped."""
    chain = [_primitive(p[:])]
    d = _strip(_deriv_int(p))
    if d:
        chain.append(_primitive(d))
    while len(chain) >= 2 and chain[-1]:
        nxt = _prem_signed(chain[-2], chain[-1])
        if not nxt:
            break
        chain.append(_primitive([-c for c in nxt]))
    return chain


def _sign_at(p: list[int], a: Fraction) -> int:
    """Exact sign of p(a): Horner on the homogenized form, integers only."""
    if not p:
        return 0
    num, den = a.numerator, a.denominator
    v = p[-1]
    denpow = 1
    for c in reversed(p[:-1]):
        denpow *= den
        v = v * num + c * denpow
    return (v > 0) - (v < 0)


def _variations(chain: list[list[int]], a: Fraction) -> int:
    signs = [s for s in (_sign_at(p, a) for p in chain) if s != 0]
    return sum(1 for s1, s2 in zip(signs, signs[1:]) if s1 != s2)


def _count_in(chain: list[list[int]], a: Fraction, b: Fraction) -> int:
    """Number of distinct roots in the half-open interval (a, b]."""
    return _variations(chain, a) - _variations(chain, b)


def _cauchy_bound(p: list[int]) -> Fraction:
    lc = abs(p[-1])
    biggest = max(abs(c) for c in p)
    return Fraction(1) + Fraction(biggest, lc)


# ---------------------------------------------------------------------------
# square-free decomposition over the rationals (Yun)


def _fstrip(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _fderiv(p: list[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(p)][1:]


def _fsub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [Fraction(0)] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _fstrip(out)


def _fdivmod(a: list[Fraction], b: list[Fraction]):
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while r and len(r) >= len(b):
        k = len(r) - len(b)
        factor = r[-1] / b[-1]
        q[k] = factor
        for i, c in enumerate(b):
            r[i + k] -= factor * c
        _fstrip(r)
    return _fstrip(q), r


def _fgcd_monic(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = list(a), list(b)
    while b:
        _, rem = _fdivmod(a, b)
        a, b = b, rem
    return [c / a[-1] for c in a] if a else a


def _fdiv_exact(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    q, rem = _fdivmod(a, b)
    assert not rem, "division expected to be exact"
    return q


def _to_primitive_int(p: list[Fraction]) -> list[int]:
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    return _primitive(ints)


def _squarefree_factors(p: list[int]) -> list[tuple[list[int], int]]:
    """Yun decomposition: [(factor, multiplicity)] with factors square-free,
    pairwise coprime, returned as primitive integer polynomials."""
    f = [Fraction(c) for c in p]
    fp = _fstrip(_fderiv(list(f)))
    d = _fgcd_monic(f, fp)
    if len(d) == 1:
        return [(_primitive(p[:]), 1)]
    out = []
    a = _fdiv_exact(f, d)
    b = _fdiv_exact(fp, d)
    c = _fsub(b, _fderiv(a))
    i = 1
    while len(a) > 1:
        pi = _fgcd_monic(a, c) if c else [cc / a[-1] for cc in a]
        if len(pi) > 1:
            out.append((_to_primitive_int(pi), i))
        a = _fdiv_exact(a, pi)
        b = _fdiv_exact(c, pi) if c else []
        c = _fsub(b, _fderiv(a))
        i += 1
    return out


# ---------------------------------------------------------------------------
# isolation and refinement


def _isolate_positive(p: list[int], chain: list[list[int]]):
    """Disjoint intervals (lo, hi], one per positive real root of p."""
    upper = _cauchy_bound(p)
    total = _count_in(chain, Fraction(0), upper)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(Fraction(0), upper, total)]
    while stack:
        a, b, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        if _sign_at(p, mid) == 0:
            out.append((mid, mid))  # exact rational root
            w = (b - a) / 2
            while _count_in(chain, mid - w, mid + w) > 1:
                w /= 2
            left = _count_in(chain, a, mid - w)
            right = _count_in(chain, mid + w, b)
            stack.append((a, mid - w, left))
            stack.append((mid + w, b, right))
        else:
            left = _count_in(chain, a, mid)
            stack.append((a, mid, left))
            stack.append((mid, b, cnt - left))
    out.sort(key=lambda iv: iv[0])
    return out


def _refine(p: list[int], lo: Fraction, hi: Fraction, width: Fraction):
    """Shrink an isolating interval below ``width`` by exact-sign bisection."""
    if lo == hi:
        return lo, hi
    s_hi = _sign_at(p, hi)
    if s_hi == 0:
        return hi, hi
    s_lo = _sign_at(p, lo)
    assert s_lo != 0 and s_lo != s_hi, "interval does not bracket a sign change"
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = _sign_at(p, mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------------------
# public surface


@dataclass(frozen=True)
class Decomposition:
    """Exact split member(x) = x^m * Q(x^r); q_coeffs ascending in z = x^r."""

    m: int
    q_coeffs: tuple[int, ...]

    def q_degree(self) -> int:
        return len(self.q_coeffs) - 1


@dataclass(frozen=True)
class Orbit:
    """r roots at radius * exp(i (base_angle + 2 pi j / r)), j = 0..r-1."""

    radius: float
    base_angle: float
    multiplicity: int


@dataclass(frozen=True)
class RootSet:
    r: int
    n: int
    zero_multiplicity: int
    orbits: tuple[Orbit, ...]
    non_real_q_roots: tuple[complex, ...]
    decomposition: Decomposition | None = None  # the exact (m, Q) source

    def total_multiplicity(self) -> int:
        return (
            self.zero_multiplicity
            + self.r * sum(o.multiplicity for o in self.orbits)
            + self.r * len(self.non_real_q_roots)
        )

    def expanded_points(self) -> list[tuple[complex, int]]:
        """Every zero in the complex plane with its multiplicity."""
        pts: list[tuple[complex, int]] = []
        if self.zero_multiplicity:
            pts.append((0j, self.zero_multiplicity))
        for o in self.orbits:
            for j in range(self.r):
                ang = o.base_angle + 2.0 * math.pi * j / self.r
                pts.append((complex(o.radius * math.cos(ang),
                                    o.radius * math.sin(ang)), o.multiplicity))
        for w in self.non_real_q_roots:
            mag = abs(w) ** (1.0 / self.r)
            base = math.atan2(w.imag, w.real) / self.r
            for j in range(self.r):
                ang = base + 2.0 * math.pi * j / self.r
                pts.append((complex(mag * math.cos(ang), mag * math.sin(ang)), 1))
        return pts

    def to_json_dict(self) -> dict:
        return {
            "r": self.r,
            "n": self.n,
            "zero_multiplicity": self.zero_multiplicity,
            "orbits": [
                {
                    "radius": o.radius,
                    "base_angle": o.base_angle,
                    "multiplicity": o.multiplicity,
                }
                for o in self.orbits
            ],
            "non_real_q_roots": [[w.real, w.imag] for w in self.non_real_q_roots],
        }


def decompose(poly: SparsePoly, params: FamilyParams) -> Decomposition:
    """Split a family member into x^m * Q(x^r), exactly.

    Raises MalformedPolynomial when any exponent violates the residue
    class or the degree does not match the family.
    """
    r, n = params.r, params.n
    if poly.is_zero():
        raise MalformedPolynomial("zero polynomial is not a family member")
    if poly.degree() != n * (r - 1):
        raise MalformedPolynomial(
            f"degree {poly.degree()} != n(r-1) = {n * (r - 1)}"
        )
    m = (-n) % r
    deg_q = (n * (r - 1) - m) // r
    coeffs = [0] * (deg_q + 1)
    for e, c in poly.terms.items():
        if e % r != m % r:
            raise MalformedPolynomial(f"exponent {e} violates e = -n (mod r)")
        coeffs[(e - m) // r] = c
    return Decomposition(m=m, q_coeffs=tuple(coeffs))


def positive_real_roots(dec: Decomposition, tol: float):
    """Isolated positive real roots of Q as ((lo, hi), multiplicity) pairs.

    The square-free part is taken first; counts are certified by Sturm
    sign variations and each interval is bisected below width ``tol``
    using exact sign evaluation.  Intervals are Fractions, sorted.
    """
    q = _strip(list(dec.q_coeffs))
    if len(q) <= 1:
        return []
    width = Fraction(tol)
    found = []
    for factor, mult in _squarefree_factors(q):
        if len(factor) <= 1:
            continue
        chain = _sturm_chain(factor)
        for lo, hi in _isolate_positive(factor, chain):
            lo, hi = _refine(factor, lo, hi, width)
            found.append(((lo, hi), mult))
    found.sort(key=lambda t: t[0][0])
    return found


def _negative_real_roots(factor: list[int], chain, tol: float):
    """Isolated negative real roots, via the mirror x -> -x."""
    mirrored = [(-1) ** i * c for i, c in enumerate(factor)]
    mchain = _sturm_chain(mirrored)
    width = Fraction(tol)
    out = []
    for lo, hi in _isolate_positive(mirrored, mchain):
        lo, hi = _refine(mirrored, lo, hi, width)
        out.append((-hi, -lo))
    return out


def _residual_complex_roots(factor: list[int], known: list[float], expected: int):
    """Best-effort float locations for Q-roots that are not real, using the
    companion-matrix solver; the COUNT is certified elsewhere by Sturm."""
    if expected <= 0:
        return []
    m = max(abs(c) for c in factor)
    arr = np.array([c / m for c in reversed(factor)], dtype=float)
    rts = list(np.roots(arr))
    for kr in known:
        if not rts:
            break
        rts.pop(min(range(len(rts)), key=lambda i: abs(rts[i] - kr)))
    rts.sort(key=lambda w: (w.real, w.imag))
    assert len(rts) == expected, "root accounting mismatch"
    return [complex(w) for w in rts]


def _log_term_scale(poly: SparsePoly, xi: float) -> float:
    """log of sum_e |c_e| xi^e for xi > 0."""
    lx = math.log(xi)
    logs = [math.log(abs(c)) + e * lx for e, c in poly.terms.items()]
    m = max(logs)
    return m + math.log(sum(math.exp(v - m) for v in logs))


def _backward_ok(poly: SparsePoly, xi: float, tol: float) -> bool:
    lc = eval_log_complex(poly, xi, 64)
    if lc.is_zero:
        return True
    return float(lc.log_magnitude) <= math.log(tol) + _log_term_scale(poly, xi)


def all_roots(params: FamilyParams, tol: float = 1e-12) -> RootSet:
    """All complex zeros of the family member, as orbits under rotation.

    Positive roots z of Q become orbits of r zeros at radius z^(1/r); the
    reported radius is verified against a backward-error bound
    |member(radius)| <= tol * sum |c_e| radius^e, refining further when
    needed.  Radii are reported as doubles, so a tol much below 1e-14
    asks for more than a double can express and the verification will
    fail rather than pretend.  Non-positive roots of Q (never observed)
    are surfaced in ``non_real_q_roots`` instead of being dropped.
    """
    if params.n < 1:
        raise ValueError("all_roots requires n >= 1")
    r, n = params.r, params.n
    poly = build_diffdiff(params)
    dec = decompose(poly, params)
    q = _strip(list(dec.q_coeffs))

    orbits: list[Orbit] = []
    non_real: list[complex] = []
    if len(q) > 1:
        width = Fraction(tol)
        for factor, mult in _squarefree_factors(q):
            if len(factor) <= 1:
                continue
            chain = _sturm_chain(factor)
            pos = _isolate_positive(factor, chain)
            neg = _negative_real_roots(factor, chain, tol)
            n_complex = (len(factor) - 1) - len(pos) - len(neg)
            known_real: list[float] = []
            for lo, hi in pos:
                lo, hi = _refine(factor, lo, hi, width)
                radius = float((lo + hi) / 2) ** (1.0 / r)
                w = width
                for _ in range(8):
                    if _backward_ok(poly, radius, tol):
                        break
                    w /= 2**8
                    lo, hi = _refine(factor, lo, hi, w)
                    radius = float((lo + hi) / 2) ** (1.0 / r)
                else:
                    raise AssertionError("root refinement failed backward bound")
                known_real.append(float((lo + hi) / 2))
                orbits.append(Orbit(radius=radius, base_angle=0.0, multiplicity=mult))
            for lo, hi in neg:
                zneg = float((lo + hi) / 2)
                known_real.append(zneg)
                non_real.extend([complex(zneg, 0.0)] * mult)
            for w in _residual_complex_roots(factor, known_real, n_complex):
                non_real.extend([w] * mult)

    orbits.sort(key=lambda o: o.radius)
    rs = RootSet(
        r=r,
        n=n,
        zero_multiplicity=dec.m,
        orbits=tuple(orbits),
        non_real_q_roots=tuple(non_real),
        decomposition=dec,
    )
    assert rs.total_multiplicity() == n * (r - 1), "multiplicity accounting broke"
    return rs
