"""Exact construction of the generalized Hermite family.

H(n, r; x) = (-1)^n exp(x^r) d^n/dx^n exp(-x^r) is built over exact
integers by three independent routes (differential-difference iteration,
the explicit coefficient formula, and the r+1 term recurrence), together
with machine checks of the identities the family satisfies.  Agreement
of the routes is an end-to-end correctness certificate for all of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .poly import SparsePoly


@dataclass(frozen=True)
class FamilyParams:
    """Family index: weight exponent r >= 2 and member index n >= 0."""

    r: int
    n: int

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 2:
            raise ValueError(f"r must be an integer >= 2, got {self.r!r}")
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"n must be an integer >= 0, got {self.n!r}")


def _diffdiff_family(r: int, n_hi: int) -> list[SparsePoly]:
    """Members 0..n_hi via H_{m+1} = r x^(r-1) H_m - H_m'."""
    fam = [SparsePoly.one()]
    for _ in range(n_hi):
        h = fam[-1]
        fam.append(h.times_monomial(r, r - 1) - h.derivative())
    return fam


def build_diffdiff(params: FamilyParams) -> SparsePoly:
    """Construct the member by iterating the differential-difference step."""
    return _diffdiff_family(params.r, params.n)[params.n]


def coefficient(params: FamilyParams, k: int) -> int:
    """Exact coefficient of x^(r*k - n) in the member, via the closed sum.

    Equals ((-1)^n n!/k!) * sum_j (-1)^j C(k, j) C(r*j, n); the prefactor
    n!/k! is integral (k <= n) so the whole value stays in integers.
    Zero whenever r*k < n.  Raises ValueError for k outside [0, n].
    """
    r, n = params.r, params.n
    if k < 0 or k > n:
        raise ValueError(f"k={k} out of range [0, {n}]")
    s = sum(
        (-1) ** j * math.comb(k, j) * math.comb(r * j, n) for j in range(k + 1)
    )
    return (-1) ** n * math.perm(n, n - k) * s


def build_explicit(params: FamilyParams) -> SparsePoly:
    """Construct the member from the explicit coefficient formula.

    Index k runs from floor(n/r); entries with r*k < n provably vanish and
    are asserted to, never stored (they would need negative exponents).
    """
    r, n = params.r, params.n
    terms: dict[int, int] = {}
    for k in range(n // r, n + 1):
        c = coefficient(params, k)
        e = r * k - n
        if e < 0:
            assert c == 0, f"nonzero coefficient at negative exponent r={r} n={n} k={k}"
            continue
        if c:
            terms[e] = c
    return SparsePoly(terms)


def build_recurrence(params: FamilyParams) -> SparsePoly:
    """Construct the member by the pure recurrence in n.

    H_{m+1} = r * sum_{k=0}^{r-1} (-1)^k k! C(m, k) C(r-1, k) x^(r-1-k) H_{m-k},
    with members of negative index taken as zero (the C(m, k) factor
    already vanishes for k > m, so the sum is truncated at k <= min(r-1, m)).
    """
    r, n = params.r, params.n
    fam = [SparsePoly.one()]
    for m in range(n):
        acc = SparsePoly.zero()
        for k in range(min(r - 1, m) + 1):
            coef = r * (-1) ** k * math.factorial(k) * math.comb(m, k) * math.comb(r - 1, k)
            acc = acc + fam[m - k].times_monomial(coef, r - 1 - k)
        fam.append(acc)
    return fam[n]


def omega_indicator(r: int, k: int) -> int:
    """1 if r divides k, else 0."""
    if r < 1 or k < 0:
        raise ValueError("need r >= 1 and k >= 0")
    return 1 if k % r == 0 else 0


def value_at_zero(params: FamilyParams) -> int:
    """Exact value of the member at x = 0.

    Nonzero only when r | n, in which case it equals
    (-1)^((r-1) n / r) * n! / (n/r)!.
    """
    r, n = params.r, params.n
    if n % r != 0:
        return 0
    m = n // r
    sign = -1 if ((r - 1) * m) % 2 else 1
    return sign * math.perm(n, n - m)


def ode_residual(params: FamilyParams) -> SparsePoly:
    """Left-hand side of the order-r ODE identity, as a polynomial.

    (-1)^r H_{n+r} + r * sum_{k=0}^{r-1} (-1)^k C(r-1, k)
        (n+r-1)!/(n+k)! x^k H_{n+k}
    must be identically zero; the returned polynomial is the machine check.
    """
    r, n = params.r, params.n
    fam = _diffdiff_family(r, n + r)
    res = fam[n + r].scaled((-1) ** r)
    for k in range(r):
        coef = r * (-1) ** k * math.comb(r - 1, k) * math.perm(n + r - 1, r - 1 - k)
        res = res + fam[n + k].times_monomial(coef, k)
    return res


def _series_mul(a: list[dict[int, Fraction]], b: list[dict[int, Fraction]],
                n_max: int) -> list[dict[int, Fraction]]:
    """Truncated product of series-in-t with x-polynomial coefficients."""
    out: list[dict[int, Fraction]] = [{} for _ in range(n_max + 1)]
    for i, pa in enumerate(a):
        if not pa:
            continue
        for j in range(n_max - i + 1):
            pb = b[j]
            if not pb:
                continue
            tgt = out[i + j]
            for ea, ca in pa.items():
                for eb, cb in pb.items():
                    e = ea + eb
                    c = tgt.get(e, Fraction(0)) + ca * cb
                    if c:
                        tgt[e] = c
                    elif e in tgt:
                        del tgt[e]
    return out


def genfun_check(r: int, n_max: int) -> bool:
    """Verify the exponential generating function up to order n_max.

    Expands exp[x^r - (x-t)^r] as an exact truncated power series in t
    (composing the exponential series with the inner polynomial, which has
    no t^0 term) and compares the t^n coefficient against member_n / n!
    for every n <= n_max.
    """
    if r < 2 or n_max < 0:
        raise ValueError("need r >= 2 and n_max >= 0")
    inner: list[dict[int, Fraction]] = [{} for _ in range(n_max + 1)]
    for j in range(1, min(r, n_max) + 1):
        inner[j][r - j] = Fraction((-1) ** (j + 1) * math.comb(r, j))
    total: list[dict[int, Fraction]] = [{} for _ in range(n_max + 1)]
    total[0][0] = Fraction(1)
    power = [dict(p) for p in total]
    for m in range(1, n_max + 1):
        power = _series_mul(power, inner, n_max)
        inv_m = Fraction(1, m)
        power = [{e: c * inv_m for e, c in p.items()} for p in power]
        for deg, p in enumerate(power):
            tgt = total[deg]
            for e, c in p.items():
                s = tgt.get(e, Fraction(0)) + c
                if s:
                    tgt[e] = s
                elif e in tgt:
                    del tgt[e]
    fam = _diffdiff_family(r, n_max)
    for n in range(n_max + 1):
        n_fact = math.factorial(n)
        got = {e: c * n_fact for e, c in total[n].items() if c}
        want = {e: Fraction(c) for e, c in fam[n].terms.items()}
        if got != want:
            return False
    return True


def symmetry_check(params: FamilyParams) -> bool:
    """True iff every stored exponent is congruent to -n modulo r.

    This single congruence is equivalent to the rotation symmetry
    H(x) = w^n H(w x) holding for all r-th roots of unity w at once.
    """
    poly = build_diffdiff(params)
    want = (-params.n) % params.r
    return all(e % params.r == want for e in poly.terms)
