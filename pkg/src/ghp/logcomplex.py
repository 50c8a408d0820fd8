"""Log-polar complex values and overflow-safe polynomial evaluation.

Family members grow like exp(|x|^r), far past float range at the sizes
the asymptotics are interesting for.  Carrying (log|v|, arg v) instead of
v keeps every product, quotient and comparison finite.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .poly import SparsePoly

#: Documented accuracy guard: eval_log_complex matches the exact value to
#: relative accuracy 2**(-precision_bits + GUARD_BITS).
GUARD_BITS = 8

# mpmath's working precision is process-global; serialize the regions that
# set it so concurrent callers stay safe.
_MP_LOCK = threading.Lock()

_TWO_PI = 2.0 * math.pi


def normalize_angle(a: float) -> float:
    """Map an angle into (-pi, pi], ties at the cut going to +pi."""
    a = math.remainder(a, _TWO_PI)
    if a == -math.pi:
        return math.pi
    return a


@dataclass(frozen=True)
class LogComplex:
    """A complex value v stored as (log|v|, arg v), plus an exact-zero flag.

    ``log_magnitude`` and ``argument`` may be floats or mpmath mpf values;
    high-precision producers return mpf fields, and consumers that only
    need double precision can float() them.  When ``is_zero`` is set the
    other two fields are meaningless and ignored.
    """

    log_magnitude: float
    argument: float
    is_zero: bool = False

    @classmethod
    def zero(cls) -> "LogComplex":
        return cls(0.0, 0.0, True)

    @classmethod
    def from_complex(cls, z: complex) -> "LogComplex":
        if z == 0:
            return cls.zero()
        return cls(math.log(abs(z)), normalize_angle(cmath.phase(z)))

    @classmethod
    def from_log(cls, w: complex) -> "LogComplex":
        """The value exp(w) for a complex exponent w."""
        return cls(w.real, normalize_angle(w.imag))

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        if self.is_zero or other.is_zero:
            return LogComplex.zero()
        return LogComplex(
            self.log_magnitude + other.log_magnitude,
            normalize_angle(float(self.argument) + float(other.argument)),
        )

    def __truediv__(self, other: "LogComplex") -> "LogComplex":
        if other.is_zero:
            raise ZeroDivisionError("division by exact-zero LogComplex")
        if self.is_zero:
            return LogComplex.zero()
        return LogComplex(
            self.log_magnitude - other.log_magnitude,
            normalize_angle(float(self.argument) - float(other.argument)),
        )

    def log_ratio(self, other: "LogComplex") -> complex:
        """log(self / other) as a complex number (arg part normalized)."""
        if self.is_zero or other.is_zero:
            raise ZeroDivisionError("log ratio undefined for exact zero")
        return complex(
            float(self.log_magnitude) - float(other.log_magnitude),
            normalize_angle(float(self.argument) - float(other.argument)),
        )

    def to_complex(self) -> complex:
        """Materialize the value; overflows to inf past float range."""
        if self.is_zero:
            return 0j
        return cmath.rect(math.exp(float(self.log_magnitude)), float(self.argument))


def _to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError("non-finite input")
        return Fraction(v)
    if isinstance(v, mpmath.mpf):
        sign, man, exp, _ = v._mpf_
        if man == 0 and exp != 0:
            raise ValueError("non-finite input")
        m = -int(man) if sign else int(man)
        return Fraction(m) * Fraction(2) ** exp
    raise TypeError(f"cannot convert {type(v).__name__} to an exact rational")


def _as_fraction_pair(x) -> tuple[Fraction, Fraction]:
    if isinstance(x, complex):
        return _to_fraction(x.real), _to_fraction(x.imag)
    if isinstance(x, mpmath.mpc):
        return _to_fraction(x.real), _to_fraction(x.imag)
    return _to_fraction(x), Fraction(0)


def _qc_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _qc_pow(a, k: int):
    out = (Fraction(1), Fraction(0))
    base = a
    while k:
        if k & 1:
            out = _qc_mul(out, base)
        base = _qc_mul(base, base)
        k >>= 1
    return out


def _eval_exact_complex(poly: SparsePoly, xq) -> tuple[Fraction, Fraction]:
    """Exact Horner over Gaussian rationals."""
    ts = poly.sorted_terms()
    acc = (Fraction(ts[0][1]), Fraction(0))
    prev = ts[0][0]
    for e, c in ts[1:]:
        acc = _qc_mul(acc, _qc_pow(xq, prev - e))
        acc = (acc[0] + c, acc[1])
        prev = e
    return _qc_mul(acc, _qc_pow(xq, prev))


def _log_of_int(c: int, wp: int):
    with _MP_LOCK, mpmath.workprec(wp):
        return mpmath.log(abs(mpmath.mpf(c)))


def eval_log_complex(poly: SparsePoly, x, precision_bits: int = 128) -> LogComplex:
    """Evaluate ``poly`` at a complex point, returning a LogComplex.

    The relative accuracy of the represented value is 2**(-precision_bits
    + GUARD_BITS).  Internally the working precision adapts upward when
    cancellation is detected, falling back to exact Gaussian-rational
    arithmetic to separate "exactly zero" from "tiny"; the result is
    deterministic for fixed inputs.  Accepts int, float, Fraction,
    complex, and mpmath mpf/mpc arguments.
    """
    if precision_bits < 53:
        raise ValueError("precision_bits must be >= 53")
    if poly.is_zero():
        return LogComplex.zero()
    xr, xi = _as_fraction_pair(x)
    n_terms = len(poly.terms)
    if xr == 0 and xi == 0:
        c0 = poly.coefficient(0)
        if c0 == 0:
            return LogComplex.zero()
        wp = precision_bits + 16
        arg = 0.0 if c0 > 0 else math.pi
        return LogComplex(_log_of_int(c0, wp), arg)

    slack = 16 + n_terms.bit_length()
    need = precision_bits + slack  # headroom required above any cancellation
    wp = need + GUARD_BITS + 64
    ts = poly.sorted_terms()
    for _ in range(3):
        with _MP_LOCK, mpmath.workprec(wp):
            xm = mpmath.mpc(mpmath.mpmathify(xr), mpmath.mpmathify(xi))
            ax = abs(xm)
            val = mpmath.mpc(ts[0][1])
            scale = mpmath.mpf(abs(ts[0][1]))
            prev = ts[0][0]
            for e, c in ts[1:]:
                val = val * xm ** (prev - e) + c
                scale = scale * ax ** (prev - e) + abs(c)
                prev = e
            val = val * xm**prev
            scale = scale * ax**prev
            av = abs(val)
            if av > 0 and av > scale * mpmath.mpf(2) ** (need - wp):
                log_mag = mpmath.log(av)
                arg = mpmath.atan2(val.imag, val.real)
                if arg <= -mpmath.pi:
                    arg = arg + 2 * mpmath.pi
                return LogComplex(log_mag, arg)
            # Deepen past the observed cancellation, or double blindly if the
            # value rounded all the way to zero at this precision.
            if av > 0:
                deficit = int(mpmath.log(scale / av, 2)) + 1
            else:
                deficit = wp
        wp = max(wp + 64, need + GUARD_BITS + 64 + deficit)

    # Heavy cancellation: settle it exactly.
    vr, vi = _eval_exact_complex(poly, (xr, xi))
    if vr == 0 and vi == 0:
        return LogComplex.zero()
    mag2 = vr * vr + vi * vi
    wp = precision_bits + GUARD_BITS + slack
    with _MP_LOCK, mpmath.workprec(wp):
        log_mag = (mpmath.log(mpmath.mpf(mag2.numerator))
                   - mpmath.log(mpmath.mpf(mag2.denominator))) / 2
        rr = mpmath.mpf(vr.numerator) / mpmath.mpf(vr.denominator)
        ri = mpmath.mpf(vi.numerator) / mpmath.mpf(vi.denominator)
        arg = mpmath.atan2(ri, rr)
        if arg <= -mpmath.pi:
            arg = arg + 2 * mpmath.pi
    return LogComplex(log_mag, arg)
