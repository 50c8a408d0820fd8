"""Sparse univariate polynomials over arbitrary-precision integers.

The exact layer of the package works with plain Python ints, never
floats, so every identity check is a true equality test rather than a
tolerance comparison.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping


class SparsePoly:
    """Polynomial stored as {exponent: coefficient}; zeros are never stored.

    Instances are treated as immutable: all arithmetic returns new objects
    and callers must not mutate ``terms``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        data: dict[int, int] = {}
        if terms:
            for e, c in terms.items():
                if c == 0:
                    continue
                e = int(e)
                if e < 0:
                    raise ValueError(f"negative exponent: {e}")
                data[e] = int(c)
        self._terms = data

    @property
    def terms(self) -> dict[int, int]:
        return self._terms

    @classmethod
    def zero(cls) -> "SparsePoly":
        return cls()

    @classmethod
    def one(cls) -> "SparsePoly":
        return cls({0: 1})

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Largest exponent, or -1 for the zero polynomial."""
        return max(self._terms) if self._terms else -1

    def min_exponent(self) -> int:
        """Smallest stored exponent, or -1 for the zero polynomial."""
        return min(self._terms) if self._terms else -1

    def leading_coefficient(self) -> int:
        return self._terms[self.degree()] if self._terms else 0

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def sorted_terms(self, descending: bool = True) -> list[tuple[int, int]]:
        return sorted(self._terms.items(), key=lambda t: t[0], reverse=descending)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # mutable mapping inside; not hashable

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        res = SparsePoly.__new__(SparsePoly)
        res._terms = out
        return res

    def __neg__(self) -> "SparsePoly":
        res = SparsePoly.__new__(SparsePoly)
        res._terms = {e: -c for e, c in self._terms.items()}
        return res

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def scaled(self, k: int) -> "SparsePoly":
        if k == 0:
            return SparsePoly.zero()
        res = SparsePoly.__new__(SparsePoly)
        res._terms = {e: k * c for e, c in self._terms.items()}
        return res

    def times_monomial(self, coeff: int, exponent: int) -> "SparsePoly":
        """Return coeff * x**exponent * self."""
        if coeff == 0:
            return SparsePoly.zero()
        if exponent < 0:
            raise ValueError("monomial exponent must be nonnegative")
        res = SparsePoly.__new__(SparsePoly)
        res._terms = {e + exponent: coeff * c for e, c in self._terms.items()}
        return res

    def derivative(self) -> "SparsePoly":
        out = {e - 1: e * c for e, c in self._terms.items() if e > 0}
        res = SparsePoly.__new__(SparsePoly)
        res._terms = out
        return res

    def __repr__(self) -> str:
        if not self._terms:
            return "SparsePoly(0)"
        parts = [f"{c}*x^{e}" for e, c in self.sorted_terms()]
        return "SparsePoly(" + " + ".join(parts) + ")"


def eval_exact(poly: SparsePoly, x) -> Fraction:
    """Evaluate ``poly`` at a rational point, exactly.

    Horner over the sorted exponent gaps; the result is an exact Fraction.
    """
    x = Fraction(x)
    ts = poly.sorted_terms()
    if not ts:
        return Fraction(0)
    top_e, top_c = ts[0]
    acc = Fraction(top_c)
    prev = top_e
    for e, c in ts[1:]:
        acc = acc * x ** (prev - e) + c
        prev = e
    return acc * x**prev


def poly_to_json_dict(poly: SparsePoly, r: int, n: int) -> dict:
    """JSON form: exponents strictly decreasing, coefficients as decimal strings."""
    return {
        "r": r,
        "n": n,
        "terms": [[e, str(c)] for e, c in poly.sorted_terms(descending=True)],
    }


def poly_from_json_dict(d: dict) -> tuple[int, int, SparsePoly]:
    terms = {int(e): int(c) for e, c in d["terms"]}
    return int(d["r"]), int(d["n"]), SparsePoly(terms)
