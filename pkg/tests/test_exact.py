import math
from fractions import Fraction

import pytest

from ghp.exact import (
    FamilyParams,
    build_diffdiff,
    build_explicit,
    build_recurrence,
    coefficient,
    genfun_check,
    ode_residual,
    omega_indicator,
    symmetry_check,
    value_at_zero,
)
from ghp.poly import eval_exact


def test_params_validation():
    with pytest.raises(ValueError):
        FamilyParams(1, 0)
    with pytest.raises(ValueError):
        FamilyParams(2, -1)


# --- construction examples ---------------------------------------------------


def test_build_diffdiff_examples():
    assert build_diffdiff(FamilyParams(3, 0)).terms == {0: 1}
    assert build_diffdiff(FamilyParams(3, 2)).terms == {4: 9, 1: -6}
    # two hand iterations from H_1 = 2x: H_2 = 4x^2 - 2, H_3 = 8x^3 - 12x
    assert build_diffdiff(FamilyParams(2, 3)).terms == {3: 8, 1: -12}


def test_build_explicit_examples():
    assert build_explicit(FamilyParams(3, 2)).terms == {4: 9, 1: -6}
    assert build_explicit(FamilyParams(3, 3)).terms == {6: 27, 3: -54, 0: 6}
    assert build_explicit(FamilyParams(5, 1)).terms == {4: 5}


def test_build_recurrence_examples():
    assert build_recurrence(FamilyParams(2, 2)).terms == {2: 4, 0: -2}
    assert build_recurrence(FamilyParams(3, 3)).terms == {6: 27, 3: -54, 0: 6}
    assert build_recurrence(FamilyParams(4, 1)).terms == {3: 4}


def test_coefficient_examples():
    assert coefficient(FamilyParams(3, 2), 2) == 9
    # hand evaluation of the closed sum: k=2 carries the x^1 coefficient of
    # 8x^3 - 12x; the k=1 entry has 2k < 3 and therefore vanishes
    assert coefficient(FamilyParams(2, 3), 2) == -12
    assert coefficient(FamilyParams(2, 3), 1) == 0
    assert coefficient(FamilyParams(3, 2), 0) == 0


def test_coefficient_out_of_range():
    with pytest.raises(ValueError):
        coefficient(FamilyParams(3, 2), 3)
    with pytest.raises(ValueError):
        coefficient(FamilyParams(3, 2), -1)


def test_coefficient_matches_built_polynomial():
    for r in (2, 3, 5):
        for n in range(9):
            p = FamilyParams(r, n)
            poly = build_diffdiff(p)
            for k in range(n + 1):
                e = r * k - n
                want = poly.coefficient(e) if e >= 0 else 0
                assert coefficient(p, k) == want


# --- point values ------------------------------------------------------------


def test_value_at_zero_examples():
    assert value_at_zero(FamilyParams(3, 3)) == 6
    assert value_at_zero(FamilyParams(3, 2)) == 0
    assert value_at_zero(FamilyParams(2, 4)) == 12


@pytest.mark.parametrize("r", range(2, 7))
def test_value_at_zero_matches_constant_term(r):
    for n in range(26):
        p = FamilyParams(r, n)
        assert value_at_zero(p) == build_recurrence(p).coefficient(0)


def test_omega_indicator():
    assert omega_indicator(3, 6) == 1
    assert omega_indicator(3, 4) == 0
    assert omega_indicator(5, 0) == 1
    with pytest.raises(ValueError):
        omega_indicator(0, 3)


def test_eval_exact_on_family():
    assert eval_exact(build_diffdiff(FamilyParams(3, 2)), 1) == 3
    assert eval_exact(build_diffdiff(FamilyParams(2, 3)), 2) == 40
    h6 = build_diffdiff(FamilyParams(2, 6))
    x = Fraction(1, 3)
    # independent route: explicit classical coefficients of H_6
    want = (
        64 * x**6 - 480 * x**4 + 720 * x**2 - 120
    )
    assert eval_exact(h6, x) == want


# --- identities --------------------------------------------------------------


@pytest.mark.parametrize("r,n", [(2, 0), (3, 1), (2, 5), (4, 3), (5, 2)])
def test_ode_residual_is_zero(r, n):
    assert ode_residual(FamilyParams(r, n)).is_zero()


def test_genfun_check_examples():
    assert genfun_check(2, 0)
    assert genfun_check(2, 5)
    assert genfun_check(5, 8)


def test_genfun_check_more_families():
    assert genfun_check(3, 6)
    assert genfun_check(4, 6)


@pytest.mark.parametrize("r,n", [(3, 2), (2, 3), (5, 0), (6, 17)])
def test_symmetry_check(r, n):
    assert symmetry_check(FamilyParams(r, n))


# --- structural invariants ---------------------------------------------------


@pytest.mark.parametrize("r", range(2, 7))
def test_cross_construction_equality_small(r):
    for n in range(11):
        p = FamilyParams(r, n)
        a = build_diffdiff(p)
        assert a == build_explicit(p)
        assert a == build_recurrence(p)


@pytest.mark.parametrize("r", range(2, 7))
def test_degree_leading_and_lowest(r):
    for n in range(16):
        poly = build_diffdiff(FamilyParams(r, n))
        assert poly.degree() == n * (r - 1)
        assert poly.leading_coefficient() == r**n
        assert poly.min_exponent() == r * math.ceil(n / r) - n
        assert (value_at_zero(FamilyParams(r, n)) != 0) == (n % r == 0)


@pytest.mark.parametrize("r", range(2, 6))
def test_diffdiff_closure(r):
    prev = build_explicit(FamilyParams(r, 0))
    for n in range(12):
        nxt = build_explicit(FamilyParams(r, n + 1))
        assert nxt + prev.derivative() == prev.times_monomial(r, r - 1)
        prev = nxt


@pytest.mark.parametrize("r", range(2, 7))
def test_exponent_congruence(r):
    for n in range(16):
        poly = build_diffdiff(FamilyParams(r, n))
        assert all(e % r == (-n) % r for e in poly.terms)
