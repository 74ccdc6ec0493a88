import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from multihermite.numerics import (
    GUARD_DIGITS,
    MIN_PRECISION,
    MonicPoly,
    deflate_at,
    gaussian_mass,
    gaussian_moments,
    hermite_classical_coeffs,
    hermite_classical_eval,
    moment_functional,
    normal_moments,
    poly_add,
    poly_derivative,
    poly_eval,
    poly_mul_linear,
    poly_scale,
    relative_coeff_diff,
    set_precision,
    to_decimal,
    wide,
)

small = st.integers(min_value=-50, max_value=50)


def test_precision_floor():
    with pytest.raises(ValueError):
        set_precision(MIN_PRECISION - 1)
    assert set_precision(MIN_PRECISION) == MIN_PRECISION


def test_wide_accepts_strings_and_ints():
    assert wide("0.1") == mpf("0.1")
    assert wide(3) == 3


def test_decimal_round_trip():
    x = mpf(2) / 3
    text = to_decimal(x)
    assert text.startswith("6.666")
    assert abs(mpf(text) - x) <= mpf(10) ** (-(mp.dps - 2))
    assert to_decimal(0) == "0.0"


def test_monic_poly_rejects_non_monic():
    with pytest.raises(ValueError):
        MonicPoly((1, 2))


def test_from_roots_evaluates_to_zero():
    p = MonicPoly.from_roots([1, -2, mpf("0.5")])
    assert p.degree == 3
    for r in (1, -2, mpf("0.5")):
        assert poly_eval(p, r) == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=1, max_size=20), st.integers(-300, 300), st.integers(1, 200))
def test_deflation_reconstructs(coeffs, num, den):
    p = MonicPoly.from_coeffs([mpf(c) / 7 for c in coeffs] + [1])
    x0 = mpf(num) / (100 + den)
    quotient, rem = deflate_at(p, x0)
    q = quotient.coeffs if isinstance(quotient, MonicPoly) else quotient
    with mp.workdps(mp.dps + GUARD_DIGITS):
        rebuilt = poly_add(poly_mul_linear(list(q), x0), [rem])
    assert relative_coeff_diff(rebuilt, p.coeffs) <= mpf(10) ** (-(mp.dps - 5))


@settings(max_examples=30, deadline=None)
@given(st.integers(-200, 200), st.booleans())
def test_moment_recurrence_exact(c10, normalized):
    c = mpf(c10) / 10
    m = gaussian_moments(c, 30, normalized).m
    for j in range(1, 29):
        assert m[j + 1] - (c / 2 * m[j] + mpf(j) / 2 * m[j - 1]) == 0


@pytest.mark.parametrize("c", [0, 3, -7.5, 20])
def test_moments_against_adaptive_quadrature(c):
    set_precision(40)
    c = mpf(c)
    raw = gaussian_moments(c, 11, normalized=False).m
    lo, hi = c / 2 - 12, c / 2 + 12
    for j in range(11):
        ref = mpmath.quad(lambda x: x**j * mpmath.exp(-x * x + c * x), [lo, c / 2, hi])
        assert abs(raw[j] - ref) / abs(ref if ref else 1) <= mpf("1e-20")


def test_normalized_moments_are_normal_law():
    m = gaussian_moments(15, 4).m
    assert m[0] == 1
    assert m[1] == mpf(15) / 2
    assert m[2] - m[1] ** 2 == mpf(1) / 2
    assert gaussian_moments(15, 2, normalized=False).m[0] == gaussian_mass(15)


def test_normal_moments_variance():
    m = normal_moments(1, mpf(1) / 20, 3)
    assert abs(m[2] - m[1] ** 2 - mpf(1) / 20) <= mpf(10) ** (-(mp.dps - 2))


@pytest.mark.parametrize("m", [1, 2, 5, 12])
def test_classical_hermite_derivative(m):
    for x in (mpf("-1.3"), mpf(0), mpf("2.7")):
        d = mpmath.diff(lambda t: hermite_classical_eval(m, t), x)
        assert abs(d - 2 * m * hermite_classical_eval(m - 1, x)) <= mpf("1e-10") * (1 + abs(d))
    exact = poly_derivative(hermite_classical_coeffs(m))
    assert relative_coeff_diff(exact, poly_scale(hermite_classical_coeffs(m - 1), 2 * m)) <= mpf(10) ** (-(mp.dps - 6))


def test_classical_hermite_coefficients_match_eval():
    coeffs = hermite_classical_coeffs(7)
    assert coeffs[-1] == 2**7
    for x in (mpf("0.3"), mpf("-4")):
        assert abs(poly_eval(coeffs, x) - hermite_classical_eval(7, x)) <= mpf(10) ** (-(mp.dps - 10)) * abs(
            hermite_classical_eval(7, x)
        )


def test_moment_functional_shift():
    mom = gaussian_moments(0, 6).m
    # int x^2 (x^2 + 1) dN(0, 1/2) = 3/4 + 1/2
    assert moment_functional([1, 0, 1], mom, shift=2) == mpf(3) / 4 + mpf(1) / 2
