from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from skills.bipoly import BiPoly
from skills.feldman import apply_feldman_operator, derivative_at_integer, feldman, weighted_coeff_sum
from skills.numtheory import lcm_upto


def test_feldman_coefficients():
    assert feldman(0).coefficients == (Fraction(1),)
    assert feldman(2).coefficients == (0, Fraction(-1, 2), Fraction(1, 2))
    assert feldman(3).coefficients == (0, Fraction(1, 3), Fraction(-1, 2), Fraction(1, 6))
    with pytest.raises(ValueError):
        feldman(-1)


@given(nu=st.integers(min_value=0, max_value=12), z=st.integers(min_value=-5, max_value=20))
@settings(max_examples=80, deadline=None)
def test_feldman_is_binomial_at_integers(nu, z):
    expected = math.comb(z, nu) if z >= 0 else Fraction(math.prod(range(z - nu + 1, z + 1)), math.factorial(nu))
    assert feldman(nu)(z) == expected


def test_weighted_coeff_sum():
    assert weighted_coeff_sum(0) == 1
    assert weighted_coeff_sum(1) == 1
    assert weighted_coeff_sum(3) == Fraction(7, 3)
    assert all(weighted_coeff_sum(nu) <= 2**nu for nu in range(41))


def test_derivative_at_integer_examples():
    assert derivative_at_integer(2, 0, 3) == 3
    assert derivative_at_integer(2, 1, 0) == Fraction(-1, 2)
    assert derivative_at_integer(0, 0, 5) == 1
    with pytest.raises(ValueError):
        derivative_at_integer(2, -1, 0)


@pytest.mark.parametrize("nu", range(0, 9))
def test_scaled_derivatives_are_integral(nu):
    # d_ν^u · F_ν^{(u)}(ℓ) ∈ ℤ
    for u in range(nu + 1):
        scale = lcm_upto(nu) ** u
        for ell in range(-6, 12):
            value = derivative_at_integer(nu, u, ell) * scale
            assert value.denominator == 1, (nu, u, ell)


@given(nu=st.integers(min_value=0, max_value=8), ell=st.integers(min_value=0, max_value=10))
@settings(max_examples=60, deadline=None)
def test_feldman_operator_on_y_power(nu, ell):
    y_ell = BiPoly.monomial(0, ell)
    assert apply_feldman_operator(y_ell, nu) == y_ell.scale(math.comb(ell, nu))


def test_feldman_operator_nu_zero_is_identity():
    p = BiPoly({(2, 1): 3, (0, 4): Fraction(-1, 2)})
    assert apply_feldman_operator(p, 0) == p
