from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from skills.bipoly import BiPoly, apply_delta, delta_monomial, delta_monomial_value, delta_once
from skills.exactnum import AlgebraicNumber

X = BiPoly.monomial(1, 0)
Y = BiPoly.monomial(0, 1)


def test_delta_examples():
    assert delta_once(X * Y) == Y + X * Y
    assert apply_delta(X**2, 2) == BiPoly.constant(2)
    for ell in range(6):
        assert delta_once(Y**ell) == (Y**ell).scale(ell)


def test_zero_coefficients_are_dropped():
    p = BiPoly({(1, 0): 1, (0, 1): 0})
    assert len(p) == 1
    assert (X - X).is_zero
    with pytest.raises(ValueError):
        BiPoly({(-1, 0): 1})


@given(
    k=st.integers(min_value=0, max_value=8),
    ell=st.integers(min_value=0, max_value=8),
    i=st.integers(min_value=0, max_value=8),
)
@settings(max_examples=120, deadline=None)
def test_closed_form_matches_iterated_delta(k, ell, i):
    assert apply_delta(BiPoly.monomial(k, ell), i) == delta_monomial(k, ell, i)


@given(
    k=st.integers(min_value=0, max_value=6),
    ell=st.integers(min_value=0, max_value=6),
    i=st.integers(min_value=0, max_value=6),
    x=st.fractions(min_value=-5, max_value=5, max_denominator=7),
    y=st.fractions(min_value=-5, max_value=5, max_denominator=7),
)
@settings(max_examples=100, deadline=None)
def test_delta_monomial_value_matches_evaluate(k, ell, i, x, y):
    assert delta_monomial_value(k, ell, i, x, y) == delta_monomial(k, ell, i).evaluate(x, y)


def test_evaluate_at_algebraic_point():
    i = AlgebraicNumber(Fraction(0), Fraction(1), -1)
    p = X**2 + Y**2
    assert p.evaluate(i, AlgebraicNumber(Fraction(1))) == AlgebraicNumber(Fraction(0))


def test_degrees_length_integrality():
    p = X**3 * Y + (Y**2).scale(Fraction(-1, 2))
    assert (p.deg_x, p.deg_y) == (3, 2)
    assert p.length() == Fraction(3, 2)
    assert not p.is_integral()
    assert p.scale(2).is_integral()
