from __future__ import annotations

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from skills.hermite_pade import (
    check_lambda_size,
    check_binomial_product,
    enumerate_lambda,
    generalized_vandermonde,
    generalized_vandermonde_matrix,
    hp_coefficients,
    remainder_order,
)
from skills.interp import is_proportional


def test_two_nodes_one_each():
    system = hp_coefficients([0, 1], [1, 1])
    assert system.coefficients == ((Fraction(-1),), (Fraction(1),))
    assert remainder_order(system, 1) == 1


def test_three_nodes_vanishing_order():
    system = hp_coefficients([0, 1, 2], [2, 2, 2])
    assert system.p(0, 1) == Fraction(1, 4)
    assert remainder_order(system, 5) >= 5


def test_two_nodes_three_each():
    system = hp_coefficients([0, 1], [3, 3])
    assert remainder_order(system, 5) >= 5
    assert remainder_order(system, 8) >= 5


def test_lambda_cardinalities():
    assert len(enumerate_lambda(0, 2, [3, 3, 3])) == 1
    assert tuple(enumerate_lambda(0, 2, [3, 3, 3])) == ((0, 0),)
    assert len(enumerate_lambda(0, 0, [3, 3, 3])) == 3
    assert len(enumerate_lambda(1, 0, [2, 2])) == 1
    with pytest.raises(ValueError):
        enumerate_lambda(0, 3, [3, 3])


@pytest.mark.parametrize(
    "nodes, params, expected",
    [
        ([0, 1], [1, 1], 1),
        ([0, 2], [2, 2], 16),
        ([0, 2, 3], [1, 1, 1], 6),
    ],
)
def test_generalized_vandermonde(nodes, params, expected):
    assert generalized_vandermonde(nodes, params) == expected


def test_input_validation():
    with pytest.raises(ValueError):
        hp_coefficients([1, 1], [1, 1])
    with pytest.raises(ValueError):
        hp_coefficients([0], [2])
    with pytest.raises(ValueError):
        hp_coefficients([0, 1], [0, 1])
    with pytest.raises(ValueError):
        remainder_order(hp_coefficients([0, 1], [2, 2]), 2)


nodes_strategy = st.lists(
    st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=2, max_size=4, unique=True
)


@given(nodes=nodes_strategy, data=st.data())
@settings(max_examples=40, deadline=None)
def test_lambda_and_convolution_agree(nodes, data):
    params = data.draw(st.lists(st.integers(min_value=1, max_value=4), min_size=len(nodes), max_size=len(nodes)))
    assert hp_coefficients(nodes, params, "lambda") == hp_coefficients(nodes, params, "convolution")


@given(nodes=nodes_strategy, data=st.data())
@settings(max_examples=30, deadline=None)
def test_remainder_vanishes_to_sigma_minus_one(nodes, data):
    params = data.draw(st.lists(st.integers(min_value=1, max_value=3), min_size=len(nodes), max_size=len(nodes)))
    system = hp_coefficients(nodes, params, "convolution")
    assume(system.sigma >= 2)
    assert remainder_order(system, system.sigma - 1) >= system.sigma - 1


@pytest.mark.parametrize("nodes, params", [([0, 1, 2], [2, 2, 2]), ([0, Fraction(1, 2), -3], [1, 3, 2])])
def test_coefficients_span_the_sympy_nullspace(nodes, params):
    sigma = sum(params)
    V = sympy.Matrix(generalized_vandermonde_matrix(nodes, params))
    kernel = V[:, : sigma - 1].T.nullspace()
    assert len(kernel) == 1
    system = hp_coefficients(nodes, params)
    ours = [c for row in system.coefficients for c in row]
    theirs = [Fraction(int(x.p), int(x.q)) for x in kernel[0]]
    assert is_proportional(ours, theirs)


def test_polynomial_divides_by_factorial():
    system = hp_coefficients([0, 1], [3, 3])
    assert system.polynomial(0) == tuple(c / math.factorial(k) for k, c in enumerate(system.coefficients[0]))


@pytest.mark.parametrize("K, L", [(2, 2), (3, 3), (4, 2), (3, 5)])
def test_lambda_size_and_binomial_product(K, L):
    assert check_lambda_size(K, L).passed
    assert check_binomial_product(K, L).passed
