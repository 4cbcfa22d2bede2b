from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from skills.linalg import (
    bareiss_det,
    gram_det,
    mat_vec,
    maximal_minors,
    primitive_integer_vector,
    rank,
    signed_cofactors,
)


def square_matrices(max_n: int = 5):
    return st.integers(min_value=1, max_value=max_n).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    )


def wide_matrices(max_rows: int = 4):
    return st.integers(min_value=1, max_value=max_rows).flatmap(
        lambda r: st.lists(
            st.lists(st.integers(min_value=-5, max_value=5), min_size=r + 1, max_size=r + 1),
            min_size=r,
            max_size=r,
        )
    )


@given(m=square_matrices())
@settings(max_examples=100, deadline=None)
def test_bareiss_det_matches_sympy(m):
    assert bareiss_det(m) == sympy.Matrix(m).det()


@given(m=square_matrices(4))
@settings(max_examples=60, deadline=None)
def test_rank_matches_sympy(m):
    assert rank(m) == sympy.Matrix(m).rank()


def test_bareiss_det_rational_and_errors():
    m = [[Fraction(1, 2), Fraction(1, 3)], [1, 1]]
    assert bareiss_det(m) == Fraction(1, 6)
    assert bareiss_det([]) == 1
    assert bareiss_det([[0, 1], [0, 2]]) == 0
    with pytest.raises(ValueError):
        bareiss_det([[1, 2, 3], [4, 5, 6]])


@given(m=wide_matrices())
@settings(max_examples=60, deadline=None)
def test_cofactor_vector_is_orthogonal_to_rows(m):
    cof = signed_cofactors(maximal_minors(m))
    assert mat_vec(m, cof) == [0] * len(m)


@given(m=wide_matrices())
@settings(max_examples=60, deadline=None)
def test_gram_det_is_sum_of_squared_minors(m):
    n_cols = len(m[0])
    expected = sum(
        sympy.Matrix([[row[c] for c in cols] for row in m]).det() ** 2
        for cols in combinations(range(n_cols), len(m))
    )
    assert gram_det(m) == expected
    assert gram_det(m) == sum(d * d for d in maximal_minors(m))


def test_maximal_minors_shape_check():
    with pytest.raises(ValueError):
        maximal_minors([[1, 2], [3, 4]])


def test_primitive_integer_vector():
    assert primitive_integer_vector([Fraction(1, 2), Fraction(-3, 4), 0]) == [2, -3, 0]
    assert primitive_integer_vector([6, -9]) == [2, -3]
    with pytest.raises(ValueError):
        primitive_integer_vector([0, 0])
