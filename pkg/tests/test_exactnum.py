from __future__ import annotations

import math
import threading
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from mpmath import iv, mp

from skills.errors import ParseError, UnsupportedFieldError
from skills.exactnum import (
    AlgebraicNumber,
    RealDR,
    as_algebraic,
    embed,
    field_degree_ratio,
    format_decimal,
    interval_decimal,
    interval_contains,
    mpf_to_fraction,
    parse_algebraic,
    parse_rational,
    precision_context,
    weil_height,
)

nonzero_fractions = st.fractions(min_value=-50, max_value=50, max_denominator=50).filter(lambda q: q != 0)


# ========= parsing ========= #

def test_parse_rational_forms():
    assert parse_rational("3") == 3
    assert parse_rational(" -7/21 ") == Fraction(-1, 3)
    assert parse_rational("2.5") == Fraction(5, 2)
    with pytest.raises(ParseError):
        parse_rational("1/0")
    with pytest.raises(ParseError):
        parse_rational("e")


def test_parse_algebraic_quadratic():
    x = parse_algebraic("1/2 + 3/4*sqrt(-7)")
    assert (x.a, x.b, x.d) == (Fraction(1, 2), Fraction(3, 4), -7)
    assert parse_algebraic("-sqrt(-1)") == AlgebraicNumber(Fraction(0), Fraction(-1), -1)
    assert parse_algebraic("i") == AlgebraicNumber(Fraction(0), Fraction(1), -1)


def test_non_squarefree_d_is_normalised():
    x = parse_algebraic("sqrt(-12)")
    assert (x.b, x.d) == (2, -3)


@pytest.mark.parametrize("text", ["", "3+", "sqrt(2)", "1+2*sqrt(5)", "pi"])
def test_parse_algebraic_rejects(text):
    with pytest.raises((ParseError, UnsupportedFieldError)):
        parse_algebraic(text)


def test_str_roundtrips_through_parser(gaussian):
    for x in (AlgebraicNumber(Fraction(2, 3)), gaussian(1, -2), AlgebraicNumber(Fraction(-1), Fraction(1, 2), -3)):
        assert parse_algebraic(str(x)) == x


# ========= arithmetic / minimal polynomial ========= #

def test_field_arithmetic(gaussian):
    i = gaussian(0, 1)
    assert i * i == AlgebraicNumber(Fraction(-1))
    assert (gaussian(1, 1) ** 2) == gaussian(0, 2)
    with pytest.raises(UnsupportedFieldError):
        _ = gaussian(0, 1) + parse_algebraic("sqrt(-2)")


@given(a=st.fractions(min_value=-50, max_value=50, max_denominator=20), b=nonzero_fractions, d=st.sampled_from([-1, -2, -3, -5, -7, -11]))
@settings(max_examples=60, deadline=None)
def test_minimal_polynomial_matches_sympy(a, b, d):
    x = AlgebraicNumber(a, b, d)
    X = sympy.Symbol("X")
    expr = sympy.Rational(a.numerator, a.denominator) + sympy.Rational(b.numerator, b.denominator) * sympy.sqrt(d)
    expected = sympy.Poly(sympy.minimal_polynomial(expr, X), X)
    ours = x.minimal_polynomial
    lead = expected.LC()
    if lead < 0:
        expected = -expected
    assert tuple(int(c) for c in expected.all_coeffs()) == ours


# ========= heights ========= #

@pytest.mark.parametrize(
    "x, expected",
    [
        (AlgebraicNumber(Fraction(3)), math.log(3)),
        (AlgebraicNumber(Fraction(2, 3)), math.log(3)),
        (AlgebraicNumber(Fraction(0), Fraction(1), -1), 0.0),
        (AlgebraicNumber(Fraction(0)), 0.0),
    ],
)
def test_weil_height_examples(x, expected):
    assert float(weil_height(x)) == pytest.approx(expected, abs=1e-15)


@given(q=nonzero_fractions)
@settings(max_examples=80, deadline=None)
def test_rational_height_is_log_max(q):
    x = AlgebraicNumber(q)
    lo, hi = weil_height(x, "down"), weil_height(x, "up")
    with mp.workprec(256):
        expected = mpmath.log(max(abs(q.numerator), q.denominator))
        slack = mpmath.mpf(2) ** -200
        assert lo.value - slack <= expected <= hi.value + slack


@given(a=st.fractions(min_value=-50, max_value=50, max_denominator=20), b=nonzero_fractions, d=st.sampled_from([-1, -2, -3, -7]))
@settings(max_examples=60, deadline=None)
def test_height_is_galois_invariant(a, b, d):
    x = AlgebraicNumber(a, b, d)
    assert weil_height(x, "up") == weil_height(x.conjugate(), "up")


@given(a=st.fractions(min_value=-50, max_value=50, max_denominator=10), b=nonzero_fractions)
@settings(max_examples=40, deadline=None)
def test_directed_rounding_order(a, b):
    x = AlgebraicNumber(a, b, -1)
    down, nearest, up = (weil_height(x, r) for r in ("down", "nearest", "up"))
    assert down.value <= nearest.value <= up.value
    assert up.value - down.value < mpmath.mpf(2) ** -200


def test_height_width_shrinks_with_precision():
    x = parse_algebraic("2+3*sqrt(-5)")
    widths = [weil_height(x, "up", p).value - weil_height(x, "down", p).value for p in (64, 128, 256)]
    assert widths[0] >= widths[1] >= widths[2]


# ========= embedding / D ========= #

def test_embed_examples():
    half = embed(AlgebraicNumber(Fraction(1, 2)), 64)
    assert half.contains(0.5) and half.width() == 0
    with mp.workprec(256):
        assert embed(parse_algebraic("i"), 128).contains(mpmath.mpc(0, 1))
        box = embed(parse_algebraic("1+2*sqrt(-3)"), 128)
        assert box.contains(mpmath.mpc(1, 2 * mpmath.sqrt(3)))


def test_embed_rejects_low_precision():
    with pytest.raises(ValueError):
        embed(AlgebraicNumber(Fraction(1)), 16)


@given(a=st.fractions(min_value=-100, max_value=100, max_denominator=30), b=nonzero_fractions)
@settings(max_examples=50, deadline=None)
def test_embed_contains_double_precision_value_and_is_narrow(a, b):
    x = AlgebraicNumber(a, b, -2)
    box = embed(x, 128)
    with mp.workprec(256):
        assert box.contains(x.to_mpc(256))
        bound = mpmath.mpf(2) ** (4 - 128) * max(1, abs(x.to_mpc(256)))
        assert box.width() <= bound


def test_field_degree_ratio(gaussian):
    three, one = AlgebraicNumber(Fraction(3)), AlgebraicNumber(Fraction(1))
    assert field_degree_ratio(three, one) == 1
    assert field_degree_ratio(gaussian(1, 1), gaussian(0, 2)) == 1
    assert field_degree_ratio(three, gaussian(0, 1)) == 1
    with pytest.raises(UnsupportedFieldError):
        field_degree_ratio(gaussian(0, 1), parse_algebraic("sqrt(-3)"))


# ========= RealDR / decimals ========= #

def test_format_decimal_rounding_directions():
    third = Fraction(1, 3)
    assert format_decimal(third, "down", 4) == "0.3333"
    assert format_decimal(third, "up", 4) == "0.3334"
    assert format_decimal(-third, "down", 4) == "-0.3334"
    assert format_decimal(Fraction(2, 3), "nearest", 2) == "0.67"


def test_realdr_from_interval_and_context_restores_precision():
    saved = (mp.prec, iv.prec)
    with precision_context(96):
        x = iv.log(iv.mpf(3))
        down = RealDR.from_interval(x, "down", 96)
        up = RealDR.from_interval(x, "up", 96)
        assert interval_contains(x, down.value) and interval_contains(x, up.value)
    assert (mp.prec, iv.prec) == saved
    assert down.to_fraction() <= up.to_fraction()
    with mp.workprec(128):
        assert abs(down.value - mpmath.log(3)) < mpmath.mpf(2) ** -90


@pytest.mark.parametrize("value, expected", [("-3.5", Fraction(-7, 2)), ("0.25", Fraction(1, 4)), ("-12", Fraction(-12)), ("0", Fraction(0))])
def test_mpf_to_fraction_keeps_sign(value, expected):
    assert mpf_to_fraction(mpmath.mpf(value)) == expected


def test_interval_decimal_of_negative_interval():
    with precision_context(128):
        x = -iv.log(iv.mpf(3))
        down, up = interval_decimal(x, "down"), interval_decimal(x, "up")
    assert down.startswith("-1.0986") and up.startswith("-1.0986")
    assert Fraction(down) < Fraction(up) < 0


def test_as_algebraic_passes_numbers_through(gaussian):
    z = gaussian(1, 2)
    assert as_algebraic(z) is z
    assert as_algebraic("1+2*sqrt(-1)") == z


# ========= precision under threads ========= #

def test_precision_context_is_private_per_thread():
    baseline = (mp.prec, iv.prec)
    barrier = threading.Barrier(2)
    seen = {}

    def work(bits):
        barrier.wait()
        observed = set()
        for _ in range(200):
            with precision_context(bits):
                iv.exp(1)
                observed.add((mp.prec, iv.prec))
        seen[bits] = observed

    threads = [threading.Thread(target=work, args=(bits,)) for bits in (64, 1024)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert seen == {64: {(64, 64)}, 1024: {(1024, 1024)}}
    assert (mp.prec, iv.prec) == baseline


def test_concurrent_rhs_evaluations_restore_global_precision():
    from skills.bound_engine import theorem1_rhs

    baseline = (mp.prec, iv.prec)
    results = {}

    def work(bits):
        results[bits] = theorem1_rhs("3", "1", 1, 2, 3, 6, 3, "5/2", precision=bits).to_fraction()

    threads = [threading.Thread(target=work, args=(bits,)) for bits in (64, 128, 256, 512)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert (mp.prec, iv.prec) == baseline
    assert len(results) == 4
    assert abs(results[64] - results[512]) < Fraction(1, 2**40)
