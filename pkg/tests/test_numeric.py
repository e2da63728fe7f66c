from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bergman_toeplitz import GaussRational, ParseError, PoleAtPoint, RationalFunc, parse_gauss
from bergman_toeplitz.numeric import I, ONE, ZERO, rf_arith, rf_eval, rf_shift

from strategies import gauss, rational_funcs

lr = RationalFunc.linear_ratio


# -- Gaussian rationals ------------------------------------------------------

@pytest.mark.parametrize(
    "text, re, im",
    [
        ("3/2-1/3i", Fraction(3, 2), Fraction(-1, 3)),
        ("-1/2+3i", Fraction(-1, 2), 3),
        ("i", 0, 1),
        ("-i", 0, -1),
        ("2i", 0, 2),
        ("-2/3i", 0, Fraction(-2, 3)),
        ("0", 0, 0),
        (" 7 ", 7, 0),
    ],
)
def test_parse_gauss(text, re, im):
    assert parse_gauss(text) == GaussRational(re, im)


@pytest.mark.parametrize("text", ["", "1/0", "3 4", "1+", "ii", "1.5", "z"])
def test_parse_gauss_rejects(text):
    with pytest.raises(ParseError):
        parse_gauss(text)


@given(gauss)
def test_gauss_text_round_trip(x):
    assert parse_gauss(str(x)) == x


@given(gauss, gauss)
def test_gauss_field_laws(x, y):
    assert x + y - y == x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert (x * x.conjugate()).re == x.abs2()
    if y:
        assert x / y * y == x


def test_gauss_rendering():
    assert str(GaussRational(Fraction(3, 2), Fraction(-1, 3))) == "3/2-1/3i"
    assert str(I) == "i" and str(-I) == "-i" and str(ZERO) == "0"
    assert I * I == -ONE


# -- rational functions ------------------------------------------------------

def test_sub_example():
    r = rf_arith(lr(2, 4, 2, 6), lr(2, 2, 2, 4), "sub")
    assert r == RationalFunc([1], [6, 5, 1])
    assert str(r) == "1/(k^2+5k+6)"
    for k in range(6):
        assert r(k) == Fraction(4, (2 * k + 6) * (2 * k + 4))


@given(rational_funcs())
def test_self_difference_is_zero(r):
    assert rf_arith(r, r, "sub").is_zero()


def test_identity_and_reduction():
    r = lr(2, 2, 2, 4)
    assert rf_arith(r, RationalFunc.constant(1), "mul") == r
    assert r == lr(1, 1, 1, 2)
    assert str(r) == "(k+1)/(k+2)"


def test_shift_examples():
    assert rf_shift(lr(2, 2, 2, 4), 1) == lr(2, 4, 2, 6)
    assert rf_shift(RationalFunc.constant(5), 3) == RationalFunc.constant(5)
    assert rf_shift(lr(1, 0, 1, 1), -1) == lr(1, -1, 1, 0)


def test_eval_examples():
    assert rf_eval(lr(2, 2, 2, 4), 0) == Fraction(1, 2)
    assert rf_eval(RationalFunc(), 7) == ZERO
    assert rf_eval(RationalFunc([1], [6, 5, 1]), 0) == Fraction(1, 6)


def test_eval_at_pole():
    with pytest.raises(PoleAtPoint):
        rf_eval(lr(0, 1, 1, 0), 0)


def test_integer_poles():
    r = RationalFunc([1], [6, 5, 1])
    assert r.integer_poles == (-3, -2)
    assert not r.has_pole_at_or_above(-1)
    assert r.has_pole_at_or_above(-2)


@given(rational_funcs(), rational_funcs())
def test_add_sub_round_trip(r, s):
    assert rf_arith(rf_arith(r, s, "add"), s, "sub") == r


@given(rational_funcs(), st.integers(-5, 5))
def test_shift_round_trip(r, d):
    assert rf_shift(rf_shift(r, d), -d) == r


@given(rational_funcs(), rational_funcs())
def test_eval_is_multiplicative(r, s):
    prod = rf_arith(r, s, "mul")
    for k in range(6):
        assert rf_eval(prod, k) == rf_eval(r, k) * rf_eval(s, k)


@given(rational_funcs(), rational_funcs())
def test_structural_equals_extensional(r, s):
    # canonicalization is idempotent
    assert RationalFunc(r.num, r.den) == r
    n = max(r.num.degree, 0) + r.den.degree + max(s.num.degree, 0) + s.den.degree + 1
    agree = all(r(k) == s(k) for k in range(n))
    assert agree == (r == s)


@given(rational_funcs())
def test_json_round_trip(r):
    assert RationalFunc.from_json(r.to_json()) == r


def test_complex_denominator_is_made_real():
    r = RationalFunc([1], [GaussRational(0, 1), 1])  # 1/(k+i)
    assert r.den.coefficients[-1] == ONE
    assert all(c.im == 0 for c in r.den.coefficients)
    assert r(1) == ONE / GaussRational(1, 1)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        RationalFunc([1], [0])
