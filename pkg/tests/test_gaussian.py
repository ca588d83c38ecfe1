from fractions import Fraction

import pytest
from hypothesis import given

from borelkit.gaussian import I, ONE, ZERO, GaussianRational, format_gaussian, to_mpq
from borelkit.textformat import parse_scalar
from oracles import cinv, cmul, pair
from strategies import gaussians, nonzero_gaussians


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(gaussians, gaussians)
def test_product_matches_pair_oracle(a, b):
    assert pair(a * b) == cmul(pair(a), pair(b))


@given(nonzero_gaussians)
def test_inverse(a):
    assert a * a.inverse() == ONE
    assert pair(a.inverse()) == cinv(pair(a))
    assert a / a == ONE


@given(gaussians)
def test_literal_round_trip(a):
    assert parse_scalar(format_gaussian(a)) == a


def test_i_squared():
    assert I * I == -ONE
    assert format_gaussian(I) == "(0/1+1/1i)"


def test_coercions():
    assert GaussianRational.coerce(2) == GaussianRational(2)
    assert GaussianRational.coerce(0.5 + 0.25j) == GaussianRational(Fraction(1, 2), Fraction(1, 4))
    assert GaussianRational.coerce(Fraction(3, 7)).as_fractions() == (Fraction(3, 7), 0)
    assert complex(GaussianRational(1, -2)) == 1 - 2j
    assert abs(GaussianRational(3, 4)) == 5.0
    assert GaussianRational(1, 0) == 1


def test_float_conversion_is_exact():
    assert to_mpq(0.1) != to_mpq("1/10")
    assert float(to_mpq(0.1)) == 0.1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.re = 3
