import pytest
from hypothesis import given

from borelkit import ExpFunctional, ExpPoly, Polynomial
from borelkit.textformat import ParseError, parse_exppoly, parse_functional, parse_polynomial, parse_scalar
from strategies import exppolys, functionals


@pytest.mark.parametrize("text, pos", [
    ("z1^2+*z2", 5),
    ("z1 + 3/0", 5),
    ("z1 + x", 5),
    ("(z1+z2", 6),
    ("z1^", 3),
    ("z1 z2", 3),
])
def test_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text)
    assert info.value.pos == pos
    assert f"position {pos}" in str(info.value)


def test_unknown_variable_rejected_with_fixed_arity():
    with pytest.raises(ParseError) as info:
        parse_polynomial("z1 + z3", 2)
    assert info.value.pos == 5


def test_whitespace_insensitive():
    assert parse_polynomial(" z1 ^ 2 +  (1/2) * z2 ") == parse_polynomial("z1^2+1/2*z2")


def test_canonical_format_parses():
    p = parse_polynomial("(1/1)*z1^2 + (1/1)*z2^2 + (-1/1)")
    assert p == parse_polynomial("z1^2+z2^2-1")


def test_scalar_literals():
    assert complex(parse_scalar("(1/2+3/4i)")) == 0.5 + 0.75j
    assert complex(parse_scalar("-i")) == -1j
    with pytest.raises(ParseError):
        parse_scalar("z1")


def test_exppoly_format():
    f = parse_exppoly("[z1] * exp(<1/2, i>) + [1] * exp(<0,0>)")
    assert f.nvars == 2 and len(f.terms()) == 2
    assert parse_exppoly("0", 3).is_zero


def test_exppoly_error_positions():
    with pytest.raises(ParseError) as info:
        parse_exppoly("[z1] * exp(<1/2, i>) + [z1 +] * exp(<0,0>)")
    assert info.value.pos == 28  # end of the coefficient text, just before ']'
    with pytest.raises(ParseError):
        parse_exppoly("[1] * exp(<1, 2>)", 3)
    with pytest.raises(ParseError):
        parse_exppoly("z1 * exp(1)")


def test_functional_format():
    T = parse_functional("[z1] @ (1, 0) + [2] @ (0, (1/2+1/1i))")
    assert T.nvars == 2 and len(T.terms()) == 2
    with pytest.raises(ParseError):
        parse_functional("[z1] @ (1, q)")


@given(exppolys())
def test_exppoly_round_trip(f):
    assert ExpPoly.parse(str(f), 2) == f


@given(functionals())
def test_functional_round_trip(T):
    assert ExpFunctional.parse(str(T), 2) == T


def test_polynomial_from_method():
    assert Polynomial.parse("z2", 3).nvars == 3
