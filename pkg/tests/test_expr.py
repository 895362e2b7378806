import pytest

from cremonalab.cyclo import CycloNumber
from cremonalab.expr import (
    ParseError,
    parse_constant,
    parse_expression,
    parse_ratfunc,
    parse_tuple,
)
from cremonalab.multipoly import MultiPoly
from cremonalab.poly import RatFunc, UniPoly

P3 = ("w", "x", "y", "z")


def test_fermat_cubic():
    f = parse_expression("w^3 + x^3 + y^3 + z^3", P3)
    w, x, y, z = (MultiPoly.variable(P3, n) for n in P3)
    assert f == w**3 + x**3 + y**3 + z**3


def test_zeta_coefficients():
    f = parse_expression("zeta(3)^2 * x*y*z", P3)
    x, y, z = (MultiPoly.variable(P3, n) for n in ("x", "y", "z"))
    assert f == (x * y * z).scale(CycloNumber.zeta(3) ** 2)


def test_rationals_and_parentheses():
    f = parse_expression("1/2*x^2 - (3/4)*y + 2", ("x", "y"))
    x, y = (MultiPoly.variable(("x", "y"), n) for n in ("x", "y"))
    from fractions import Fraction

    assert f == (x**2).scale(Fraction(1, 2)) - y.scale(Fraction(3, 4)) + 2


def test_syntax_error_offsets():
    with pytest.raises(ParseError) as err:
        parse_expression("x^2 +", ("x",))
    assert err.value.position == 5
    with pytest.raises(ParseError):
        parse_expression("x^2 $ y", ("x", "y"))


def test_unknown_variable():
    with pytest.raises(ParseError):
        parse_expression("x + q", ("x", "y"))


def test_division_by_nonconstant_rejected_for_polys():
    with pytest.raises(ParseError):
        parse_expression("x / y", ("x", "y"))


def test_ratfunc_parsing():
    f = parse_ratfunc("(x^2+1)/x")
    x = UniPoly.x()
    assert f == RatFunc(x**2 + 1, x)
    assert parse_ratfunc("x^-1") == RatFunc(UniPoly.constant(1), x)


def test_constant_parsing():
    c = parse_constant("zeta(8)^2 + 1")
    assert c == CycloNumber.zeta(4) + 1


def test_tuple_parsing():
    comps = parse_tuple("(y*z : x*z : x*y)", ("x", "y", "z"))
    x, y, z = (MultiPoly.variable(("x", "y", "z"), n) for n in ("x", "y", "z"))
    assert comps == (y * z, x * z, x * y)


def test_whitespace_insensitive():
    a = parse_expression("x ^ 2+ y *z", ("x", "y", "z"))
    b = parse_expression("x^2+y*z", ("x", "y", "z"))
    assert a == b
