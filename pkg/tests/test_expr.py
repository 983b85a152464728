from fractions import Fraction

import pytest

from cdalg.errors import InputError, ParseError, SqrtError
from cdalg.expr import SqrtExpr, evaluate, linear_form, parse, parse_expression
from cdalg.scalars import scalar, var

t = var("t")


def test_parse_rational_function():
    assert parse_expression("(1 + t)^2 / t", {"t"}) == (1 + 2 * t + t**2) / t


def test_sqrt_modes():
    with pytest.raises(SqrtError, match="sqrt not allowed in exact mode"):
        parse_expression("sqrt(1 - 4*L)", {"L"})
    e = parse_expression("sqrt(1 - 4*L)", {"L"}, mode="sampled")
    assert isinstance(e, SqrtExpr)
    assert e.evaluate({"L": -2}) == scalar(3)


def test_theta_macro():
    node = parse("Theta(L)", {"L"}, macros=True)
    assert evaluate(node, {"L": -2}) == scalar(2)
    assert evaluate(parse("Psi(L)", {"L"}, macros=True), {"L": -2}) == scalar(-1)
    with pytest.raises(ParseError, match="unknown function"):
        parse("Theta(L)", {"L"})


def test_irrational_sqrt_rejected():
    with pytest.raises(SqrtError):
        evaluate(parse("sqrt(2)"))
    with pytest.raises(SqrtError):
        evaluate(parse("sqrt(-4)"))
    assert evaluate(parse("sqrt(9/4)")) == scalar(Fraction(3, 2))


@pytest.mark.parametrize(
    "text, column",
    [("2t", 2), ("2*t t", 5), ("t^x", 3), ("t^-1", 3), ("(t", 3), ("t $ 1", 3)],
)
def test_syntax_errors(text, column):
    with pytest.raises(ParseError) as info:
        parse(text, {"t", "x"})
    assert info.value.column == column


def test_unknown_variable():
    with pytest.raises(ParseError, match="unknown variable 'beta'"):
        parse("alpha + beta", {"alpha"})


def test_precedence():
    assert evaluate(parse("-t^2")) == -(t**2)
    assert evaluate(parse("2/3*t")) == Fraction(2, 3) * t
    assert evaluate(parse("1 - 2 - 3")) == scalar(-4)
    assert evaluate(parse("(2^3)^2")) == scalar(64)


def test_linear_form():
    basis = {"e1": 1, "e2": 2, "e3": 3}
    node = parse("t*e1 - (t^2 + 1)*e3/2 + e1", {"t", "e1", "e2", "e3"})
    coeffs = {k: evaluate(v) for k, v in linear_form(node, basis).items()}
    assert coeffs[1] == t + 1
    assert coeffs[3] == -(t**2 + 1) / 2
    assert 2 not in coeffs
    for bad in ["e1*e2", "e1 + 1", "1/e1", "e1^2"]:
        with pytest.raises(InputError):
            linear_form(parse(bad), basis)


def test_unknown_mode():
    with pytest.raises(InputError):
        parse_expression("1", mode="fuzzy")
