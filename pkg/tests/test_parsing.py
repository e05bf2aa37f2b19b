from fractions import Fraction

import pytest
from hypothesis import given, settings

from ellop.parsing import ParseError, UnknownVariableError, infer_variables, parse_operator, parse_polynomial
from ellop.polycore import Polynomial, render_polynomial
from ellop.weyl import DiffOperator, render_operator

from conftest import XY, XYZ, operators, polynomials

X, Y = Polynomial.generators(XY)


def test_cusp_text():
    p = parse_polynomial("Y^3 - X^2", XY)
    assert len(p.terms) == 2
    assert p == Y ** 3 - X ** 2


def test_laplacian_type_operator():
    op = parse_operator("dX^4 + dY^4", XY)
    assert op.terms == {(4, 0): Polynomial.constant(XY, 1), (0, 4): Polynomial.constant(XY, 1)}


def test_single_term_operator():
    assert parse_operator("3*X*dY^2", XY).terms == {(0, 2): 3 * X}


def test_products_compose():
    assert parse_operator("dX*X", XY) == parse_operator("X*dX + 1", XY)
    assert parse_operator("(dX + Y)^2", XY) == parse_operator("dX^2 + 2*Y*dX + Y^2", XY)


def test_rational_literals_and_unary_minus():
    assert parse_polynomial("-3/4*X + (1/2)", XY) == X.scale(Fraction(-3, 4)) + Fraction(1, 2)
    assert parse_polynomial("X**2", XY) == X ** 2


def test_declared_variable_wins_over_derivative_token():
    ctx = ("dX", "X")
    p = parse_polynomial("dX*X", ctx)
    assert p == Polynomial.variable(ctx, "dX") * Polynomial.variable(ctx, "X")


@pytest.mark.parametrize("text, position", [("X +", 3), ("X ^ Y", 4), ("(X", 2), ("X $ 1", 2)])
def test_errors_carry_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text, XY)
    assert info.value.position == position


def test_unknown_variable():
    with pytest.raises(UnknownVariableError) as info:
        parse_polynomial("X + W", XY)
    assert info.value.position == 4 and info.value.name == "W"


def test_division_by_zero_is_rejected():
    with pytest.raises(ParseError):
        parse_polynomial("X/0", XY)
    with pytest.raises(ParseError):
        parse_polynomial("1/X", XY)


def test_infer_variables():
    assert infer_variables("Y^3 - X^2") == ("X", "Y")
    assert infer_variables("3*Y^2*dX + 2*X*dY", operator=True) == ("X", "Y")


@settings(max_examples=200)
@given(polynomials(XYZ, max_degree=4, max_terms=6))
def test_polynomial_round_trip(p):
    assert parse_polynomial(render_polynomial(p), XYZ) == p


@settings(max_examples=200)
@given(operators(XY, max_order=4))
def test_operator_round_trip(op):
    assert parse_operator(render_operator(op), XY) == op


@given(operators(XYZ, max_order=2, coeff_degree=1))
def test_operator_round_trip_three_variables(op):
    assert parse_operator(str(op), XYZ) == op
    assert isinstance(op, DiffOperator)
