from fractions import Fraction
from math import perm

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ellop.polycore import (
    ContextMismatch,
    Polynomial,
    UnknownVariable,
    falling_factorial,
    render_polynomial,
)

from conftest import XY, XYZ, points, polynomials, rationals, to_sympy

X, Y = Polynomial.generators(XY)
CUSP = Y ** 3 - X ** 2


def test_difference_of_squares():
    assert (X + Y) * (X - Y) == X ** 2 - Y ** 2


def test_additive_identity():
    p = 3 * X * Y - Fraction(1, 2)
    assert p + Polynomial.zero(XY) == p


def test_cusp_squared_matches_sympy_expansion():
    expected = Polynomial(XY, {(0, 6): 1, (2, 3): -2, (4, 0): 1})
    assert CUSP * CUSP == expected
    assert to_sympy(CUSP * CUSP) == sympy.expand(to_sympy(CUSP) ** 2)


def test_derivatives():
    assert (X ** 2 * Y).diff("X") == 2 * X * Y
    assert (X ** 3).diff("X", 4).is_zero()
    assert (X ** 6).diff("X", 4) == 360 * X ** 2
    assert falling_factorial(6, 4) == perm(6, 4) == 360


def test_evaluation():
    assert CUSP.evaluate((1, 1)) == 0
    assert CUSP.evaluate((2, 2)) == 4
    seven = Polynomial.constant(XY, 7)
    assert seven.evaluate((Fraction(-3, 7), 11)) == 7


def test_context_mismatch_is_an_error():
    (U,) = Polynomial.generators(("U",))
    with pytest.raises(ContextMismatch):
        X + U
    with pytest.raises(UnknownVariable):
        Polynomial.variable(XY, "Z")


def test_rendering_is_canonical():
    p = Polynomial(XY, {(2, 0): 3, (0, 1): Fraction(-1, 2), (0, 0): 7})
    assert render_polynomial(p) == "3*X^2 - 1/2*Y + 7"
    assert render_polynomial(Polynomial.zero(XY)) == "0"


def test_degrees_and_parts():
    assert CUSP.total_degree() == 3
    assert CUSP.degree_in("X") == 2 and CUSP.degree_in("Y") == 3
    assert CUSP.homogeneous_part(2) == -(X ** 2)
    assert not CUSP.is_homogeneous()


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p + q == q + p
    assert p - p == Polynomial.zero(XY)


@given(polynomials(), polynomials())
def test_product_agrees_with_sympy(p, q):
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))


@given(polynomials(XYZ))
def test_mixed_partials_commute(p):
    assert p.diff("X").diff("Y") == p.diff("Y").diff("X")
    assert p.diff("Z").diff("X") == p.diff_multi((1, 0, 1))


@given(polynomials(), polynomials(), points(2))
def test_evaluation_is_a_ring_homomorphism(p, q, z):
    assert (p * q).evaluate(z) == p.evaluate(z) * q.evaluate(z)
    assert (p + q).evaluate(z) == p.evaluate(z) + q.evaluate(z)


@given(polynomials(), points(2))
def test_translate_moves_the_origin(p, z):
    assert p.translate(z).evaluate((0, 0)) == p.evaluate(z)


@given(polynomials(), polynomials(), polynomials())
def test_substitution_is_composition(p, a, b):
    composed = p.substitute([a, b])
    z = (Fraction(2, 3), Fraction(-5, 2))
    assert composed.evaluate(z) == p.evaluate((a.evaluate(z), b.evaluate(z)))


@given(polynomials(), st.integers(0, 4))
def test_power_is_repeated_product(p, e):
    out = Polynomial.constant(XY, 1)
    for _ in range(e):
        out = out * p
    assert p ** e == out


@given(polynomials(), rationals)
def test_scaling(p, k):
    assert p.scale(k) == p * Polynomial.constant(XY, k)
