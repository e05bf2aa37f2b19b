from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellop.affine import (
    PointNotOnVariety,
    ambient,
    ev,
    homomorphism_from_images,
    kpoint,
    make_quotient,
    parse_point,
)
from ellop.polycore import Polynomial

from conftest import XY, points, polynomials

X, Y = Polynomial.generators(XY)
CUSP = Y ** 3 - X ** 2
A = make_quotient(XY, [CUSP])


def test_cusp_coordinate_ring():
    assert A.generators == (CUSP,)
    assert not A.is_ambient()
    assert A.equal(Y ** 3, X ** 2)


def test_ambient_ring():
    B = ambient(XY)
    assert B.is_ambient() and B.vector_space_dimension() is None


def test_two_point_algebra():
    (T,) = Polynomial.generators(("X",))
    two = make_quotient(("X",), [T ** 2 - 1])
    assert two.vector_space_dimension() == 2
    assert two.multiply(T, T) == Polynomial.constant(("X",), 1)


def test_points_on_the_cusp():
    assert kpoint(A, (1, 1)).coordinates == (1, 1)
    assert kpoint(A, (8, 4))(Y ** 3) == 64
    with pytest.raises(PointNotOnVariety) as info:
        kpoint(A, (2, 2))
    assert info.value.value == 4


def test_homomorphisms_from_images():
    assert homomorphism_from_images(A, (1, 1)).coordinates == (1, 1)
    with pytest.raises(PointNotOnVariety):
        homomorphism_from_images(A, (1, 2))
    assert homomorphism_from_images(ambient(XY), (Fraction(-7, 3), 5)).coordinates == (Fraction(-7, 3), 5)


def test_evaluation_ignores_the_representative():
    h = kpoint(A, (1, 1))
    assert ev(h, X + Y) == 2
    assert ev(h, X + CUSP * X ** 7) == 1


def test_parse_point():
    assert parse_point("1/2, -3") == (Fraction(1, 2), -3)
    for bad in ("", "1,,2", "a,b", "1/0,1"):
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse_point(bad)


@given(polynomials(), polynomials(), st.integers(-3, 3))
def test_representative_independence(p, q, t):
    h = kpoint(A, (t ** 3, t ** 2))
    assert ev(h, p + q * CUSP) == ev(h, p)


@given(polynomials(), polynomials(), st.integers(-3, 3))
def test_ev_is_an_algebra_homomorphism(p, q, t):
    h = kpoint(A, (t ** 3, t ** 2))
    assert ev(h, p * q) == ev(h, p) * ev(h, q)
    assert ev(h, Polynomial.constant(XY, 1)) == 1


@given(st.lists(polynomials(XY, 2, 3), min_size=1, max_size=2), points(2))
def test_kpoint_acceptance_matches_brute_force(gens, z):
    algebra = make_quotient(XY, gens)
    on_variety = all(g.evaluate(z) == 0 for g in gens)
    try:
        kpoint(algebra, z)
        accepted = True
    except PointNotOnVariety:
        accepted = False
    assert accepted == on_variety


@given(polynomials(), st.integers(0, 4), st.integers(0, 2))
def test_quotient_equality_is_normal_form_equality(p, a, b):
    q = p + Polynomial.monomial(XY, (a, b)) * CUSP
    assert A.equal(p, q) and A.normal_form(p) == A.normal_form(q)
