from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ellop.polycore import Polynomial
from ellop.weyl import DiffOperator

settings.register_profile(
    "ellop", deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("ellop")

FIXTURES = Path(__file__).parent / "fixtures"
VARIETIES = sorted((FIXTURES / "varieties").glob("*.json"))

XY = ("X", "Y")
XYZ = ("X", "Y", "Z")


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def fixture_data(name: str) -> dict:
    return json.loads(fixture_path(name).read_text())


@pytest.fixture
def cusp_data() -> dict:
    return fixture_data("cusp.json")


# sympy conversions: the independent oracle for arithmetic, calculus and bases

def to_sympy(p: Polynomial):
    syms = sympy.symbols(p.variables)
    syms = syms if isinstance(syms, tuple) else (syms,)
    out = sympy.Integer(0)
    for mono, c in p.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, mono):
            term *= s ** e
        out += term
    return sympy.expand(out)


def from_sympy(expr, variables) -> Polynomial:
    syms = sympy.symbols(variables)
    syms = syms if isinstance(syms, tuple) else (syms,)
    poly = sympy.Poly(sympy.expand(expr), *syms)
    return Polynomial(variables, {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


# hypothesis strategies

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_rationals = rationals.filter(bool)


@st.composite
def monomials(draw, n: int, max_degree: int):
    budget = draw(st.integers(0, max_degree))
    out = []
    for _ in range(n):
        e = draw(st.integers(0, budget))
        out.append(e)
        budget -= e
    draw(st.randoms(use_true_random=False)).shuffle(out)
    return tuple(out)


def polynomials(variables=XY, max_degree: int = 3, max_terms: int = 4):
    return st.dictionaries(monomials(len(variables), max_degree), rationals, max_size=max_terms).map(
        lambda terms: Polynomial(variables, terms)
    )


def operators(variables=XY, max_order: int = 3, coeff_degree: int = 2, max_terms: int = 3):
    coeffs = polynomials(variables, coeff_degree, 3)
    return st.dictionaries(monomials(len(variables), max_order), coeffs, max_size=max_terms).map(
        lambda terms: DiffOperator(variables, terms)
    )


def points(n: int):
    return st.lists(rationals, min_size=n, max_size=n).map(tuple)
