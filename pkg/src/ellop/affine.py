"""Coordinate rings of affine varieties and their rational points.

Points are restricted to rational coordinates; a point of the variety whose
coordinates are irrational cannot be represented.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .groebner import GroebnerBasis, MonomialOrder, buchberger, normal_form
from .polycore import Number, Polynomial, as_scalar, check_context


class PointNotOnVariety(ValueError):
    """Raised when some ideal generator does not vanish at a candidate point."""

    def __init__(self, point: Sequence[Fraction], generator: Polynomial, value: Fraction):
        self.point = tuple(point)
        self.generator = generator
        self.value = value
        coords = ", ".join(str(c) for c in self.point)
        super().__init__(f"point ({coords}) is not on the variety: {generator} evaluates to {value}")


@dataclass(frozen=True)
class QuotientAlgebra:
    """``Q[X_1..X_n] / I`` with elements represented by Groebner normal forms."""

    variables: tuple[str, ...]
    basis: GroebnerBasis

    @property
    def generators(self) -> tuple[Polynomial, ...]:
        return tuple(g for g in self.basis.source_generators if not g.is_zero())

    @property
    def order(self) -> MonomialOrder:
        return self.basis.order

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_ambient(self) -> bool:
        return self.basis.is_zero_ideal()

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self.basis)

    def equal(self, p: Polynomial, q: Polynomial) -> bool:
        return self.normal_form(p - q).is_zero()

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def multiply(self, p: Polynomial, q: Polynomial) -> Polynomial:
        return self.normal_form(p * q)

    def variable(self, name: str) -> Polynomial:
        return Polynomial.variable(self.variables, name)

    def standard_monomials(self, max_degree: int) -> list[tuple]:
        """Monomials of degree ``<= max_degree`` not divisible by any leading monomial."""
        from .weyl import monomials_up_to

        leads = self.basis.leading_monomials()
        return [
            m for m in monomials_up_to(self.nvars, max_degree)
            if not any(all(a <= b for a, b in zip(lm, m)) for lm in leads)
        ]

    def vector_space_dimension(self) -> int | None:
        """Dimension over Q if finite, else ``None``."""
        leads = self.basis.leading_monomials()
        if self.basis.is_unit_ideal():
            return 0
        bound = 0
        for i in range(self.nvars):
            pure = [lm[i] for lm in leads if all(e == 0 for j, e in enumerate(lm) if j != i)]
            if not pure:
                return None
            bound += min(pure)
        return len(self.standard_monomials(bound))


def make_quotient(variables: Sequence[str], generators: Sequence[Polynomial],
                  order: str | MonomialOrder = "grevlex") -> QuotientAlgebra:
    variables = tuple(variables)
    if isinstance(order, str):
        order = MonomialOrder(order, variables)
    check_context(variables, order.variables)
    for g in generators:
        check_context(variables, g.variables)
    return QuotientAlgebra(variables, buchberger(list(generators), order))


def ambient(variables: Sequence[str], order: str = "grevlex") -> QuotientAlgebra:
    return make_quotient(variables, [], order)


@dataclass(frozen=True)
class KPoint:
    """The evaluation homomorphism ``f -> f(z)`` at a rational point ``z`` of the variety."""

    algebra: QuotientAlgebra
    coordinates: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(as_scalar(c) for c in self.coordinates)
        object.__setattr__(self, "coordinates", coords)
        if len(coords) != self.algebra.nvars:
            raise ValueError(
                f"point has {len(coords)} coordinates, algebra has {self.algebra.nvars} variables"
            )
        for g in self.algebra.generators:
            v = g.evaluate(coords)
            if v:
                raise PointNotOnVariety(coords, g, v)

    @property
    def variables(self):
        return self.algebra.variables

    def __call__(self, f: Polynomial) -> Fraction:
        return ev(self, f)

    def with_algebra(self, algebra: QuotientAlgebra) -> "KPoint":
        return KPoint(algebra, self.coordinates)

    def describe(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coordinates) + ")"


def kpoint(algebra: QuotientAlgebra, z: Sequence[Number]) -> KPoint:
    return KPoint(algebra, tuple(as_scalar(c) for c in z))


def homomorphism_from_images(algebra: QuotientAlgebra, images: Sequence[Number]) -> KPoint:
    """A homomorphism ``Q[X]/I -> Q`` is fixed by the images of the coordinate
    functions; it exists exactly when those images form a point of the variety."""
    if len(images) != algebra.nvars:
        raise ValueError(f"need one image per variable ({algebra.nvars}), got {len(images)}")
    return kpoint(algebra, images)


def ev(h: KPoint, f: Polynomial) -> Fraction:
    check_context(h.variables, f.variables)
    return f.evaluate(h.coordinates)


def parse_point(text: str) -> tuple[Fraction, ...]:
    """Parse ``"1,1"`` or ``"1/2, -3"`` into rational coordinates."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not p for p in parts):
        raise ValueError(f"malformed point {text!r}")
    try:
        return tuple(Fraction(p) for p in parts)
    except ValueError:
        raise ValueError(f"malformed point {text!r}: coordinates must be integers or p/q") from None
