"""Cotangent spaces ``I_h / I_h^2`` at rational points, and the tangent pairing.

At a point ``z`` of ``V(I)`` every class ``[f - f(z)]`` is determined by the
gradient of ``f`` at ``z`` modulo the span of the generator gradients
``grad g_j(z)``.  Coordinates are stored canonically: reduced against the
reduced row echelon form of those rows, so every pivot coordinate is zero.

The span does not depend on the chosen generators.  If ``p = sum q_j g_j`` is
any element of ``I`` then, since every ``g_j(z) = 0``,
``grad p(z) = sum q_j(z) grad g_j(z)``.

Four independent routes produce the same canonical class:

* ``d_h`` differentiates and evaluates;
* ``classical_normalize`` expands ``sum b_i f_i`` around ``z`` and keeps its
  linear part (the constant part must vanish and higher parts lie in
  ``I_h^2``);
* ``rough_normalize`` rewrites formal symbols ``<f>`` with the Leibniz
  relation, peeling one variable at a time;
* ``algebraic_normalize`` rewrites tensors ``1 (x) f`` with the same relation,
  splitting monomials into halves.

``kaehler_specialize`` builds the module of Kaehler differentials of
``Q[X]/I`` with polynomial relation rows and specializes it at ``z``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .affine import KPoint, QuotientAlgebra, kpoint
from .linalg import dot, kernel, rank, reduce_vector, rref
from .polycore import Number, Polynomial, as_scalar, check_context


class NotInKernel(ValueError):
    def __init__(self, value: Fraction):
        self.value = value
        super().__init__(f"element is not in the kernel of the multiplication map: it evaluates to {value}")


@dataclass(frozen=True)
class CotangentSpace:
    point: KPoint
    relation_rows: tuple[tuple[Fraction, ...], ...]
    reduced_relations: tuple[tuple[Fraction, ...], ...] = field(init=False)
    pivots: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        echelon, pivots = rref(self.relation_rows, self.ambient_dim)
        object.__setattr__(self, "reduced_relations", tuple(tuple(r) for r in echelon))
        object.__setattr__(self, "pivots", tuple(pivots))

    @property
    def ambient_dim(self) -> int:
        return self.point.algebra.nvars

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.pivots)

    @property
    def free_coordinates(self) -> tuple[int, ...]:
        """Non-pivot coordinates; they index a basis of the space."""
        return tuple(i for i in range(self.ambient_dim) if i not in self.pivots)

    def canonical(self, v: Sequence[Number]) -> tuple[Fraction, ...]:
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector of length {len(v)} in a space of ambient dimension {self.ambient_dim}")
        return reduce_vector([as_scalar(x) for x in v], self.reduced_relations, self.pivots)

    def vector(self, v: Sequence[Number]) -> "CotangentVector":
        return CotangentVector(self, self.canonical(v))

    def zero(self) -> "CotangentVector":
        return self.vector([0] * self.ambient_dim)

    def basis(self) -> list["CotangentVector"]:
        out = []
        for i in self.free_coordinates:
            e = [Fraction(0)] * self.ambient_dim
            e[i] = Fraction(1)
            out.append(self.vector(e))
        return out

    def reduced_coordinates(self, w: "CotangentVector") -> tuple[Fraction, ...]:
        """Coordinates with respect to :meth:`basis` (the free entries)."""
        return tuple(w.coords[i] for i in self.free_coordinates)

    def same_geometry(self, other: "CotangentSpace") -> bool:
        return (
            self.point.coordinates == other.point.coordinates
            and self.reduced_relations == other.reduced_relations
            and self.pivots == other.pivots
        )


@dataclass(frozen=True)
class CotangentVector:
    space: CotangentSpace
    coords: tuple[Fraction, ...]

    def __add__(self, other: "CotangentVector") -> "CotangentVector":
        return self.space.vector([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "CotangentVector") -> "CotangentVector":
        return self.space.vector([a - b for a, b in zip(self.coords, other.coords)])

    def scale(self, k: Number) -> "CotangentVector":
        k = as_scalar(k)
        return self.space.vector([k * a for a in self.coords])

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        if not isinstance(other, CotangentVector):
            return NotImplemented
        return self.space.same_geometry(other.space) and self.coords == other.coords

    def __hash__(self):
        return hash((self.space.point.coordinates, self.coords))


@dataclass(frozen=True)
class FormalDerivationSum:
    """A finite formal sum ``sum b_i <f_i>`` (or ``sum b_i (x) f_i``)."""

    terms: tuple[tuple[Fraction, Polynomial], ...]

    @classmethod
    def of(cls, *pairs) -> "FormalDerivationSum":
        return cls(tuple((as_scalar(b), f) for b, f in pairs))

    @classmethod
    def single(cls, f: Polynomial, b: Number = 1) -> "FormalDerivationSum":
        return cls(((as_scalar(b), f),))

    @classmethod
    def delta(cls, h: KPoint, f: Polynomial) -> "FormalDerivationSum":
        """``1 (x) f - h(f) (x) 1``."""
        one = Polynomial.constant(f.variables, 1)
        return cls(((Fraction(1), f), (-f.evaluate(h.coordinates), one)))


@dataclass(frozen=True)
class TangentVector:
    space: CotangentSpace
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        for row in self.space.relation_rows:
            if dot(row, self.coords):
                raise ValueError(f"{self.coords} is not annihilated by the relation row {row}")


def _gradient_at(f: Polynomial, z: Sequence[Fraction]) -> list[Fraction]:
    return [f.diff(i).evaluate(z) for i in range(f.nvars)]


def cotangent_space(h: KPoint) -> CotangentSpace:
    rows = tuple(tuple(_gradient_at(g, h.coordinates)) for g in h.algebra.generators)
    return CotangentSpace(h, rows)


def d_h(h: KPoint, f: Polynomial, space: CotangentSpace | None = None) -> CotangentVector:
    check_context(h.variables, f.variables)
    space = space or cotangent_space(h)
    return space.vector(_gradient_at(f, h.coordinates))


def classical_normalize(h: KPoint, s: FormalDerivationSum, space: CotangentSpace | None = None) -> CotangentVector:
    """Class in ``I_h / I_h^2`` of ``sum b_i (x) f_i`` with ``sum b_i f_i(z) = 0``."""
    space = space or cotangent_space(h)
    n = h.algebra.nvars
    element = Polynomial.zero(h.variables)
    for b, f in s.terms:
        check_context(h.variables, f.variables)
        element = element + f.scale(b)
    value = element.evaluate(h.coordinates)
    if value:
        raise NotInKernel(value)
    # expand around z: the linear part is the class, higher parts lie in I_h^2
    shifted = element.translate(h.coordinates)
    linear = [Fraction(0)] * n
    for mono, c in shifted.items():
        if sum(mono) == 1:
            linear[mono.index(1)] = c
    return space.vector(linear)


def rough_normalize(h: KPoint, s: FormalDerivationSum, space: CotangentSpace | None = None) -> CotangentVector:
    """Rewrite ``<fg> -> h(f)<g> + h(g)<f>`` and ``<k> -> 0`` down to ``<X_i>``."""
    space = space or cotangent_space(h)
    z = h.coordinates
    n = len(z)

    @lru_cache(maxsize=None)
    def symbol(mono: tuple) -> tuple[Fraction, ...]:
        # coefficients of <mono> on the generators <X_i>
        if not any(mono):
            return (Fraction(0),) * n
        i = next(j for j, e in enumerate(mono) if e)
        if sum(mono) == 1:
            return tuple(Fraction(int(j == i)) for j in range(n))
        rest = mono[:i] + (mono[i] - 1,) + mono[i + 1:]
        rest_val = Fraction(1)
        for zj, e in zip(z, rest):
            rest_val *= zj ** e
        head = tuple(Fraction(int(j == i)) for j in range(n))
        tail = symbol(rest)
        return tuple(z[i] * t + rest_val * hd for t, hd in zip(tail, head))

    total = [Fraction(0)] * n
    for b, f in s.terms:
        check_context(h.variables, f.variables)
        for mono, c in f.items():
            for j, v in enumerate(symbol(mono)):
                total[j] += b * c * v
    return space.vector(total)


def algebraic_normalize(h: KPoint, s: FormalDerivationSum, space: CotangentSpace | None = None) -> CotangentVector:
    """Class of ``sum b_i (x) f_i`` modulo ``a (x) fg - a h(f) (x) g - a h(g) (x) f``."""
    space = space or cotangent_space(h)
    z = h.coordinates
    n = len(z)

    def value(mono):
        out = Fraction(1)
        for zj, e in zip(z, mono):
            out *= zj ** e
        return out

    @lru_cache(maxsize=None)
    def tensor(mono: tuple) -> tuple[Fraction, ...]:
        deg = sum(mono)
        if deg == 0:
            return (Fraction(0),) * n
        if deg == 1:
            return tuple(Fraction(e) for e in mono)
        # split into two halves of (nearly) equal degree
        left = [0] * n
        need = deg // 2
        for j, e in enumerate(mono):
            take = min(e, need)
            left[j] = take
            need -= take
        left = tuple(left)
        right = tuple(a - b for a, b in zip(mono, left))
        lv, rv = value(left), value(right)
        tl, tr = tensor(left), tensor(right)
        return tuple(lv * b + rv * a for a, b in zip(tl, tr))

    total = [Fraction(0)] * n
    for b, f in s.terms:
        check_context(h.variables, f.variables)
        for mono, c in f.items():
            for j, v in enumerate(tensor(mono)):
                total[j] += b * c * v
    return space.vector(total)


@dataclass(frozen=True)
class KaehlerPresentation:
    """``Omega_{A/Q}`` for ``A = Q[X]/I``: free on ``dX_i`` modulo polynomial rows."""

    algebra: QuotientAlgebra
    rows: tuple[tuple[Polynomial, ...], ...]

    def specialize(self, h: KPoint) -> CotangentSpace:
        rows = tuple(tuple(c.evaluate(h.coordinates) for c in row) for row in self.rows)
        return CotangentSpace(h, rows)

    def differential(self, f: Polynomial) -> tuple[Polynomial, ...]:
        """``df = sum (df/dX_i) dX_i`` with coefficients reduced in ``A``."""
        return tuple(self.algebra.normal_form(f.diff(i)) for i in range(self.algebra.nvars))


def kaehler_presentation(algebra: QuotientAlgebra) -> KaehlerPresentation:
    rows = tuple(
        tuple(algebra.normal_form(g.diff(i)) for i in range(algebra.nvars)) for g in algebra.generators
    )
    return KaehlerPresentation(algebra, rows)


def kaehler_specialize(h: KPoint) -> tuple[CotangentSpace, Callable[[Polynomial], CotangentVector]]:
    """Specialize the Kaehler module at ``h``; returns the space and its differential."""
    pres = kaehler_presentation(h.algebra)
    space = pres.specialize(h)

    def differential(f: Polynomial) -> CotangentVector:
        return space.vector([c.evaluate(h.coordinates) for c in pres.differential(f)])

    return space, differential


@dataclass(frozen=True)
class OmegaMap:
    """Matrix of the induced map on cotangent spaces, in basis coordinates."""

    source: CotangentSpace
    target: CotangentSpace
    images: tuple[CotangentVector, ...]     # image of d(Y_j) for each source variable
    matrix: tuple[tuple[Fraction, ...], ...]  # target.dim x source.dim
    surjective: bool

    def __call__(self, w: CotangentVector) -> CotangentVector:
        out = self.target.zero()
        for c, img in zip(w.coords, self.images):
            if c:
                out = out + img.scale(c)
        return out


class IncompatiblePoints(ValueError):
    pass


def omega_map(source: QuotientAlgebra, images: Sequence[Polynomial], h: KPoint,
              upstairs: Sequence[Number] | None = None) -> OmegaMap:
    """The map ``d_{h o pi}(f) -> d_h(pi f)`` for ``pi: Y_j -> images[j]``.

    ``pi`` must send the source ideal into the target ideal.  The upstairs
    point is ``h o pi``, i.e. ``(images[j](z))_j``; a caller-supplied
    ``upstairs`` point must agree with it.
    """
    target = h.algebra
    if len(images) != source.nvars:
        raise ValueError(f"need {source.nvars} images, got {len(images)}")
    for q in images:
        check_context(target.variables, q.variables)
    for g in source.generators:
        pulled = g.substitute(list(images))
        if not target.contains(pulled):
            raise ValueError(f"not a homomorphism: source relation {g} maps to {target.normal_form(pulled)} outside the ideal")
    w = tuple(q.evaluate(h.coordinates) for q in images)
    if upstairs is not None and tuple(as_scalar(c) for c in upstairs) != w:
        raise IncompatiblePoints(
            f"upstairs point {tuple(str(c) for c in upstairs)} differs from h o pi = {tuple(str(c) for c in w)}"
        )
    up = cotangent_space(kpoint(source, w))
    down = cotangent_space(h)
    img = tuple(d_h(h, q, down) for q in images)
    # column j of the matrix: image of the j-th source basis vector
    src_basis = up.free_coordinates
    cols = []
    for j in src_basis:
        e = [Fraction(0)] * source.nvars
        e[j] = Fraction(1)
        vec = down.zero()
        for c, v in zip(up.canonical(e), img):
            if c:
                vec = vec + v.scale(c)
        cols.append(down.reduced_coordinates(vec))
    matrix = tuple(tuple(col[i] for col in cols) for i in range(down.dim))
    surjective = rank(matrix, len(cols)) == down.dim if down.dim else True
    return OmegaMap(up, down, img, matrix, surjective)


def canonical_projection(algebra: QuotientAlgebra) -> tuple[QuotientAlgebra, list[Polynomial]]:
    """The ambient algebra and coordinate images of ``Q[X] -> Q[X]/I``."""
    from .affine import ambient

    return ambient(algebra.variables, algebra.order.kind), Polynomial.generators(algebra.variables)


def tangent_space(h: KPoint, space: CotangentSpace | None = None) -> list[TangentVector]:
    space = space or cotangent_space(h)
    return [TangentVector(space, v) for v in kernel(space.relation_rows, space.ambient_dim)]


def pair(omega: CotangentVector, v: TangentVector) -> Fraction:
    return dot(omega.coords, v.coords)


def pair_gradient(f: Polynomial, v: TangentVector) -> Fraction:
    """Pairing computed on the raw gradient representative of ``d_h(f)``."""
    return dot(_gradient_at(f, v.space.point.coordinates), v.coords)
