"""Principal symbols at rational points, their behaviour under the projection
onto a quotient algebra, and the hyper-Laplacian constructor.

Convention: for ``L = sum c_alpha d^alpha`` of order ``k`` the symbol at ``z``
is the form ``k! * sum_{|alpha|=k} c_alpha(z) xi^alpha``, i.e. ``k!`` times
the classical principal symbol.  This is the normalization in which
``symbol(grad f(z)) = L(f^k)(z)`` for every ``f`` with ``f(z) = 0``.  The
factor never changes an ellipticity verdict.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .affine import KPoint, QuotientAlgebra, ambient, kpoint
from .cotangent import cotangent_space, omega_map
from .ellipticity import EllipticityVerdict, NOT_ELLIPTIC, decide_nonvanishing
from .polycore import Polynomial, check_context
from .weyl import (
    DiffOperator,
    InducedOperator,
    InvarianceError,
    ZeroOperatorError,
    check_ideal_invariance,
    scalar_delta_value,
)


def dual_variables(n: int) -> tuple[str, ...]:
    return tuple(f"xi{i + 1}" for i in range(n))


@dataclass(frozen=True)
class SymbolForm:
    point: KPoint
    degree: int
    form: Polynomial  # homogeneous of ``degree`` in xi1..xin, or zero

    convention_factor = "k!"

    def __call__(self, covector: Sequence) -> Fraction:
        return self.form.evaluate(covector)

    def is_zero(self) -> bool:
        return self.form.is_zero()

    def classical(self) -> Polynomial:
        """The symbol without the ``k!`` factor."""
        return self.form.scale(Fraction(1, factorial(self.degree)))


def _upstairs(L) -> DiffOperator:
    return L.upstairs if isinstance(L, InducedOperator) else L


def principal_symbol(L, h: KPoint) -> SymbolForm:
    """Closed-form symbol ``k! * sum_{|alpha|=k} c_alpha(z) xi^alpha``.

    On a quotient algebra ``L`` must preserve the ideal; the form is then
    computed from the upstairs representative.
    """
    op = _upstairs(L)
    check_context(h.variables, op.variables)
    if op.is_zero():
        raise ZeroOperatorError("the zero operator has no principal symbol")
    if not isinstance(L, InducedOperator) and not h.algebra.is_ambient():
        report = check_ideal_invariance(op, h.algebra.basis, collect_all=False)
        if not report.holds:
            raise InvarianceError(report)
    k = op.order()
    xi = dual_variables(len(op.variables))
    kf = factorial(k)
    terms = {alpha: c.evaluate(h.coordinates) * kf for alpha, c in op.top_terms().items()}
    return SymbolForm(h, k, Polynomial(xi, terms))


def symbol_definitional(L, h: KPoint, fs: Sequence[Polynomial]) -> Fraction:
    """``(delta_h(f_1) ... delta_h(f_k) L_h)(1)`` by the scalar recursion.

    ``L`` may be an upstairs operator (evaluated in the ambient algebra) or an
    :class:`InducedOperator`, in which case products and outputs are reduced
    in the quotient.
    """
    op = _upstairs(L)
    if len(fs) != op.order():
        raise ValueError(f"need {op.order()} functions, got {len(fs)}")
    one = Polynomial.constant(op.variables, 1)
    if isinstance(L, InducedOperator):
        return scalar_delta_value(L.apply, fs, h.coordinates, one, multiply=L.multiply)
    return scalar_delta_value(op.apply, fs, h.coordinates, one)


def linear_function_in(variables: Sequence[str], point: Sequence[Fraction], covector: Sequence[Fraction]) -> Polynomial:
    """The function ``sum c_i (X_i - z_i)``: it vanishes at ``z`` with gradient ``c``."""
    gens = Polynomial.generators(variables)
    out = Polynomial.zero(variables)
    for g, z, c in zip(gens, point, covector):
        if c:
            out = out + (g - z).scale(c)
    return out


def simplex_points(n: int, k: int) -> list[tuple[int, ...]]:
    """Non-negative integer vectors with entry sum ``k``; their k-th powers span Sym^k."""
    out = []
    for combo in itertools.combinations_with_replacement(range(n), k):
        v = [0] * n
        for i in combo:
            v[i] += 1
        out.append(tuple(v))
    return out


@dataclass(frozen=True)
class PullbackComparison:
    covector: tuple[Fraction, ...]   # beta in the upstairs cotangent space
    image: tuple[Fraction, ...]      # canonical coordinates of Omega_pi(beta)
    upstairs: Fraction               # sigma_{L, h o pi}(beta^k)
    downstairs: Fraction             # sigma_{L', h}(Omega_pi(beta)^k)


@dataclass(frozen=True)
class PullbackReport:
    holds: bool
    comparisons: tuple[PullbackComparison, ...]
    omega_surjective: bool


def symbol_pullback(L, algebra: QuotientAlgebra, h: KPoint) -> PullbackReport:
    """Compare ``sigma_{L',h} o Omega_pi^k`` with ``sigma_{L, h o pi}``.

    Both sides are evaluated definitionally on ``beta^k`` for ``beta`` running
    over :func:`simplex_points`, a set whose k-th powers span the symmetric
    power, so agreement there is agreement of the two forms.  Downstairs the
    class ``Omega_pi(beta)`` is lifted through its canonical coordinates, so
    the comparison fails if the induced symbol is not well defined on classes.
    """
    op = _upstairs(L)
    if isinstance(L, InducedOperator):
        induced = L
    else:
        report = check_ideal_invariance(op, algebra.basis)
        if not report.holds:
            raise InvarianceError(report)
        induced = InducedOperator(op, algebra, report)
    h = h if h.algebra == algebra else kpoint(algebra, h.coordinates)
    k = op.order()
    source = ambient(algebra.variables, algebra.order.kind)
    up = kpoint(source, h.coordinates)
    pi = omega_map(source, Polynomial.generators(algebra.variables), h)
    closed = principal_symbol(op, up)
    comparisons = []
    for beta in simplex_points(len(algebra.variables), k):
        beta = tuple(Fraction(b) for b in beta)
        f_up = linear_function_in(algebra.variables, h.coordinates, beta)
        upstairs = symbol_definitional(op, up, [f_up] * k)
        if upstairs != closed(beta):
            raise AssertionError(f"closed-form symbol disagrees with the definition at {beta}")
        image = pi.target.canonical(beta)
        f_down = linear_function_in(algebra.variables, h.coordinates, image)
        downstairs = symbol_definitional(induced, h, [f_down] * k)
        comparisons.append(PullbackComparison(beta, image, upstairs, downstairs))
    holds = all(c.upstairs == c.downstairs for c in comparisons)
    return PullbackReport(holds, tuple(comparisons), pi.surjective)


def symbol_pullback_check(L, algebra: QuotientAlgebra, h: KPoint) -> bool:
    return symbol_pullback(L, algebra, h).holds


def downstairs_symbol(L, h: KPoint) -> Polynomial:
    """The induced symbol as a form on the cotangent space of the quotient,
    in the coordinates of its free (non-pivot) basis."""
    space = cotangent_space(h)
    sym = principal_symbol(L, kpoint(ambient(h.variables, h.algebra.order.kind), h.coordinates))
    free = space.free_coordinates
    names = tuple(f"eta{j + 1}" for j in range(len(free)))
    ys = Polynomial.generators(names)
    zero = Polynomial.zero(names)
    embedding = [zero] * len(h.variables)
    for y, j in zip(ys, free):
        embedding[j] = y
    return sym.form.substitute(embedding)


@dataclass(frozen=True)
class PointVerdict:
    symbol: SymbolForm
    order_at_point: bool
    verdict: EllipticityVerdict


def is_elliptic_at(L, h: KPoint, seed: int = 0) -> PointVerdict:
    sym = principal_symbol(L, h)
    if sym.is_zero():
        return PointVerdict(sym, False, EllipticityVerdict(NOT_ELLIPTIC, "order", None, "order drops at h"))
    return PointVerdict(sym, True, decide_nonvanishing(sym, seed=seed))


AS_WRITTEN = "as-written"
BALANCED = "balanced"


def construct_delta_I(generators: Sequence[Polynomial], mode: str = AS_WRITTEN) -> DiffOperator:
    """Sum of pure even-order derivatives that kills every generator.

    ``as-written``: the exponent for ``X_i`` is the least even integer strictly
    greater than every generator's degree in ``X_i``.  ``balanced`` raises every
    exponent to the largest of those, which gives a homogeneous elliptic
    operator.
    """
    gens = [g for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    variables = gens[0].variables
    for g in gens:
        check_context(variables, g.variables)
    exps = []
    for i in range(len(variables)):
        d = max(max(g.degree_in(i), 0) for g in gens)
        exps.append(d + 2 if d % 2 == 0 else d + 1)
    if mode == BALANCED:
        exps = [max(exps)] * len(exps)
    elif mode != AS_WRITTEN:
        raise ValueError(f"unknown construction mode {mode!r}; use {AS_WRITTEN!r} or {BALANCED!r}")
    op = DiffOperator.zero(variables)
    for i, e in enumerate(exps):
        op = op + DiffOperator.partial(variables, i, e)
    return op
