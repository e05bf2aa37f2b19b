"""Linear differential operators with polynomial coefficients.

Operators are kept in Weyl normal form, ``sum_alpha c_alpha(X) * d^alpha``
with every derivative to the right of its coefficient.  Composition uses
the Leibniz commutation rule, so two operators are equal exactly when their
term maps are equal.

The commutator calculus works with ``delta(f, L) = L o f - f o L``, where
``f`` acts by multiplication.  An operator is of order at most ``k`` when
every ``(k+1)``-fold iterated commutator vanishes.

Deciding ``L(I) <= I``
----------------------
For a generator ``g`` of ``I`` the map ``q -> L(q*g)`` is the operator
``M = L o g`` of order at most ``k = order(L)``.  Write
``M = sum_gamma m_gamma d^gamma``.  Applied to a monomial,

    M(X^beta) = sum_{gamma <= beta} m_gamma * beta!/(beta-gamma)! * X^(beta-gamma),

which is triangular in ``beta``: the ``gamma = beta`` term is ``beta! m_beta``
and every other term involves a strictly smaller ``gamma``.  If
``M(X^beta)`` lies in ``I`` for every ``|beta| <= k`` then induction on
``beta`` puts every ``m_gamma`` in ``I``; hence ``M(q) in I`` for all ``q``.
Summing over generators covers the whole ideal.  So testing the finitely
many products ``X^beta * g`` with ``|beta| <= k`` decides invariance
exactly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .groebner import GroebnerBasis, normal_form
from .polycore import Polynomial, check_context

MultiIndex = tuple


class ZeroOperatorError(ValueError):
    pass


def _multi_binomial(alpha, gamma) -> int:
    out = 1
    for a, g in zip(alpha, gamma):
        out *= comb(a, g)
    return out


def _sub_indices(alpha) -> Iterable[tuple]:
    return itertools.product(*(range(a + 1) for a in alpha))


class DiffOperator:
    """Immutable operator ``sum c_alpha * d^alpha`` over a variable context."""

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[MultiIndex, Polynomial] | None = None):
        self._vars = tuple(variables)
        clean: dict[MultiIndex, Polynomial] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != len(self._vars) or any(a < 0 for a in alpha):
                raise ValueError(f"bad multi-index {alpha} for context {self._vars}")
            if not isinstance(c, Polynomial):
                c = Polynomial.constant(self._vars, c)
            check_context(self._vars, c.variables)
            s = clean.get(alpha, Polynomial.zero(self._vars)) + c
            if s.is_zero():
                clean.pop(alpha, None)
            else:
                clean[alpha] = s
        self._terms = clean
        self._hash = None

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "DiffOperator":
        return cls(variables)

    @classmethod
    def identity(cls, variables: Sequence[str]) -> "DiffOperator":
        return cls.multiplication(Polynomial.constant(variables, 1))

    @classmethod
    def multiplication(cls, f: Polynomial) -> "DiffOperator":
        return cls(f.variables, {(0,) * f.nvars: f})

    @classmethod
    def partial(cls, variables: Sequence[str], var: str | int, times: int = 1) -> "DiffOperator":
        variables = tuple(variables)
        i = variables.index(var) if isinstance(var, str) else var
        alpha = tuple(times if j == i else 0 for j in range(len(variables)))
        return cls(variables, {alpha: Polynomial.constant(variables, 1)})

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> dict[MultiIndex, Polynomial]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, alpha: Sequence[int]) -> Polynomial:
        return self._terms.get(tuple(alpha), Polynomial.zero(self._vars))

    def is_zero(self) -> bool:
        return not self._terms

    def order(self) -> int:
        """Structural order ``max |alpha|``; undefined for the zero operator."""
        if not self._terms:
            raise ZeroOperatorError("the zero operator has no order")
        return max(sum(a) for a in self._terms)

    def top_terms(self) -> dict[MultiIndex, Polynomial]:
        k = self.order()
        return {a: c for a, c in self._terms.items() if sum(a) == k}

    def has_constant_top_coefficients(self) -> bool:
        return all(c.is_constant() for c in self.top_terms().values())

    def apply(self, p: Polynomial) -> Polynomial:
        check_context(self._vars, p.variables)
        out = Polynomial.zero(self._vars)
        for alpha, c in self._terms.items():
            d = p.diff_multi(alpha)
            if not d.is_zero():
                out = out + c * d
        return out

    __call__ = apply

    def _coerce(self, other) -> "DiffOperator":
        if isinstance(other, DiffOperator):
            check_context(self._vars, other._vars)
            return other
        if isinstance(other, Polynomial):
            return DiffOperator.multiplication(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return DiffOperator.multiplication(Polynomial.constant(self._vars, other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for a, c in other._terms.items():
            terms[a] = terms[a] + c if a in terms else c
        return DiffOperator(self._vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return DiffOperator(self._vars, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, k) -> "DiffOperator":
        return DiffOperator(self._vars, {a: c * k for a, c in self._terms.items()})

    def compose(self, other: "DiffOperator") -> "DiffOperator":
        """Weyl product ``self o other``."""
        other = self._coerce(other)
        out: dict[MultiIndex, Polynomial] = {}
        for alpha, a in self._terms.items():
            for beta, b in other._terms.items():
                # d^alpha o b = sum_gamma C(alpha, gamma) d^gamma(b) d^(alpha-gamma)
                for gamma in _sub_indices(alpha):
                    db = b.diff_multi(gamma)
                    if db.is_zero():
                        continue
                    k = _multi_binomial(alpha, gamma)
                    idx = tuple(x - g + y for x, g, y in zip(alpha, gamma, beta))
                    term = a * db * k
                    out[idx] = out[idx] + term if idx in out else term
        return DiffOperator(self._vars, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.compose(other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if isinstance(other, Polynomial):
            return DiffOperator.multiplication(other).compose(self)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative operator power")
        out = DiffOperator.identity(self._vars)
        for _ in range(e):
            out = out.compose(self)
        return out

    def __eq__(self, other):
        if isinstance(other, DiffOperator):
            return self._vars == other._vars and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"DiffOperator({self._vars!r}, {render_operator(self)!r})"

    def __str__(self):
        return render_operator(self)


def _alpha_key(alpha):
    return (sum(alpha), tuple(alpha))


def render_d_tokens(variables: Sequence[str], alpha: Sequence[int]) -> str:
    parts = []
    for v, a in zip(variables, alpha):
        if a == 1:
            parts.append(f"d{v}")
        elif a > 1:
            parts.append(f"d{v}^{a}")
    return "*".join(parts)


def render_operator(op: DiffOperator) -> str:
    """Render in the operator grammar; highest-order terms first."""
    if op.is_zero():
        return "0"
    out = []
    for alpha in sorted(op._terms, key=_alpha_key, reverse=True):
        c = op._terms[alpha]
        d = render_d_tokens(op.variables, alpha)
        terms = list(c.items())
        negative = False
        if len(terms) == 1:
            (mono, coeff), = terms
            negative = coeff < 0
            ctext = str(-c if negative else c)
            if d and ctext == "1":
                body = d
            else:
                body = f"{ctext}*{d}" if d else ctext
        else:
            ctext = f"({c})"
            body = f"{ctext}*{d}" if d else ctext
        if not out:
            out.append(("-" if negative else "") + body)
        else:
            out.append(f" {'-' if negative else '+'} {body}")
    return "".join(out)


def apply(L: DiffOperator, p: Polynomial) -> Polynomial:
    return L.apply(p)


def compose(L1: DiffOperator, L2: DiffOperator) -> DiffOperator:
    return L1.compose(L2)


def delta(f: Polynomial, L: DiffOperator) -> DiffOperator:
    """The commutator ``L o f - f o L``."""
    check_context(L.variables, f.variables)
    m = DiffOperator.multiplication(f)
    return L.compose(m) - m.compose(L)


def iterated_delta(fs: Sequence[Polynomial], L: DiffOperator) -> DiffOperator:
    """``delta(f_1) ... delta(f_j) L``; the last function acts first."""
    out = L
    for f in reversed(fs):
        out = delta(f, out)
    return out


def order(L: DiffOperator) -> int:
    return L.order()


def random_polynomial(variables: Sequence[str], rng: random.Random, max_degree: int = 2,
                      max_terms: int = 3, coeff_range: int = 5) -> Polynomial:
    n = len(variables)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_degree)
        mono = [0] * n
        for _ in range(d):
            mono[rng.randrange(n)] += 1
        terms[tuple(mono)] = Fraction(rng.randint(-coeff_range, coeff_range), rng.randint(1, 3))
    return Polynomial(variables, terms)


def verify_order(L: DiffOperator, k: int, random_samples: int = 8, seed: int = 0) -> bool:
    """Decide whether ``L`` is an operator of order at most ``k``.

    Every ``(k+1)``-tuple of coordinate functions is tested, together with
    ``random_samples`` tuples of random polynomials.  Sampling alone cannot
    cover every tuple, so the verdict is the structural one: a commutator
    with a multiplication operator strictly lowers structural order, so an
    operator of structural order ``<= k`` is killed by any ``k+1``
    commutators, while structural order ``> k`` is exposed by the coordinate
    tuples (``delta(X_i)`` lowers ``alpha_i`` with factor ``alpha_i``).
    The sampled evidence is checked against that verdict.
    """
    if k < 0:
        raise ValueError("order bound must be non-negative")
    if L.is_zero():
        return True
    structural = L.order() <= k
    gens = Polynomial.generators(L.variables)
    sampled_ok = all(
        iterated_delta(t, L).is_zero() for t in itertools.product(gens, repeat=k + 1)
    )
    rng = random.Random(seed)
    for _ in range(random_samples):
        fs = [random_polynomial(L.variables, rng) for _ in range(k + 1)]
        if not iterated_delta(fs, L).is_zero():
            sampled_ok = False
            break
    if sampled_ok != structural:
        raise AssertionError(
            f"commutator sampling ({sampled_ok}) disagrees with structural order bound ({structural}) for {L}"
        )
    return structural


def monomials_up_to(nvars: int, degree: int) -> list[tuple]:
    out = []
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            mono = [0] * nvars
            for i in combo:
                mono[i] += 1
            out.append(tuple(mono))
    return out


@dataclass(frozen=True)
class InvarianceFailure:
    multiplier: tuple          # exponent vector beta of X^beta
    generator: Polynomial
    witness: Polynomial        # X^beta * generator, an element of I
    residue: Polynomial        # NF(L(witness)), nonzero


@dataclass(frozen=True)
class InvarianceReport:
    holds: bool
    witness: Polynomial | None = None
    residue: Polynomial | None = None
    checked: int = 0
    failures: tuple[InvarianceFailure, ...] = field(default=())

    def __post_init__(self):
        if not self.holds and (self.witness is None or self.residue is None or self.residue.is_zero()):
            raise ValueError("a failing invariance report needs a witness with nonzero residue")


def check_ideal_invariance(L: DiffOperator, gb: GroebnerBasis, collect_all: bool = True) -> InvarianceReport:
    """Decide ``L(I) <= I`` exactly (see the module docstring for why it is complete).

    Multiples ``X^beta * g`` are tested from the highest degree down, in
    descending monomial order, so the reported witness is the first failure
    in that order.  With ``collect_all`` every failing product is listed.
    """
    check_context(L.variables, gb.variables)
    generators = [g for g in (gb.source_generators or gb.elements) if not g.is_zero()]
    if not generators or L.is_zero():
        return InvarianceReport(True)
    k = L.order()
    key = gb.order.key
    betas = sorted(monomials_up_to(len(L.variables), k), key=key, reverse=True)
    failures = []
    checked = 0
    for beta in betas:
        for g in generators:
            w = g.shift_monomial(beta)
            r = normal_form(L.apply(w), gb)
            checked += 1
            if not r.is_zero():
                failures.append(InvarianceFailure(beta, g, w, r))
                if not collect_all:
                    break
        if failures and not collect_all:
            break
    if failures:
        first = failures[0]
        return InvarianceReport(False, first.witness, first.residue, checked, tuple(failures))
    return InvarianceReport(True, checked=checked)


class InvarianceError(ValueError):
    def __init__(self, report: InvarianceReport):
        self.report = report
        super().__init__(
            f"operator does not preserve the ideal: L({report.witness}) has normal form {report.residue}"
        )


@dataclass(frozen=True)
class InducedOperator:
    """An operator ``L'`` on ``Q[X]/I`` with ``L' o pi = pi o L``.

    Stores the upstairs representative; outputs are normalized lazily.
    """

    upstairs: DiffOperator
    algebra: "QuotientAlgebra"  # noqa: F821
    certificate: InvarianceReport

    @property
    def variables(self):
        return self.upstairs.variables

    def apply(self, p: Polynomial) -> Polynomial:
        return self.algebra.normal_form(self.upstairs.apply(p))

    __call__ = apply

    def order(self) -> int:
        return self.upstairs.order()

    def multiply(self, f: Polynomial, p: Polynomial) -> Polynomial:
        return self.algebra.normal_form(f * p)


def induce(L: DiffOperator, algebra) -> InducedOperator:
    report = check_ideal_invariance(L, algebra.basis)
    if not report.holds:
        raise InvarianceError(report)
    return InducedOperator(L, algebra, report)


def scalar_delta_value(apply_fn, fs: Sequence[Polynomial], point: Sequence[Fraction], p: Polynomial,
                       multiply=None) -> Fraction:
    """Evaluate ``(delta_h(f_1) ... delta_h(f_j) F_h)(p)`` by the scalar recursion.

    ``F_h = ev_h o F`` and ``(delta_h(f) G)(p) = G(f p) - h(f) G(p)``.  The
    work is exponential in ``len(fs)`` (``2^j`` applications of ``F``).
    ``multiply`` defaults to the ambient product; quotient algebras pass a
    normalizing product.
    """
    mul = multiply or (lambda a, b: a * b)

    def rec(j: int, q: Polynomial) -> Fraction:
        if j == 0:
            return apply_fn(q).evaluate(point)
        f = fs[j - 1]
        return rec(j - 1, mul(f, q)) - f.evaluate(point) * rec(j - 1, q)

    return rec(len(fs), p)
