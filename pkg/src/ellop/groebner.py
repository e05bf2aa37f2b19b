"""Reduced Groebner bases via Buchberger's algorithm.

Pairs are processed with the normal selection strategy (smallest lcm first)
and pruned by both Buchberger criteria: coprime leading monomials, and the
chain criterion.  The reduced basis is computed once, when the
:class:`GroebnerBasis` is built, so instances are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .polycore import Polynomial, check_context

ORDERS = ("grevlex", "grlex", "lex")


def _grevlex(m):
    return (sum(m), tuple(-e for e in reversed(m)))


def _grlex(m):
    return (sum(m), m)


def _lex(m):
    return m


_KEYS = {"grevlex": _grevlex, "grlex": _grlex, "lex": _lex}


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order on a fixed variable list; the first variable is largest."""

    kind: str
    variables: tuple[str, ...]

    def __post_init__(self):
        if self.kind not in _KEYS:
            raise ValueError(f"unknown monomial order {self.kind!r}; choose one of {', '.join(ORDERS)}")
        object.__setattr__(self, "variables", tuple(self.variables))

    @property
    def key(self):
        return _KEYS[self.kind]

    def leading(self, p: Polynomial) -> tuple[tuple, Fraction]:
        if p.is_zero():
            raise ValueError("zero polynomial has no leading term")
        key = self.key
        mono = max(p.terms, key=key)
        return mono, p.coefficient(mono)

    def sort(self, polys: Iterable[Polynomial]) -> list[Polynomial]:
        return sorted(polys, key=lambda p: self.key(self.leading(p)[0]), reverse=True)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class _Poly:
    """Mutable working representation used inside the algorithm."""

    __slots__ = ("terms", "lm", "lc")

    def __init__(self, terms: dict, key):
        self.terms = terms
        if terms:
            self.lm = max(terms, key=key)
            self.lc = terms[self.lm]
        else:
            self.lm = None
            self.lc = None


def _reduce(terms: dict, basis: list[_Poly], key, full: bool = True) -> dict:
    """Multivariate division remainder of ``terms`` by ``basis``."""
    p = dict(terms)
    rem: dict = {}
    while p:
        lm = max(p, key=key)
        lc = p[lm]
        for g in basis:
            if _divides(g.lm, lm):
                q = lc / g.lc
                shift = tuple(a - b for a, b in zip(lm, g.lm))
                for m, c in g.terms.items():
                    nm = tuple(a + b for a, b in zip(m, shift))
                    s = p.get(nm, 0) - q * c
                    if s:
                        p[nm] = s
                    else:
                        p.pop(nm, None)
                break
        else:
            rem[lm] = lc
            del p[lm]
            if not full:
                rem.update(p)
                break
    return rem


def _spoly(f: _Poly, g: _Poly) -> dict:
    lcm = _lcm(f.lm, g.lm)
    sf = tuple(a - b for a, b in zip(lcm, f.lm))
    sg = tuple(a - b for a, b in zip(lcm, g.lm))
    out: dict = {}
    for m, c in f.terms.items():
        out[tuple(a + b for a, b in zip(m, sf))] = c / f.lc
    for m, c in g.terms.items():
        nm = tuple(a + b for a, b in zip(m, sg))
        s = out.get(nm, 0) - c / g.lc
        if s:
            out[nm] = s
        else:
            out.pop(nm, None)
    return out


def _buchberger(gens: list[dict], key) -> list[dict]:
    basis: list[_Poly] = []
    pairs: set[tuple[int, int]] = set()
    for t in gens:
        t = _reduce(t, basis, key)
        if not t:
            continue
        basis.append(_Poly(t, key))
        j = len(basis) - 1
        pairs.update((i, j) for i in range(j))

    while pairs:
        # normal selection strategy
        i, j = min(pairs, key=lambda ij: (key(_lcm(basis[ij[0]].lm, basis[ij[1]].lm)), ij))
        pairs.discard((i, j))
        f, g = basis[i], basis[j]
        lcm = _lcm(f.lm, g.lm)
        # first criterion: coprime leading monomials
        if all(a == 0 or b == 0 for a, b in zip(f.lm, g.lm)):
            continue
        # chain criterion
        if any(
            k not in (i, j)
            and _divides(basis[k].lm, lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        r = _reduce(_spoly(f, g), basis, key)
        if r:
            basis.append(_Poly(r, key))
            n = len(basis) - 1
            pairs.update((k, n) for k in range(n))
    return [b.terms for b in basis]


def _reduced(basis: list[dict], key) -> list[dict]:
    polys = [_Poly(t, key) for t in basis if t]
    # minimal: drop elements whose leading monomial is divisible by another's
    minimal: list[_Poly] = []
    for idx, p in enumerate(polys):
        dominated = False
        for jdx, q in enumerate(polys):
            if idx == jdx:
                continue
            if _divides(q.lm, p.lm) and (q.lm != p.lm or jdx < idx):
                dominated = True
                break
        if not dominated:
            minimal.append(p)
    out = []
    for idx, p in enumerate(minimal):
        others = [q for jdx, q in enumerate(minimal) if jdx != idx]
        r = _reduce(p.terms, others, key)
        lm = max(r, key=key)
        lc = r[lm]
        out.append({m: c / lc for m, c in r.items()})
    out.sort(key=lambda t: key(max(t, key=key)), reverse=True)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis of the ideal spanned by ``source_generators``."""

    order: MonomialOrder
    elements: tuple[Polynomial, ...]
    source_generators: tuple[Polynomial, ...] = field(default=())

    @property
    def variables(self) -> tuple[str, ...]:
        return self.order.variables

    def is_zero_ideal(self) -> bool:
        return not self.elements

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() for g in self.elements)

    def leading_monomials(self) -> list[tuple]:
        return [self.order.leading(g)[0] for g in self.elements]

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def contains(self, p: Polynomial) -> bool:
        return ideal_contains(p, self)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def buchberger(generators: Sequence[Polynomial], order: MonomialOrder | str = "grevlex") -> GroebnerBasis:
    """Compute the reduced Groebner basis of ``generators``.

    An empty or all-zero generator list gives the zero ideal, whose basis is
    empty.  ``order`` may be a :class:`MonomialOrder` or one of the names in
    :data:`ORDERS` (then the generators' context fixes the variables).

    >>> from ellop.parsing import parse_polynomial
    >>> gb = buchberger([parse_polynomial("X^2 - Y", ["X", "Y"]),
    ...                  parse_polynomial("X*Y - 1", ["X", "Y"])], "lex")
    >>> [str(g) for g in gb]
    ['X - Y^2', 'Y^3 - 1']
    """
    generators = list(generators)
    if isinstance(order, str):
        if not generators:
            raise ValueError("cannot infer variables from an empty generator list; pass a MonomialOrder")
        order = MonomialOrder(order, generators[0].variables)
    for g in generators:
        check_context(order.variables, g.variables)
    key = order.key
    gens = [dict(g.terms) for g in generators if not g.is_zero()]
    gens.sort(key=lambda t: key(max(t, key=key)))
    basis = _reduced(_buchberger(gens, key), key)
    elements = tuple(Polynomial(order.variables, t) for t in basis)
    return GroebnerBasis(order, elements, tuple(generators))


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    check_context(gb.variables, p.variables)
    if not gb.elements or p.is_zero():
        return p
    key = gb.order.key
    basis = [_Poly(dict(g.terms), key) for g in gb.elements]
    return Polynomial(p.variables, _reduce(dict(p.terms), basis, key))


def ideal_contains(p: Polynomial, gb: GroebnerBasis) -> bool:
    return normal_form(p, gb).is_zero()


def divide(p: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder) -> tuple[list[Polynomial], Polynomial]:
    """Multivariate division with quotients, returns ``(quotients, remainder)``."""
    key = order.key
    work = dict(p.terms)
    quotients = [dict() for _ in divisors]
    rem: dict = {}
    leads = [order.leading(d) for d in divisors]
    while work:
        lm = max(work, key=key)
        lc = work[lm]
        for idx, (dlm, dlc) in enumerate(leads):
            if _divides(dlm, lm):
                q = lc / dlc
                shift = tuple(a - b for a, b in zip(lm, dlm))
                quotients[idx][shift] = quotients[idx].get(shift, 0) + q
                for m, c in divisors[idx].terms.items():
                    nm = tuple(a + b for a, b in zip(m, shift))
                    s = work.get(nm, 0) - q * c
                    if s:
                        work[nm] = s
                    else:
                        work.pop(nm, None)
                break
        else:
            rem[lm] = lc
            del work[lm]
    return [Polynomial(p.variables, q) for q in quotients], Polynomial(p.variables, rem)
