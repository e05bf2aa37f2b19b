"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` lives in an explicit variable context (an ordered tuple
of names).  Terms are stored as a map from exponent tuples to
:class:`fractions.Fraction`; zero coefficients are never stored.  Binary
operations refuse to mix contexts.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence, Union

Scalar = Fraction
Monomial = tuple  # tuple[int, ...]
Number = Union[int, Fraction]


class ContextMismatch(ValueError):
    """Two operands live over different variable lists."""

    def __init__(self, left: Sequence[str], right: Sequence[str]):
        self.left = tuple(left)
        self.right = tuple(right)
        super().__init__(
            f"variable context mismatch: ({', '.join(self.left)}) vs ({', '.join(self.right)})"
        )


class UnknownVariable(KeyError):
    def __init__(self, name: str, variables: Sequence[str]):
        self.name = name
        self.variables = tuple(variables)
        super().__init__(f"unknown variable {name!r}; context is ({', '.join(self.variables)})")

    def __str__(self) -> str:
        return self.args[0]


def as_scalar(value: Number | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def grevlex_key(mono: Monomial) -> tuple:
    return (sum(mono), tuple(-e for e in reversed(mono)))


def check_context(a: Sequence[str], b: Sequence[str]) -> None:
    if tuple(a) != tuple(b):
        raise ContextMismatch(a, b)


class Polynomial:
    """Immutable polynomial over Q in a fixed variable context."""

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[Monomial, Number] | None = None):
        self._vars = tuple(variables)
        n = len(self._vars)
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != n:
                raise ValueError(f"monomial {mono} has length {len(mono)}, context has {n} variables")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = as_scalar(coeff)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "Polynomial":
        # trusted constructor: terms already normalized
        obj = cls.__new__(cls)
        obj._vars = variables
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def zero(cls, variables: Iterable[str]) -> "Polynomial":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Iterable[str], value: Number) -> "Polynomial":
        variables = tuple(variables)
        c = as_scalar(value)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def variable(cls, variables: Iterable[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariable(name, variables)
        mono = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, {mono: Fraction(1)})

    @classmethod
    def monomial(cls, variables: Iterable[str], exponents: Sequence[int], coeff: Number = 1) -> "Polynomial":
        return cls(variables, {tuple(exponents): coeff})

    @classmethod
    def generators(cls, variables: Iterable[str]) -> list["Polynomial"]:
        variables = tuple(variables)
        return [cls.variable(variables, v) for v in variables]

    # accessors
    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def nvars(self) -> int:
        return len(self._vars)

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def degree_in(self, var: str | int) -> int:
        i = self._index(var) if isinstance(var, str) else var
        return max((m[i] for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def sorted_terms(self, key=grevlex_key) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def _index(self, var: str) -> int:
        try:
            return self._vars.index(var)
        except ValueError:
            raise UnknownVariable(var, self._vars) from None

    # coercion
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            check_context(self._vars, other._vars)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self._vars, other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self._vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self._vars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(self._vars, out)

    __rmul__ = __mul__

    def scale(self, k: Number) -> "Polynomial":
        k = as_scalar(k)
        if not k:
            return Polynomial.zero(self._vars)
        return Polynomial._raw(self._vars, {m: c * k for m, c in self._terms.items()})

    def __truediv__(self, k):
        if isinstance(k, (int, Fraction)) and not isinstance(k, bool):
            if not k:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self.scale(1 / Fraction(k))
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {e!r}")
        result = Polynomial.constant(self._vars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift_monomial(self, mono: Sequence[int], coeff: Number = 1) -> "Polynomial":
        """Multiply by ``coeff * X^mono``."""
        k = as_scalar(coeff)
        if not k:
            return Polynomial.zero(self._vars)
        return Polynomial._raw(
            self._vars,
            {tuple(a + b for a, b in zip(m, mono)): c * k for m, c in self._terms.items()},
        )

    # calculus
    def diff(self, var: str | int, times: int = 1) -> "Polynomial":
        """Iterated formal partial derivative."""
        i = self._index(var) if isinstance(var, str) else var
        if times < 0:
            raise ValueError("times must be non-negative")
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e < times:
                continue
            falling = factorial(e) // factorial(e - times)
            nm = m[:i] + (e - times,) + m[i + 1:]
            out[nm] = c * falling
        return Polynomial._raw(self._vars, out)

    def diff_multi(self, alpha: Sequence[int]) -> "Polynomial":
        """Apply the mixed partial derivative with multi-index ``alpha``."""
        out = {}
        for m, c in self._terms.items():
            if any(e < a for e, a in zip(m, alpha)):
                continue
            k = 1
            for e, a in zip(m, alpha):
                k *= factorial(e) // factorial(e - a)
            out[tuple(e - a for e, a in zip(m, alpha))] = c * k
        return Polynomial._raw(self._vars, out)

    def gradient(self) -> list["Polynomial"]:
        return [self.diff(i) for i in range(self.nvars)]

    def __call__(self, *point: Number) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point: Sequence[Number]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, context has {self.nvars} variables")
        z = [as_scalar(v) for v in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for zi, e in zip(z, m):
                if e:
                    t *= zi ** e
            total += t
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Compose with a polynomial map: replace variable i by ``images[i]``."""
        if len(images) != self.nvars:
            raise ValueError(f"need {self.nvars} images, got {len(images)}")
        target = images[0].variables if images else ()
        for q in images:
            check_context(target, q.variables)
        result = Polynomial.zero(target)
        powers: list[dict[int, Polynomial]] = [{0: Polynomial.constant(target, 1)} for _ in images]

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        for m, c in self._terms.items():
            t = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            result = result + t
        return result

    def translate(self, point: Sequence[Number]) -> "Polynomial":
        """Return p(X + point), the expansion of ``self`` around ``point``."""
        gens = Polynomial.generators(self._vars)
        return self.substitute([g + as_scalar(z) for g, z in zip(gens, point)])

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial._raw(self._vars, {m: c for m, c in self._terms.items() if sum(m) == degree})

    def in_context(self, variables: Sequence[str]) -> "Polynomial":
        """Re-embed into a context that contains every variable actually used."""
        variables = tuple(variables)
        out = {}
        for m, c in self._terms.items():
            nm = [0] * len(variables)
            for name, e in zip(self._vars, m):
                if e:
                    if name not in variables:
                        raise UnknownVariable(name, variables)
                    nm[variables.index(name)] = e
            out[tuple(nm)] = c
        return Polynomial._raw(variables, out)

    # equality / hashing
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._vars == other._vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == Polynomial.constant(self._vars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"Polynomial({self._vars!r}, {render_polynomial(self)!r})"

    def __str__(self):
        return render_polynomial(self)


def _render_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_monomial(variables: Sequence[str], mono: Sequence[int]) -> str:
    parts = []
    for v, e in zip(variables, mono):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def render_polynomial(p: Polynomial, key=grevlex_key) -> str:
    """Render in the input grammar, terms in descending order under ``key``."""
    if p.is_zero():
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms(key)):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = render_monomial(p.variables, m)
        if not mono:
            body = _render_scalar(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_render_scalar(a)}*{mono}"
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def falling_factorial(n: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= n - j
    return out
