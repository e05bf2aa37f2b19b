"""Exact decision of whether a homogeneous form vanishes at a nonzero real covector.

The first applicable method wins:

``univariate``   one variable, ``a xi^k`` with ``a != 0``: never vanishes.
``linear``       degree one in two or more variables: a rational kernel vector.
``quadratic``    degree two: inertia from the characteristic polynomial of the
                 symmetric matrix (Descartes' rule is exact since all
                 eigenvalues are real).  Singular forms get a kernel witness;
                 indefinite ones a zero on a line between a positive and a
                 negative vector.
``diagonal``     ``sum a_i xi_i^k`` with even ``k``: same strict sign or not.
``binary``       two variables: Sturm sequences on the chart ``xi_2 = 1`` plus
                 the point at infinity.
``random``       three or more variables: random rational points and random
                 planes (decided with the binary method).  It can only refute;
                 if nothing is found the verdict is ``Unknown``.

Witnesses are either rational covectors or algebraic certificates
``base + t * direction`` with ``t`` a root of a squarefree polynomial that
changes sign on a rational interval.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from . import realroots as rr
from .linalg import charpoly, kernel, primitive, rank
from .polycore import Polynomial

ELLIPTIC = "Elliptic"
NOT_ELLIPTIC = "NotElliptic"
UNKNOWN = "Unknown"


class ZeroFormError(ValueError):
    pass


def _restrict_to_line(form: Polynomial, base: Sequence[Fraction], direction: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients (lowest first) of ``t -> form(base + t*direction)``."""
    t = Polynomial.variable(("t",), "t")
    images = [Polynomial.constant(("t",), b) + t * d for b, d in zip(base, direction)]
    q = form.substitute(images)
    deg = max(q.total_degree(), 0)
    return rr.trim([q.coefficient((i,)) for i in range(deg + 1)])


@dataclass(frozen=True)
class RationalWitness:
    covector: tuple[Fraction, ...]

    def verify(self, form: Polynomial) -> bool:
        return any(self.covector) and form.evaluate(self.covector) == 0

    def to_json(self) -> dict:
        return {"kind": "rational", "covector": [str(c) for c in self.covector]}

    def describe(self) -> str:
        return "(" + ", ".join(str(c) for c in self.covector) + ")"


@dataclass(frozen=True)
class AlgebraicWitness:
    """The covector ``base + t*direction`` where ``t`` is the unique root of
    ``polynomial`` in the open interval ``(lower, upper)``."""

    base: tuple[Fraction, ...]
    direction: tuple[Fraction, ...]
    polynomial: tuple[Fraction, ...]  # squarefree, lowest degree first
    lower: Fraction
    upper: Fraction

    def verify(self, form: Polynomial) -> bool:
        if rank([self.base, self.direction]) != 2:
            return False
        p = rr.trim(self.polynomial)
        if len(p) < 2:
            return False
        if rr.evaluate(p, self.lower) * rr.evaluate(p, self.upper) >= 0:
            return False
        q = _restrict_to_line(form, self.base, self.direction)
        if not q:
            return True
        return not rr.divmod_poly(q, p)[1]

    def approximate(self, digits: int = 12) -> tuple[float, ...]:
        a, b = rr.refine(self.polynomial, self.lower, self.upper, Fraction(1, 10 ** digits))
        t = (a + b) / 2
        return tuple(float(x + t * d) for x, d in zip(self.base, self.direction))

    def to_json(self) -> dict:
        return {
            "kind": "algebraic",
            "base": [str(c) for c in self.base],
            "direction": [str(c) for c in self.direction],
            "polynomial": [str(c) for c in self.polynomial],
            "interval": [str(self.lower), str(self.upper)],
        }

    def describe(self) -> str:
        terms = " + ".join(f"{c}*t^{i}" for i, c in enumerate(self.polynomial) if c)
        base = ", ".join(str(c) for c in self.base)
        direc = ", ".join(str(c) for c in self.direction)
        return f"({base}) + t*({direc}), t the root of {terms} in ({self.lower}, {self.upper})"


Witness = Union[RationalWitness, AlgebraicWitness]


@dataclass(frozen=True)
class EllipticityVerdict:
    status: str
    method: str
    witness: Witness | None = None
    reason: str = ""
    details: dict = field(default_factory=dict, compare=False)

    @property
    def elliptic(self) -> bool:
        return self.status == ELLIPTIC

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "method": self.method,
            "witness": self.witness.to_json() if self.witness else None,
            "reason": self.reason,
        }

    def summary(self) -> str:
        text = f"{self.status} ({self.reason or self.method})"
        if self.witness is not None:
            text += f"; witness {self.witness.describe()}"
        return text


def _rational(v: Sequence[Fraction]) -> RationalWitness:
    return RationalWitness(primitive(v))


def _line_witness(form: Polynomial, base, direction) -> Witness | None:
    """A zero of ``form`` on the line ``base + t*direction`` if one exists."""
    q = _restrict_to_line(form, base, direction)
    if not q:
        return _rational(base)
    try:
        roots = rr.rational_roots(q)
    except ValueError:
        roots = []
    if roots:
        t = roots[-1]
        return _rational([b + t * d for b, d in zip(base, direction)])
    sf = rr.squarefree(q)
    intervals = rr.isolate_real_roots(sf)
    if not intervals:
        return None
    a, b = intervals[-1]
    if a == b:
        return _rational([x + a * d for x, d in zip(base, direction)])
    return AlgebraicWitness(tuple(base), tuple(direction), tuple(sf), a, b)


def _symmetric_matrix(form: Polynomial) -> list[list[Fraction]]:
    n = form.nvars
    m = [[Fraction(0)] * n for _ in range(n)]
    for mono, c in form.items():
        idx = [i for i, e in enumerate(mono) for _ in range(e)]
        i, j = idx
        if i == j:
            m[i][i] += c
        else:
            m[i][j] += c / 2
            m[j][i] += c / 2
    return m


def _bilinear(m, u, v) -> Fraction:
    return sum((u[i] * m[i][j] * v[j] for i in range(len(u)) for j in range(len(v))), Fraction(0))


def _congruence_diagonalize(m) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """Pairwise orthogonal vectors with their nonzero form values (Lagrange reduction)."""
    n = len(m)
    basis = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    out = []
    while basis:
        w = next((b for b in basis if _bilinear(m, b, b) != 0), None)
        if w is None:
            pair = next(
                ((a, b) for a, b in itertools.combinations(basis, 2) if _bilinear(m, a, b) != 0), None
            )
            if pair is None:
                break
            w = tuple(x + y for x, y in zip(*pair))
        qw = _bilinear(m, w, w)
        out.append((w, qw))
        nxt = []
        for b in basis:
            proj = tuple(x - _bilinear(m, b, w) / qw * y for x, y in zip(b, w))
            if any(proj):
                nxt.append(proj)
        # keep a basis of the orthogonal complement
        reduced = []
        for b in nxt:
            if rank(reduced + [b]) > len(reduced):
                reduced.append(b)
        basis = reduced[: n - len(out)]
    return out


def _descartes_inertia(cp: Sequence[Fraction]) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts from det(tI - M), highest first."""
    n = len(cp) - 1
    zero = 0
    coeffs = list(cp)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        zero += 1
    signs = [c > 0 for c in coeffs if c != 0]
    positive = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    return positive, n - zero - positive, zero


def _decide_quadratic(form: Polynomial) -> EllipticityVerdict:
    m = _symmetric_matrix(form)
    n = len(m)
    pos, neg, zero = _descartes_inertia(charpoly(m))
    details = {"inertia": {"positive": pos, "negative": neg, "zero": zero}}
    if pos == n or neg == n:
        details["sign"] = "positive" if pos == n else "negative"
        return EllipticityVerdict(ELLIPTIC, "quadratic", None, "definite quadratic form", details)
    if zero:
        v = kernel(m, n)[0]
        return EllipticityVerdict(NOT_ELLIPTIC, "quadratic", _rational(v), "singular quadratic form", details)
    diag = _congruence_diagonalize(m)
    u = next(w for w, q in diag if q > 0)
    v = next(w for w, q in diag if q < 0)
    witness = _line_witness(form, u, v)
    return EllipticityVerdict(NOT_ELLIPTIC, "quadratic", witness, "indefinite quadratic form", details)


def _is_diagonal(form: Polynomial) -> bool:
    return all(sum(1 for e in mono if e) == 1 for mono in form.terms)


def _decide_diagonal(form: Polynomial, k: int) -> EllipticityVerdict:
    n = form.nvars
    coeffs = []
    for i in range(n):
        mono = tuple(k if j == i else 0 for j in range(n))
        coeffs.append(form.coefficient(mono))
    for i, a in enumerate(coeffs):
        if a == 0:
            e = [Fraction(int(j == i)) for j in range(n)]
            return EllipticityVerdict(NOT_ELLIPTIC, "diagonal", _rational(e), f"no xi_{i + 1}^{k} term")
    if all(a > 0 for a in coeffs) or all(a < 0 for a in coeffs):
        return EllipticityVerdict(ELLIPTIC, "diagonal", None, "diagonal even form with same-sign coefficients")
    i = next(j for j, a in enumerate(coeffs) if a > 0)
    j = next(j for j, a in enumerate(coeffs) if a < 0)
    base = [Fraction(int(x == j)) for x in range(n)]
    direction = [Fraction(int(x == i)) for x in range(n)]
    root = rr.rational_kth_root(-coeffs[j] / coeffs[i], k)
    if root is not None:
        witness = _rational([b + root * d for b, d in zip(base, direction)])
    else:
        witness = _line_witness(form, base, direction)
    return EllipticityVerdict(NOT_ELLIPTIC, "diagonal", witness, "diagonal form with mixed-sign coefficients")


def _binary_zero(form: Polynomial) -> Witness | None:
    k = form.total_degree()
    if form.coefficient((k, 0)) == 0:
        return RationalWitness((Fraction(1), Fraction(0)))
    return _line_witness(form, (Fraction(0), Fraction(1)), (Fraction(1), Fraction(0)))


def _decide_binary(form: Polynomial) -> EllipticityVerdict:
    w = _binary_zero(form)
    if w is None:
        return EllipticityVerdict(ELLIPTIC, "binary", None, "binary form without real zeros (Sturm)")
    return EllipticityVerdict(NOT_ELLIPTIC, "binary", w, "binary form with a real zero")


def _lift(w: Witness, u, v) -> Witness:
    def emb(c):
        return tuple(c[0] * a + c[1] * b for a, b in zip(u, v))

    if isinstance(w, RationalWitness):
        return _rational(emb(w.covector))
    return AlgebraicWitness(emb(w.base), emb(w.direction), w.polynomial, w.lower, w.upper)


def _decide_random(form: Polynomial, seed: int, trials: int) -> EllipticityVerdict:
    n = form.nvars
    rng = random.Random(seed)
    box = range(-2, 3)
    candidates = itertools.product(box, repeat=n) if 5 ** n <= 4096 else (
        tuple(rng.choice(box) for _ in range(n)) for _ in range(4096)
    )
    for c in candidates:
        if any(c) and form.evaluate(c) == 0:
            return EllipticityVerdict(NOT_ELLIPTIC, "random", _rational([Fraction(x) for x in c]),
                                      "rational zero found by search")
    s, t = Polynomial.generators(("s", "t"))
    for _ in range(trials):
        u = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        v = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        if rank([u, v]) < 2:
            continue
        plane = form.substitute([s * a + t * b for a, b in zip(u, v)])
        if plane.is_zero():
            continue
        w = _binary_zero(plane)
        if w is not None:
            return EllipticityVerdict(NOT_ELLIPTIC, "random", _lift(w, u, v),
                                      "real zero found on a random plane (Sturm)")
    return EllipticityVerdict(
        UNKNOWN, "random", None,
        f"no real zero found ({trials} random planes); a complete decision for {n} variables "
        f"in degree {form.total_degree()} needs cylindrical algebraic decomposition or a "
        "sum-of-squares positivity certificate",
    )


def decide_nonvanishing(form, seed: int = 0, trials: int = 64) -> EllipticityVerdict:
    """Exact verdict on ``form(xi) != 0`` for every nonzero real ``xi``.

    Accepts a homogeneous :class:`Polynomial` or anything with a ``form``
    attribute holding one (such as a symbol).
    """
    form = getattr(form, "form", form)
    if form.is_zero():
        raise ZeroFormError("the symbol is identically zero; the operator drops order at this point")
    if not form.is_homogeneous():
        raise ValueError(f"{form} is not homogeneous")
    n, k = form.nvars, form.total_degree()
    if k == 0:
        return EllipticityVerdict(ELLIPTIC, "constant", None, "nonzero constant form")
    if n == 1:
        return EllipticityVerdict(ELLIPTIC, "univariate", None, "nonzero monomial in one variable")
    if k == 1:
        row = [form.coefficient(tuple(int(j == i) for j in range(n))) for i in range(n)]
        return EllipticityVerdict(NOT_ELLIPTIC, "linear", _rational(kernel([row], n)[0]), "linear form")
    if k == 2:
        return _decide_quadratic(form)
    if k % 2 == 0 and _is_diagonal(form):
        return _decide_diagonal(form, k)
    if n == 2:
        return _decide_binary(form)
    return _decide_random(form, seed, trials)
