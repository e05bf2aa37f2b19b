"""Univariate polynomials over Q: Sturm sequences and real root isolation.

Polynomials are lists of coefficients, lowest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Sequence

UPoly = list  # list[Fraction], index = power


def trim(p: Sequence[Fraction]) -> UPoly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence[Fraction]) -> int:
    return len(trim(p)) - 1


def evaluate(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence[Fraction]) -> UPoly:
    return trim([i * c for i, c in enumerate(p)][1:])


def divmod_poly(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[UPoly, UPoly]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        k = r[-1] / b[-1]
        shift = len(r) - len(b)
        q[shift] = k
        for i, c in enumerate(b):
            r[i + shift] -= k * c
        r = trim(r)
    return trim(q), r


def gcd_poly(a: Sequence[Fraction], b: Sequence[Fraction]) -> UPoly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return a
    return [c / a[-1] for c in a]


def squarefree(p: Sequence[Fraction]) -> UPoly:
    p = trim(p)
    if len(p) <= 1:
        return p
    g = gcd_poly(p, derivative(p))
    q = divmod_poly(p, g)[0]
    return [c / q[-1] for c in q]


def sturm_sequence(p: Sequence[Fraction]) -> list[UPoly]:
    p = trim(p)
    seq = [p, derivative(p)]
    while seq[-1]:
        r = divmod_poly(seq[-2], seq[-1])[1]
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_changes(values: Sequence[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at_infinity(p: UPoly, positive: bool) -> int:
    lead = p[-1]
    s = 1 if lead > 0 else -1
    if not positive and (len(p) - 1) % 2:
        s = -s
    return s


def count_real_roots(p: Sequence[Fraction], lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Number of distinct real roots in ``(lo, hi]``; ``None`` means infinite."""
    p = trim(p)
    if not p:
        raise ValueError("the zero polynomial has infinitely many roots")
    seq = sturm_sequence(p)

    def changes(x, positive):
        if x is None:
            return _sign_changes([_sign_at_infinity(s, positive) for s in seq])
        return _sign_changes([evaluate(s, x) for s in seq])

    return changes(lo, False) - changes(hi, True)


def root_bound(p: Sequence[Fraction]) -> Fraction:
    """Cauchy bound: every real root lies in ``(-B, B)``."""
    p = trim(p)
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p: Sequence[Fraction]) -> list[tuple[Fraction, Fraction]]:
    """Isolate the real roots of ``p``, in increasing order.

    Each entry is either ``(r, r)`` for an exact rational root or an open
    interval ``(a, b)`` containing exactly one root, with the squarefree part
    of ``p`` taking opposite signs at ``a`` and ``b``.
    """
    sf = squarefree(p)
    if len(sf) <= 1:
        return []
    bound = root_bound(sf)
    out: list[tuple[Fraction, Fraction]] = []
    # half-open intervals (a, b]; -bound is never a root
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        n = count_real_roots(sf, a, b)
        if n == 0:
            continue
        if n == 1:
            if evaluate(sf, b) == 0:
                out.append((b, b))
                continue
            if evaluate(sf, a) != 0:
                out.append((a, b))
                continue
        m = (a + b) / 2
        stack.append((m, b))
        stack.append((a, m))
    return sorted(out)


def rational_roots(p: Sequence[Fraction]) -> list[Fraction]:
    """All rational roots, via the rational root test on the integer-scaled polynomial."""
    p = trim(p)
    if len(p) <= 1:
        return []
    roots = set()
    while p and p[0] == 0:
        roots.add(Fraction(0))
        p = p[1:]
    if len(p) <= 1:
        return sorted(roots)
    den = 1
    for c in p:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    a0, an = abs(ints[0]), abs(ints[-1])
    for num in _divisors(a0):
        for d in _divisors(an):
            for s in (1, -1):
                x = Fraction(s * num, d)
                if evaluate(p, x) == 0:
                    roots.add(x)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    if n > 10**12:
        raise ValueError("coefficient too large for the rational root test")
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def refine(p: Sequence[Fraction], a: Fraction, b: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect a sign-change interval of ``p`` down to ``width``."""
    fa = evaluate(p, a)
    while b - a > width:
        m = (a + b) / 2
        fm = evaluate(p, m)
        if fm == 0:
            return m, m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return a, b


def rational_kth_root(x: Fraction, k: int) -> Fraction | None:
    """Exact non-negative ``k``-th root of ``x >= 0`` if it is rational."""
    if x < 0:
        return None

    def iroot(n: int) -> int | None:
        lo, hi = 0, 1 << (n.bit_length() // k + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** k < n:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo ** k == n else None

    a, b = iroot(x.numerator), iroot(x.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)
