"""Exact linear algebra over Q on lists of Fraction rows."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple  # tuple[Fraction, ...]


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; zero rows are dropped. Returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][col]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def reduce_vector(v: Sequence[Fraction], echelon: Sequence[Sequence[Fraction]], pivots: Sequence[int]) -> Vector:
    """Canonical representative of ``v`` modulo the row space of a reduced echelon matrix."""
    out = [Fraction(x) for x in v]
    for row, col in zip(echelon, pivots):
        f = out[col]
        if f:
            out = [a - f * b for a, b in zip(out, row)]
    return tuple(out)


def kernel(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Basis of the right kernel, each vector scaled to a primitive integer vector."""
    echelon, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pcol in zip(echelon, pivots):
            v[pcol] = -row[fcol]
        basis.append(primitive(v))
    return basis


def primitive(v: Sequence[Fraction]) -> Vector:
    """Scale a nonzero rational vector to coprime integers with positive first nonzero entry."""
    v = [Fraction(x) for x in v]
    if not any(v):
        return tuple(v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    first = next(x for x in ints if x)
    s = 1 if first > 0 else -1
    return tuple(Fraction(s * x // g) for x in ints)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    cols = list(zip(*b))
    return [[dot(r, c) for c in cols] for r in a]


def determinant(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            f = a[i][col] / a[col][col]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


def charpoly(m: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Coefficients of det(t*I - M), highest degree first (Faddeev-LeVerrier)."""
    n = len(m)
    a = [[Fraction(x) for x in r] for r in m]
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        prod = matmul(a, mk) if k > 1 else [[Fraction(0)] * n for _ in range(n)]
        mk = [[prod[i][j] + coeffs[-1] * ident[i][j] for j in range(n)] for i in range(n)]
        am = matmul(a, mk)
        ck = -sum(am[i][i] for i in range(n)) / k
        coeffs.append(ck)
    return coeffs
