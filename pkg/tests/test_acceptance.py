"""Acceptance checks 1-9, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
Every comparison is exact; each check also has a wall-clock budget.
Random instances come from seeded ``random.Random`` streams so the counts
below are exact and reruns are identical.
"""

import itertools
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

sys.path.insert(0, str(Path(__file__).parent))

from conftest import FIXTURES, VARIETIES, XY, from_sympy, to_sympy  # noqa: E402
from golden import GOLDEN, dual_names  # noqa: E402

from ellop.affine import ambient, kpoint, make_quotient  # noqa: E402
from ellop.audit import audit_variety  # noqa: E402
from ellop.cotangent import (  # noqa: E402
    FormalDerivationSum,
    algebraic_normalize,
    canonical_projection,
    classical_normalize,
    cotangent_space,
    d_h,
    kaehler_specialize,
    omega_map,
    pair,
    rough_normalize,
    tangent_space,
)
from ellop.ellipticity import ELLIPTIC, NOT_ELLIPTIC, decide_nonvanishing  # noqa: E402
from ellop.groebner import MonomialOrder, buchberger  # noqa: E402
from ellop.linalg import rank  # noqa: E402
from ellop.parsing import parse_operator, parse_polynomial  # noqa: E402
from ellop.polycore import Polynomial  # noqa: E402
from ellop.problem import load_problem  # noqa: E402
from ellop.symbols import (  # noqa: E402
    construct_delta_I,
    is_elliptic_at,
    principal_symbol,
    symbol_pullback,
    symbol_pullback_check,
)
from ellop.weyl import (  # noqa: E402
    DiffOperator,
    check_ideal_invariance,
    induce,
    iterated_delta,
    random_polynomial,
    scalar_delta_value,
    verify_order,
)

X, Y = Polynomial.generators(XY)
CUSP = Y ** 3 - X ** 2
CUSP_POINTS = [(0, 0), (1, 1), (8, 4)]
NAMES = {1: ("X",), 2: XY, 3: ("X", "Y", "Z")}


def rand_rational(rng, lo=-5, hi=5):
    return Fraction(rng.randint(lo, hi), rng.randint(1, 3))


def rand_operator(rng, variables, k):
    """Operator of structural order exactly ``k`` with coefficient degree <= 2."""
    n = len(variables)
    terms = {}
    for _ in range(rng.randint(0, 3)):
        alpha = [0] * n
        for _ in range(rng.randint(0, k)):
            alpha[rng.randrange(n)] += 1
        terms[tuple(alpha)] = random_polynomial(variables, rng, max_degree=2)
    top = [0] * n
    for _ in range(k):
        top[rng.randrange(n)] += 1
    c = random_polynomial(variables, rng, max_degree=2)
    if c.is_zero():
        c = Polynomial.constant(variables, rng.randint(1, 5))
    L = DiffOperator(variables, terms) + DiffOperator(variables, {tuple(top): c})
    if L.is_zero() or L.order() != k:
        L = DiffOperator(variables, {tuple(top): c})
    return L


# 1. worked example

def criterion_1():
    op = construct_delta_I([CUSP], "as-written")
    assert op == parse_operator("dX^4 + dY^4", XY)
    assert op.order() == 4 and verify_order(op, 4) and not verify_order(op, 3)
    expected = parse_polynomial("24*xi1^4 + 24*xi2^4", dual_names(2))
    up = ambient(XY)
    for z in CUSP_POINTS:
        kpoint(make_quotient(XY, [CUSP]), z)  # each point lies on the cusp
        h = kpoint(up, z)
        assert principal_symbol(op, h).form == expected
        assert is_elliptic_at(op, h).verdict.status == ELLIPTIC
    return "construct, order 4, symbol 24*xi1^4 + 24*xi2^4 and Elliptic at 3 points"


# 2. invariance witness against a brute-force oracle

def criterion_2():
    x, y = sympy.symbols("X Y")
    element = x ** 4 * (y ** 3 - x ** 2)
    image = sympy.diff(element, x, 4) + sympy.diff(element, y, 4)
    _, oracle = sympy.reduced(image, [y ** 3 - x ** 2], x, y, order="grevlex")
    assert sympy.expand(oracle - (-336 * x ** 2)) == 0
    op = parse_operator("dX^4 + dY^4", XY)
    report = check_ideal_invariance(op, buchberger([CUSP]))
    assert not report.holds
    assert report.witness == X ** 4 * CUSP and report.residue == from_sympy(oracle, XY)
    audit = audit_variety(load_problem(json.loads((FIXTURES / "cusp.json").read_text())))
    (entry,) = [e for e in audit["entries"] if e["check"] == "ideal_invariance"]
    assert entry["status"] == "fail" and entry["data"]["residue"] == "-336*X^2"
    assert len(audit["discrepancies"]) == 1 and audit["exit_code"] == 3
    return "residue -336*X^2 matches the oracle; audit flags the discrepancy"


# 3. closed-form symbol against ev_z(L(f^k))

def criterion_3(instances=120):
    rng = random.Random(3)
    for _ in range(instances):
        n, k = rng.randint(1, 3), rng.randint(0, 4)
        variables = NAMES[n]
        L = rand_operator(rng, variables, k)
        z = tuple(rand_rational(rng) for _ in range(n))
        g = random_polynomial(variables, rng, max_degree=2, max_terms=4)
        f = g - g.evaluate(z)
        grad = [f.diff(i).evaluate(z) for i in range(n)]
        lhs = principal_symbol(L, kpoint(ambient(variables), z))(grad)
        assert lhs == L.apply(f ** k).evaluate(z), (L, z, f)
    return f"{instances} instances, n <= 3, k <= 4"


# 4. delta calculus

def criterion_4(instances=120):
    rng = random.Random(4)
    for _ in range(instances):
        n, k = rng.randint(1, 3), rng.randint(0, 4)
        variables = NAMES[n]
        L = rand_operator(rng, variables, k)
        gens = Polynomial.generators(variables)
        for _ in range(3):
            fs = [random_polynomial(variables, rng) for _ in range(k + 1)]
            assert iterated_delta(fs, L).is_zero()
        assert any(not iterated_delta(t, L).is_zero() for t in itertools.product(gens, repeat=k))
        for j in range(4):
            fs = [random_polynomial(variables, rng) for _ in range(j)]
            z = tuple(rand_rational(rng) for _ in range(n))
            p = random_polynomial(variables, rng, max_degree=3)
            assert iterated_delta(fs, L).apply(p).evaluate(z) == scalar_delta_value(L.apply, fs, z, p)
    return f"{instances} operators, k <= 4; evaluation identity for j <= 3"


# 5. cotangent model agreement

def corpus_points():
    out = []
    for path in VARIETIES:
        out += load_problem(json.loads(path.read_text())).points
    return out


def criterion_5(inputs=50):
    rng = random.Random(5)
    pairs = corpus_points()
    assert len(pairs) >= 10
    for h in pairs:
        space = cotangent_space(h)
        kspace, differential = kaehler_specialize(h)
        assert kspace.dim == space.dim and kspace.relation_rows == space.relation_rows
        for _ in range(inputs):
            f = random_polynomial(h.variables, rng, max_degree=3, max_terms=4)
            values = [
                d_h(h, f, space),
                rough_normalize(h, FormalDerivationSum.single(f), space),
                algebraic_normalize(h, FormalDerivationSum.single(f), space),
                classical_normalize(h, FormalDerivationSum.delta(h, f), space),
                differential(f),
            ]
            assert all(v == values[0] for v in values), (h.describe(), f)
    return f"{len(pairs)} (ideal, point) pairs x {inputs} inputs; Kaehler relations and dimensions match"


# 6. transfer to the cusp

def criterion_6():
    A = make_quotient(XY, [CUSP])
    D = parse_operator("3*Y^2*dX + 2*X*dY", XY)
    source, images = canonical_projection(A)
    for L in (D, D.compose(D)):
        assert check_ideal_invariance(L, A.basis).holds
        induce(L, A)
        for z in CUSP_POINTS:
            h = kpoint(A, z)
            assert symbol_pullback_check(L, A, h)
            assert symbol_pullback(L, A, h).omega_surjective
            assert omega_map(source, images, h).surjective
    return "D and D^2: invariant, induced, pullback and surjectivity at 3 points"


# 7. golden ellipticity corpus

def criterion_7():
    for label, text, n, status, _ in GOLDEN:
        f = parse_polynomial(text, dual_names(n))
        v = decide_nonvanishing(f)
        assert v.status == status, label
        if status == NOT_ELLIPTIC:
            assert v.witness.verify(f), label
    return f"{len(GOLDEN)} golden forms, all witnesses re-verified"


# 8. Groebner engine

def sympy_reduced_basis(gens, variables):
    syms = sympy.symbols(variables)
    gb = sympy.groebner([to_sympy(g) for g in gens], *syms, order="grevlex", domain=sympy.QQ)
    mo = MonomialOrder("grevlex", variables)
    out = set()
    for e in gb.exprs:
        p = from_sympy(e, variables)
        out.add(p.scale(1 / mo.leading(p)[1]))
    return out


def criterion_8(ideals=24):
    rng = random.Random(8)
    for _ in range(ideals):
        variables = NAMES[rng.randint(2, 3)]
        gens = [g for g in (random_polynomial(variables, rng, max_degree=3) for _ in range(rng.randint(1, 3)))
                if not g.is_zero()] or [Polynomial.generators(variables)[0]]
        gb = buchberger(gens)
        for _ in range(3):
            perm = gens[:]
            rng.shuffle(perm)
            assert buchberger(perm).elements == gb.elements
        assert set(gb) == sympy_reduced_basis(gens, variables)
        p, q = (random_polynomial(variables, rng, max_degree=4, max_terms=5) for _ in range(2))
        c = rand_rational(rng)
        assert gb.normal_form(p + q.scale(c)) == gb.normal_form(p) + gb.normal_form(q).scale(c)
        # principal ideal: normal form and membership against sympy's division
        g = gens[0]
        syms = sympy.symbols(variables)
        for cand in (p, p * g):
            _, r = sympy.reduced(to_sympy(cand), [to_sympy(g)], *syms, order="grevlex")
            pgb = buchberger([g])
            assert pgb.normal_form(cand) == from_sympy(r, variables)
            assert pgb.contains(cand) == (r == 0)
    return f"{ideals} random ideals x 3 permutations; linearity and principal division"


# 9. biduality

def fixture_points():
    paths = sorted(FIXTURES.glob("*.json")) + VARIETIES
    return [h for p in paths for h in load_problem(json.loads(p.read_text())).points]


def criterion_9():
    pts = fixture_points()
    for h in pts:
        space = cotangent_space(h)
        basis = tangent_space(h, space)
        assert len(basis) == space.dim
        gram = [[pair(w, t) for t in basis] for w in space.basis()]
        assert rank(gram, len(basis)) == space.dim
    return f"{len(pts)} fixture points"


CRITERIA = [
    (1, "worked example", 1.0, criterion_1),
    (2, "invariance audit", 1.0, criterion_2),
    (3, "symbol oracle", 30.0, criterion_3),
    (4, "delta calculus", 30.0, criterion_4),
    (5, "model agreement", 30.0, criterion_5),
    (6, "quotient transfer", 5.0, criterion_6),
    (7, "ellipticity golden corpus", 5.0, criterion_7),
    (8, "Groebner engine", 30.0, criterion_8),
    (9, "biduality", 5.0, criterion_9),
]


def evaluate(fn, budget):
    start = time.perf_counter()
    try:
        detail, ok = fn(), True
    except Exception as exc:  # a crash is a failed criterion, reported on its line
        detail, ok = f"{type(exc).__name__}: {exc}", False
    elapsed = time.perf_counter() - start
    if ok and elapsed >= budget:
        detail, ok = f"{detail}; too slow", False
    return ok, f"{detail} ({elapsed:.2f}s, budget {budget:g}s)"


def line(number, title, ok, detail):
    return f"criterion {number} [{title}]: {'PASS' if ok else 'FAIL'}: {detail}"


@pytest.mark.parametrize("number, title, budget, fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, budget, fn, capsys):
    ok, detail = evaluate(fn, budget)
    with capsys.disabled():
        print("\n" + line(number, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(n, t, *evaluate(fn, b)) for n, t, b, fn in CRITERIA]
    for n, t, ok, detail in results:
        print(line(n, t, ok, detail))
    sys.exit(0 if all(r[2] for r in results) else 1)
