"""End-to-end audit of an operator on an affine variety.

The audit builds (or takes) an operator, then checks each link of the chain
"annihilates generators -> preserves the ideal -> induces an operator on the
coordinate ring -> elliptic at each point".  Every link is checked, none is
assumed.  A report entry that fails carries data that can be re-checked
with a normal form or an evaluation.
"""

from __future__ import annotations

import platform
from typing import Any

from . import __version__
from .affine import ambient, kpoint
from .cotangent import cotangent_space
from .ellipticity import ELLIPTIC, NOT_ELLIPTIC, UNKNOWN, EllipticityVerdict, decide_nonvanishing
from .polycore import render_polynomial
from .problem import Problem
from .symbols import construct_delta_I, downstairs_symbol, is_elliptic_at, symbol_pullback
from .weyl import DiffOperator, InducedOperator, check_ideal_invariance, monomials_up_to, verify_order

PASS, FAIL, UNKNOWN_STATUS, NA = "pass", "fail", "unknown", "n/a"


def verdict_status(v: EllipticityVerdict) -> str:
    return {ELLIPTIC: PASS, NOT_ELLIPTIC: FAIL, UNKNOWN: UNKNOWN_STATUS}[v.status]


def _coords(point) -> list[str]:
    return [str(c) for c in point.coordinates]


def _entry(check: str, claim: str, status: str, point=None, **data) -> dict:
    out: dict[str, Any] = {"check": check, "claim": claim, "status": status}
    if point is not None:
        out["point"] = _coords(point)
    out["data"] = data
    return out


def toolchain() -> dict:
    return {"name": "ellop", "version": __version__, "python": platform.python_version()}


def resolve_operator(problem: Problem) -> tuple[DiffOperator, str]:
    if problem.operator is not None:
        return problem.operator, "supplied"
    if not problem.algebra.generators:
        raise ValueError("no operator supplied and no ideal generators to construct one from")
    return construct_delta_I(problem.algebra.generators, problem.mode), "constructed"


def _ideal_annihilation(L: DiffOperator, gens, fmt) -> dict:
    """Whether ``L`` kills the whole ideal: ``L o g`` must be the zero operator."""
    for g in gens:
        if not L.compose(DiffOperator.multiplication(g)).is_zero():
            for beta in monomials_up_to(len(L.variables), L.order()):
                w = g.shift_monomial(beta)
                image = L.apply(w)
                if not image.is_zero():
                    return _entry("ideal_annihilation", "the operator sends every element of the ideal to zero",
                                  FAIL, element=fmt(w), image=fmt(image))
    return _entry("ideal_annihilation", "the operator sends every element of the ideal to zero", PASS)


def audit_variety(problem: Problem, seed: int | None = None) -> dict:
    seed = problem.seed if seed is None else seed
    algebra = problem.algebra
    variables = algebra.variables
    fmt = lambda p: render_polynomial(p, algebra.order.key)  # noqa: E731
    L, source = resolve_operator(problem)
    k = L.order()
    gens = algebra.generators
    entries: list[dict] = []
    discrepancies: list[dict] = []

    entries.append(_entry("order", f"every {k + 1}-fold iterated commutator of the operator vanishes",
                          PASS if verify_order(L, k, seed=seed) else FAIL, order=k))

    bad = [(g, L.apply(g)) for g in gens if not L.apply(g).is_zero()]
    annihilates = not bad
    entries.append(_entry(
        "generator_annihilation", "the operator sends every ideal generator to zero",
        PASS if annihilates else FAIL,
        **({"generator": fmt(bad[0][0]), "image": fmt(bad[0][1])} if bad else {}),
    ))
    if source == "constructed":
        entries.append(_ideal_annihilation(L, gens, fmt))
    else:
        entries.append(_entry("ideal_annihilation", "the operator sends every element of the ideal to zero", NA,
                              note="only claimed for operators built from the generators"))

    report = check_ideal_invariance(L, algebra.basis)
    inv_data: dict[str, Any] = {"products_checked": report.checked}
    if not report.holds:
        inv_data.update(
            witness=fmt(report.witness),
            residue=fmt(report.residue),
            failing_products=len(report.failures),
        )
    entries.append(_entry("ideal_invariance", "the operator maps the ideal into itself",
                          PASS if report.holds else FAIL, **inv_data))
    if annihilates and not report.holds:
        discrepancies.append({
            "claim": "an operator annihilating the generators annihilates the ideal",
            "status": FAIL,
            "witness": fmt(report.witness),
            "residue": fmt(report.residue),
            "note": "generators are annihilated but a multiple of a generator is not; "
                    "the induced operator on the coordinate ring is not well defined",
        })

    induced = InducedOperator(L, algebra, report) if report.holds else None
    entries.append(_entry(
        "induce", "the operator descends to the coordinate ring",
        PASS if induced else FAIL,
        **({"order": k} if induced else {"witness": fmt(report.witness), "residue": fmt(report.residue)}),
    ))

    up_algebra = ambient(variables, algebra.order.kind)
    if L.has_constant_top_coefficients() and problem.points:
        pv = is_elliptic_at(L, kpoint(up_algebra, problem.points[0].coordinates), seed=seed)
        entries.append(_entry("elliptic_global_upstairs",
                              "constant top-order coefficients: the symbol is the same at every point",
                              verdict_status(pv.verdict), symbol=str(pv.symbol.form), verdict=pv.verdict.to_json()))

    for h in problem.points:
        up = kpoint(up_algebra, h.coordinates)
        pv = is_elliptic_at(L, up, seed=seed)
        entries.append(_entry("order_at_point", f"the operator has order {k} at the point (nonzero symbol)",
                              PASS if pv.order_at_point else FAIL, h, symbol=str(pv.symbol.form)))
        entries.append(_entry("elliptic_upstairs", "the operator is elliptic at the point of the ambient space",
                              verdict_status(pv.verdict), h, symbol=str(pv.symbol.form), verdict=pv.verdict.to_json()))
        if induced is None:
            continue
        pb = symbol_pullback(induced, algebra, h)
        entries.append(_entry(
            "symbol_pullback", "induced symbol composed with the cotangent map equals the upstairs symbol",
            PASS if pb.holds else FAIL, h,
            comparisons=[{"covector": [str(c) for c in c_.covector], "upstairs": str(c_.upstairs),
                          "downstairs": str(c_.downstairs)} for c_ in pb.comparisons],
        ))
        entries.append(_entry("omega_surjective", "the cotangent map of the projection is surjective",
                              PASS if pb.omega_surjective else FAIL, h))
        space = cotangent_space(h)
        down = downstairs_symbol(induced, h)
        if down.is_zero():
            dv = EllipticityVerdict(NOT_ELLIPTIC, "order", None, "order drops at h")
        else:
            dv = decide_nonvanishing(down, seed=seed)
        entries.append(_entry("elliptic_downstairs", "the induced operator is elliptic at the point of the variety",
                              verdict_status(dv), h, cotangent_dim=space.dim, symbol=str(down), verdict=dv.to_json()))
        if pv.verdict.status == ELLIPTIC:
            transfer = PASS if dv.status == ELLIPTIC else FAIL
            note = "upstairs ellipticity transferred to the induced operator"
        else:
            transfer = NA
            note = "the upstairs operator is not elliptic here, so the transfer hypothesis is not met"
            if space.dim < len(variables) and pv.order_at_point:
                note += "; a preserved ideal with nonzero differential at the point forces the upstairs " \
                        "symbol to vanish on its conormal directions"
        entries.append(_entry("ellipticity_transfer", "upstairs ellipticity implies ellipticity of the induced operator",
                              transfer, h, note=note))

    summary = {s: sum(1 for e in entries if e["status"] == s) for s in (PASS, FAIL, UNKNOWN_STATUS, NA)}
    return {
        "schema": 1,
        "tool": toolchain(),
        "input_digest": problem.spec.digest(),
        "variables": list(variables),
        "ideal": [fmt(g) for g in gens],
        "groebner_basis": [fmt(g) for g in algebra.basis],
        "monomial_order": algebra.order.kind,
        "seed": seed,
        "operator": {"text": str(L), "source": source, "mode": problem.mode if source == "constructed" else None,
                     "order": k},
        "entries": entries,
        "discrepancies": discrepancies,
        "summary": summary,
        "exit_code": 3 if summary[FAIL] else 0,
    }


def recheck_witnesses(report: dict, problem: Problem) -> bool:
    """Re-derive every fail witness in ``report`` by normal form or evaluation."""
    from .parsing import parse_polynomial

    algebra = problem.algebra
    variables = algebra.variables
    L, _ = resolve_operator(problem)
    for e in report["entries"]:
        if e["status"] != FAIL:
            continue
        data = e["data"]
        if e["check"] in ("ideal_invariance", "induce"):
            w = parse_polynomial(data["witness"], variables)
            r = parse_polynomial(data["residue"], variables)
            if not algebra.contains(w) or algebra.normal_form(L.apply(w)) != r or r.is_zero():
                return False
        elif e["check"] == "generator_annihilation":
            g = parse_polynomial(data["generator"], variables)
            if L.apply(g) != parse_polynomial(data["image"], variables):
                return False
        elif e["check"] == "ideal_annihilation":
            w = parse_polynomial(data["element"], variables)
            if not algebra.contains(w) or L.apply(w) != parse_polynomial(data["image"], variables):
                return False
        elif e["check"] in ("elliptic_upstairs", "elliptic_downstairs", "elliptic_global_upstairs"):
            if not _recheck_verdict(e):
                return False
    return True


def _recheck_verdict(entry: dict) -> bool:
    from fractions import Fraction

    from .ellipticity import AlgebraicWitness, RationalWitness
    from .parsing import parse_polynomial

    verdict = entry["data"]["verdict"]
    w = verdict.get("witness")
    if w is None:
        return verdict["method"] == "order"
    text = entry["data"]["symbol"]
    n = len(w["covector"] if w["kind"] == "rational" else w["base"])
    prefix = "eta" if entry["check"] == "elliptic_downstairs" else "xi"
    names = tuple(f"{prefix}{i + 1}" for i in range(n))
    form = parse_polynomial(text, names)
    if w["kind"] == "rational":
        return RationalWitness(tuple(Fraction(c) for c in w["covector"])).verify(form)
    aw = AlgebraicWitness(
        tuple(Fraction(c) for c in w["base"]), tuple(Fraction(c) for c in w["direction"]),
        tuple(Fraction(c) for c in w["polynomial"]), Fraction(w["interval"][0]), Fraction(w["interval"][1]),
    )
    return aw.verify(form)

