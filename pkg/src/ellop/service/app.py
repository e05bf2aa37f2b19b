"""FastAPI application exposing the library, one endpoint per CLI command."""

from __future__ import annotations

from fastapi import FastAPI, Request as HTTPRequest
from fastapi.responses import JSONResponse

from .. import __version__
from ..affine import PointNotOnVariety, ambient, kpoint, parse_point
from ..audit import audit_variety, resolve_operator
from ..cotangent import (
    FormalDerivationSum,
    algebraic_normalize,
    classical_normalize,
    cotangent_space,
    d_h,
    kaehler_specialize,
    rough_normalize,
    tangent_space,
)
from ..parsing import ParseError, infer_variables, parse_operator, parse_polynomial
from ..polycore import Polynomial, render_polynomial
from ..problem import Problem, ProblemError, load_problem
from ..symbols import construct_delta_I, is_elliptic_at, principal_symbol
from ..weyl import check_ideal_invariance, verify_order
from . import schemas as s

app = FastAPI(title="ellop", version=__version__)


@app.exception_handler(ProblemError)
async def _problem_error(request: HTTPRequest, exc: ProblemError):
    return JSONResponse(status_code=400, content={"error": exc.to_json()})


@app.exception_handler(ParseError)
async def _parse_error(request: HTTPRequest, exc: ParseError):
    return JSONResponse(status_code=400, content={"error": {"location": "text", "message": exc.message,
                                                             "position": exc.position}})


@app.exception_handler(ValueError)
async def _value_error(request: HTTPRequest, exc: ValueError):
    return JSONResponse(status_code=400, content={"error": {"location": "request", "message": str(exc),
                                                             "position": None}})


def _load(req: s.Request) -> Problem:
    return load_problem(req.problem, req.order)


def _seed(req: s.Request, problem: Problem) -> int:
    return problem.seed if req.seed is None else req.seed


def _point(problem: Problem, text: str, location: str = "point"):
    try:
        coords = parse_point(text)
    except ValueError as exc:
        raise ProblemError(location, str(exc)) from None
    if len(coords) != len(problem.variables):
        raise ProblemError(location, f"expected {len(problem.variables)} coordinates, got {len(coords)}")
    try:
        return kpoint(problem.algebra, coords)
    except PointNotOnVariety as exc:
        raise ProblemError(location, str(exc)) from None


def _fmt(problem: Problem):
    key = problem.algebra.order.key
    return lambda p: render_polynomial(p, key)


def _strs(v) -> list[str]:
    return [str(c) for c in v]


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/groebner", response_model=s.GroebnerResponse)
def groebner(req: s.Request):
    problem = _load(req)
    fmt = _fmt(problem)
    return s.GroebnerResponse(
        order=problem.algebra.order.kind,
        variables=list(problem.variables),
        generators=[fmt(g) for g in problem.algebra.generators],
        basis=[fmt(g) for g in problem.algebra.basis],
    )


@app.post("/nf", response_model=s.NormalFormResponse)
def nf(req: s.NormalFormRequest):
    problem = _load(req)
    fmt = _fmt(problem)
    try:
        p = parse_polynomial(req.poly, problem.variables)
    except ParseError as exc:
        raise ProblemError("poly", exc.message, exc.position) from None
    r = problem.algebra.normal_form(p)
    return s.NormalFormResponse(poly=fmt(p), normal_form=fmt(r), in_ideal=r.is_zero())


@app.post("/point", response_model=s.PointResponse)
def point(req: s.PointRequest):
    problem = _load(req)
    try:
        coords = parse_point(req.point)
    except ValueError as exc:
        raise ProblemError("point", str(exc)) from None
    if len(coords) != len(problem.variables):
        raise ProblemError("point", f"expected {len(problem.variables)} coordinates, got {len(coords)}")
    try:
        kpoint(problem.algebra, coords)
    except PointNotOnVariety as exc:
        return s.PointResponse(point=_strs(coords), valid=False, generator=_fmt(problem)(exc.generator),
                               value=str(exc.value), exit_code=3)
    return s.PointResponse(point=_strs(coords), valid=True, exit_code=0)


@app.post("/cotangent", response_model=s.CotangentResponse)
def cotangent(req: s.CotangentRequest):
    problem = _load(req)
    h = _point(problem, req.point)
    if req.model == "kaehler":
        space, differential = kaehler_specialize(h)
    else:
        space = cotangent_space(h)
        differential = {
            "differential": lambda f: d_h(h, f, space),
            "classical": lambda f: classical_normalize(h, FormalDerivationSum.delta(h, f), space),
            "rough": lambda f: rough_normalize(h, FormalDerivationSum.single(f), space),
            "algebraic": lambda f: algebraic_normalize(h, FormalDerivationSum.single(f), space),
        }[req.model]
    gens = Polynomial.generators(problem.variables)
    return s.CotangentResponse(
        point=_strs(h.coordinates),
        model=req.model,
        ambient_dim=space.ambient_dim,
        dim=space.dim,
        relation_rows=[_strs(r) for r in space.relation_rows],
        reduced_relations=[_strs(r) for r in space.reduced_relations],
        differentials={v: _strs(differential(x).coords) for v, x in zip(problem.variables, gens)},
        tangent_basis=[_strs(t.coords) for t in tangent_space(h, space)],
    )


@app.post("/order", response_model=s.OrderResponse)
def order(req: s.OrderRequest):
    variables = tuple(req.variables) if req.variables else infer_variables(req.operator, operator=True)
    try:
        op = parse_operator(req.operator, variables)
    except ParseError as exc:
        raise ProblemError("operator", exc.message, exc.position) from None
    k = op.order()
    bound = k if req.bound is None else req.bound
    ok = verify_order(op, bound)
    return s.OrderResponse(operator=str(op), variables=list(variables), order=k, verified=ok,
                           exit_code=0 if ok else 3)


@app.post("/invariance", response_model=s.InvarianceResponse)
def invariance(req: s.Request):
    problem = _load(req)
    fmt = _fmt(problem)
    L, _ = resolve_operator(problem)
    report = check_ideal_invariance(L, problem.algebra.basis)
    return s.InvarianceResponse(
        operator=str(L),
        holds=report.holds,
        products_checked=report.checked,
        witness=fmt(report.witness) if report.witness is not None else None,
        residue=fmt(report.residue) if report.residue is not None else None,
        failures=[
            s.InvarianceFailureBody(multiplier=list(f.multiplier), generator=fmt(f.generator),
                                    witness=fmt(f.witness), residue=fmt(f.residue))
            for f in report.failures
        ],
        exit_code=0 if report.holds else 3,
    )


@app.post("/induce", response_model=s.InduceResponse)
def induce(req: s.Request):
    problem = _load(req)
    fmt = _fmt(problem)
    L, _ = resolve_operator(problem)
    report = check_ideal_invariance(L, problem.algebra.basis, collect_all=False)
    if report.holds:
        return s.InduceResponse(operator=str(L), induced=True, order=L.order(), exit_code=0)
    return s.InduceResponse(operator=str(L), induced=False, witness=fmt(report.witness),
                            residue=fmt(report.residue), exit_code=3)


@app.post("/symbol", response_model=s.SymbolResponse)
def symbol(req: s.PointRequest):
    problem = _load(req)
    h = _point(problem, req.point)
    L, _ = resolve_operator(problem)
    sym = principal_symbol(L, kpoint(ambient(problem.variables, problem.algebra.order.kind), h.coordinates))
    return s.SymbolResponse(operator=str(L), point=_strs(h.coordinates), degree=sym.degree,
                            form=str(sym.form), classical=str(sym.classical()))


@app.post("/elliptic", response_model=s.EllipticResponse)
def elliptic(req: s.EllipticRequest):
    problem = _load(req)
    L, _ = resolve_operator(problem)
    if req.all_points or req.point is None:
        points = list(problem.points)
        if not points:
            raise ProblemError("points", "no points given; pass a point or list points in the problem file")
    else:
        points = [_point(problem, req.point)]
    up = ambient(problem.variables, problem.algebra.order.kind)
    seed = _seed(req, problem)
    results = []
    for h in points:
        pv = is_elliptic_at(L, kpoint(up, h.coordinates), seed=seed)
        results.append(s.PointVerdictBody(
            point=_strs(h.coordinates), symbol=str(pv.symbol.form), order_at_point=pv.order_at_point,
            verdict=s.VerdictBody(**pv.verdict.to_json()), summary=pv.verdict.summary(),
        ))
    failed = any(r.verdict.status == "NotElliptic" for r in results)
    return s.EllipticResponse(operator=str(L), results=results, exit_code=3 if failed else 0)


@app.post("/delta-construct", response_model=s.DeltaResponse)
def delta_construct(req: s.DeltaRequest):
    problem = _load(req)
    gens = problem.algebra.generators
    if not gens:
        raise ProblemError("ideal", "need at least one nonzero generator")
    mode = req.mode or problem.mode
    op = construct_delta_I(gens, mode)
    exps = [next(sum(a) for a in op.terms if a[i]) for i in range(len(problem.variables))]
    return s.DeltaResponse(mode=mode, operator=str(op), exponents=exps,
                           annihilates_generators=all(op.apply(g).is_zero() for g in gens))


@app.post("/audit")
def audit(req: s.Request) -> dict:
    problem = _load(req)
    return audit_variety(problem, seed=_seed(req, problem))
