"""``ellop``: command-line client of the ellop service.

By default requests are served in-process by the bundled FastAPI app; with
``--server URL`` they go to a running ``ellop serve`` instead.  Exit codes:
0 ok, 2 input error, 3 a checked claim failed, 1 internal error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from typing import Any, Callable

import httpx

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_CLAIM = 0, 1, 2, 3


class InputError(Exception):
    def __init__(self, location: str, message: str, position: int | None = None):
        super().__init__(message)
        self.body = {"location": location, "message": message, "position": position}


def _post_local(path: str, body: dict) -> httpx.Response:
    from .service.app import app

    async def go():
        transport = httpx.ASGITransport(app=app, raise_app_exceptions=False)
        async with httpx.AsyncClient(transport=transport, base_url="http://ellop") as client:
            return await client.post(path, json=body)

    return asyncio.run(go())


def _post_remote(server: str, path: str, body: dict) -> httpx.Response:
    with httpx.Client(base_url=server, timeout=300) as client:
        return client.post(path, json=body)


def _error_from_response(r: httpx.Response) -> dict:
    try:
        data = r.json()
    except ValueError:
        return {"location": "server", "message": r.text or f"HTTP {r.status_code}", "position": None}
    if "error" in data:
        return data["error"]
    detail = data.get("detail")
    if isinstance(detail, list) and detail:
        d = detail[0]
        loc = [str(p) for p in d.get("loc", []) if p not in ("body",)]
        if loc[:1] == ["problem"]:
            loc = loc[1:] or ["problem"]
        return {"location": ".".join(loc) or "request", "message": d.get("msg", ""), "position": None}
    return {"location": "server", "message": str(detail), "position": None}


def _read_problem(path: str | None) -> dict:
    if path is None:
        raise InputError("--input", "this command needs a problem file")
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(path, f"cannot read problem file: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(path, f"invalid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(data, dict):
        raise InputError(path, "top level must be a JSON object")
    return data


def _base(args) -> dict:
    body: dict[str, Any] = {"problem": _read_problem(args.input)}
    if args.order:
        body["order"] = args.order
    if args.seed is not None:
        body["seed"] = args.seed
    return body


def _pt(coords) -> str:
    return "(" + ", ".join(coords) + ")"


# text renderers, one per command

def _groebner_text(r: dict) -> list[str]:
    return [f"reduced Groebner basis ({r['order']}, variables {', '.join(r['variables'])}):",
            "{" + ", ".join(r["basis"]) + "}"]


def _nf_text(r: dict) -> list[str]:
    return [f"NF({r['poly']}) = {r['normal_form']}", f"in ideal: {'yes' if r['in_ideal'] else 'no'}"]


def _point_text(r: dict) -> list[str]:
    if r["valid"]:
        return [f"valid: {_pt(r['point'])} lies on the variety"]
    return [f"invalid: {r['generator']} takes the value {r['value']} at {_pt(r['point'])}"]


def _cotangent_text(r: dict) -> list[str]:
    out = [f"cotangent space at {_pt(r['point'])}: dim {r['dim']} (ambient {r['ambient_dim']}, model {r['model']})",
           "relation rows:"]
    out += [f"  {_pt(row)}" for row in r["relation_rows"]] or ["  (none)"]
    out += [f"d_h({v}) = {_pt(c)}" for v, c in r["differentials"].items()]
    out.append("tangent basis: " + (", ".join(_pt(t) for t in r["tangent_basis"]) or "(zero space)"))
    return out


def _order_text(r: dict) -> list[str]:
    state = "verified" if r["verified"] else "NOT verified"
    return [f"{r['operator']}: order {r['order']} ({state} by iterated commutators)"]


def _invariance_text(r: dict) -> list[str]:
    if r["holds"]:
        return [f"holds: {r['operator']} maps the ideal into itself ({r['products_checked']} products checked)"]
    out = [f"fails: {r['operator']} does not preserve the ideal "
           f"({len(r['failures'])} of {r['products_checked']} products)",
           f"witness {r['witness']} lies in the ideal; its image reduces to {r['residue']}"]
    out += [f"  {f['witness']} -> {f['residue']}" for f in r["failures"]]
    return out


def _induce_text(r: dict) -> list[str]:
    if r["induced"]:
        return [f"induced: {r['operator']} descends to the coordinate ring (order {r['order']})"]
    return [f"not induced: {r['operator']} sends {r['witness']} to {r['residue']} modulo the ideal"]


def _symbol_text(r: dict) -> list[str]:
    return [f"symbol at {_pt(r['point'])}, degree {r['degree']}: {r['form']}",
            f"classical (without k!): {r['classical']}"]


def _elliptic_text(r: dict) -> list[str]:
    if len(r["results"]) == 1:
        return [r["results"][0]["summary"]]
    return [f"{_pt(p['point'])}: {p['summary']}" for p in r["results"]]


def _delta_text(r: dict) -> list[str]:
    return [f"{r['operator']}  (mode {r['mode']}, exponents {r['exponents']})",
            f"annihilates generators: {'yes' if r['annihilates_generators'] else 'no'}"]


def _audit_text(r: dict) -> list[str]:
    op = r["operator"]
    out = [f"operator {op['text']} ({op['source']}, order {op['order']}) on ideal {{{', '.join(r['ideal'])}}}"]
    for e in r["entries"]:
        where = f" at {_pt(e['point'])}" if "point" in e else ""
        out.append(f"[{e['status']}] {e['check']}{where}: {e['claim']}")
        d = e["data"]
        if e["status"] == "fail" and "witness" in d and isinstance(d["witness"], str):
            out.append(f"    witness {d['witness']} -> residue {d['residue']}")
        if "verdict" in d and d["verdict"].get("witness"):
            out.append(f"    witness {json.dumps(d['verdict']['witness'])}")
    for disc in r["discrepancies"]:
        out.append(f"DISCREPANCY: {disc['claim']}: witness {disc['witness']}, residue {disc['residue']}")
    s = r["summary"]
    out.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['unknown']} unknown, {s['n/a']} n/a")
    return out


def _body_point(args) -> dict:
    body = _base(args)
    if args.point is None:
        raise InputError("--point", "this command needs --point")
    body["point"] = args.point
    return body


def _body_nf(args) -> dict:
    body = _base(args)
    if args.poly is None:
        raise InputError("--poly", "this command needs --poly")
    body["poly"] = args.poly
    return body


def _body_cotangent(args) -> dict:
    body = _body_point(args)
    body["model"] = args.model
    return body


def _body_order(args) -> dict:
    if args.op is None:
        raise InputError("--op", "this command needs --op")
    body: dict[str, Any] = {"operator": args.op}
    if args.vars:
        body["variables"] = [v.strip() for v in args.vars.split(",")]
    if args.bound is not None:
        body["bound"] = args.bound
    return body


def _body_elliptic(args) -> dict:
    body = _base(args)
    if args.point is not None:
        body["point"] = args.point
    body["all_points"] = bool(args.all_points)
    return body


def _body_delta(args) -> dict:
    body = _base(args)
    if args.mode:
        body["mode"] = args.mode
    return body


COMMANDS: dict[str, tuple[str, Callable, Callable]] = {
    "groebner": ("/groebner", _base, _groebner_text),
    "nf": ("/nf", _body_nf, _nf_text),
    "point": ("/point", _body_point, _point_text),
    "cotangent": ("/cotangent", _body_cotangent, _cotangent_text),
    "order": ("/order", _body_order, _order_text),
    "invariance": ("/invariance", _base, _invariance_text),
    "induce": ("/induce", _base, _induce_text),
    "symbol": ("/symbol", _body_point, _symbol_text),
    "elliptic": ("/elliptic", _body_elliptic, _elliptic_text),
    "delta-construct": ("/delta-construct", _body_delta, _delta_text),
    "audit": ("/audit", _base, _audit_text),
}


def _global_flags(p: argparse.ArgumentParser, top: bool) -> None:
    d = {"default": argparse.SUPPRESS} if not top else {}
    p.add_argument("--input", metavar="FILE", help="problem file (JSON)", **({"default": None} if top else d))
    p.add_argument("--json", action="store_true", help="machine-readable output", **({"default": False} if top else d))
    p.add_argument("--seed", type=int, help="seed for randomized searches", **({"default": None} if top else d))
    p.add_argument("--order", choices=["grevlex", "grlex", "lex"], help="monomial order",
                   **({"default": None} if top else d))
    p.add_argument("--server", metavar="URL", help="send requests to a running service",
                   **({"default": None} if top else d))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ellop", description="Exact differential operators on affine varieties.")
    _global_flags(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {name: sub.add_parser(name) for name in COMMANDS}
    for p in subs.values():
        _global_flags(p, top=False)
    subs["nf"].add_argument("--poly", help="polynomial to reduce")
    for name in ("point", "cotangent", "symbol", "elliptic"):
        subs[name].add_argument("--point", help='comma-separated rational coordinates, e.g. "1,1/2"')
    subs["cotangent"].add_argument("--model", default="differential",
                                   choices=["differential", "classical", "rough", "algebraic", "kaehler"])
    subs["order"].add_argument("--op", help='operator text, e.g. "dX^4 + dY^4"')
    subs["order"].add_argument("--vars", help="comma-separated variable names (inferred if omitted)")
    subs["order"].add_argument("--bound", type=int, help="order to verify (default: structural order)")
    subs["elliptic"].add_argument("--all-points", action="store_true", help="every point of the problem file")
    subs["delta-construct"].add_argument("--mode", choices=["as-written", "balanced"])
    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _emit_error(err: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps({"error": err}, indent=2, sort_keys=True))
    else:
        where = err["location"] + (f", position {err['position']}" if err.get("position") is not None else "")
        print(f"error: {where}: {err['message']}", file=sys.stderr)


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK
    path, make_body, render = COMMANDS[args.command]
    try:
        body = make_body(args)
    except InputError as exc:
        _emit_error(exc.body, args.json)
        return EXIT_INPUT
    try:
        r = _post_remote(args.server, path, body) if args.server else _post_local(path, body)
    except httpx.HTTPError as exc:
        print(f"error: cannot reach {args.server}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if r.status_code in (400, 422):
        _emit_error(_error_from_response(r), args.json)
        return EXIT_INPUT
    if r.status_code != 200:
        print(f"error: service returned HTTP {r.status_code}: {r.text}", file=sys.stderr)
        return EXIT_INTERNAL
    data = r.json()
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print("\n".join(render(data)))
    return data.get("exit_code", EXIT_OK)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
