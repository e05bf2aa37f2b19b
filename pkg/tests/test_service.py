import asyncio

import httpx
import pytest

from ellop.service.app import app

from conftest import fixture_data


def call(method, path, body=None):
    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://test") as client:
            return await client.request(method, path, json=body)

    return asyncio.run(go())


def post(path, **body):
    return call("POST", path, body)


@pytest.fixture
def cusp():
    return fixture_data("cusp.json")


def test_health():
    assert call("GET", "/health").json()["status"] == "ok"


def test_groebner(cusp):
    r = post("/groebner", problem=cusp)
    assert r.status_code == 200 and r.json()["basis"] == ["Y^3 - X^2"]
    lex = post("/groebner", problem=cusp, order="lex").json()
    assert lex["order"] == "lex" and lex["basis"] == ["X^2 - Y^3"]


def test_normal_form(cusp):
    r = post("/nf", problem=cusp, poly="Y^4 + X").json()
    assert r["normal_form"] == "X^2*Y + X" and not r["in_ideal"]
    assert post("/nf", problem=cusp, poly="X^2*Y - Y^4").json()["in_ideal"]


def test_point(cusp):
    assert post("/point", problem=cusp, point="8,4").json()["valid"]
    bad = post("/point", problem=cusp, point="1,2").json()
    assert not bad["valid"] and bad["value"] == "7" and bad["exit_code"] == 3


@pytest.mark.parametrize("model", ["differential", "classical", "rough", "algebraic", "kaehler"])
def test_cotangent_models_agree(cusp, model):
    r = post("/cotangent", problem=cusp, point="1,1", model=model).json()
    assert r["dim"] == 1 and r["ambient_dim"] == 2
    assert r["differentials"] == {"X": ["0", "3/2"], "Y": ["0", "1"]}


def test_order():
    r = post("/order", operator="dX^4 + X*dY").json()
    assert r["order"] == 4 and r["verified"] and r["variables"] == ["X", "Y"]
    r = post("/order", operator="dX^2", variables=["X"], bound=1).json()
    assert not r["verified"] and r["exit_code"] == 3


def test_invariance_and_induce(cusp):
    r = post("/invariance", problem=cusp).json()
    assert not r["holds"] and r["exit_code"] == 3
    assert r["witness"] == "X^4*Y^3 - X^6" and r["residue"] == "-336*X^2"
    assert r["failures"][0]["witness"] == r["witness"]
    r = post("/induce", problem=fixture_data("cusp_vector_field.json")).json()
    assert r["induced"] and r["order"] == 1


def test_symbol_and_elliptic():
    vf = fixture_data("cusp_vector_field.json")
    r = post("/symbol", problem=vf, point="1,1").json()
    assert r["degree"] == 1 and r["form"] == "3*xi1 + 2*xi2"
    r = post("/elliptic", problem=vf).json()
    assert r["exit_code"] == 3 and all(x["verdict"]["status"] == "NotElliptic" for x in r["results"])
    r = post("/elliptic", problem=fixture_data("laplace.json"), point="0,0").json()
    assert r["results"][0]["summary"] == "Elliptic (definite quadratic form)" and r["exit_code"] == 0


def test_delta_construct(cusp):
    r = post("/delta-construct", problem=cusp).json()
    assert r["operator"] == "dX^4 + dY^4" and r["annihilates_generators"]
    r = post("/delta-construct", problem=fixture_data("parabola_as_written.json")).json()
    assert r["operator"] == "dX^4 + dY^2" and r["exponents"] == [4, 2]


def test_audit(cusp):
    r = post("/audit", problem=cusp, seed=1).json()
    assert r["exit_code"] == 3 and r["discrepancies"]
    assert r == post("/audit", problem=cusp, seed=1).json()


def test_input_errors(cusp):
    r = post("/nf", problem=cusp, poly="X^")
    assert r.status_code == 400 and r.json()["error"]["location"] == "poly"
    assert r.json()["error"]["position"] == 2
    r = post("/cotangent", problem=cusp, point="1,2")
    assert r.status_code == 400 and r.json()["error"]["location"] == "point"
    cusp["schema"] = 2
    assert post("/groebner", problem=cusp).status_code in (400, 422)
    assert post("/groebner", problem={"variables": ["X"]}, extra=1).status_code == 422
    assert post("/cotangent", problem=fixture_data("laplace.json"), point="0,0", model="bogus").status_code == 422
