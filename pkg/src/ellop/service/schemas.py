"""Request and response models of the HTTP service."""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..problem import ProblemFile

OrderName = Literal["grevlex", "grlex", "lex"]
ModelName = Literal["differential", "classical", "rough", "algebraic", "kaehler"]


class Request(BaseModel):
    model_config = ConfigDict(extra="forbid")

    problem: ProblemFile
    order: Optional[OrderName] = None
    seed: Optional[int] = None


class NormalFormRequest(Request):
    poly: str


class PointRequest(Request):
    point: str


class CotangentRequest(PointRequest):
    model: ModelName = "differential"


class OrderRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    operator: str
    variables: Optional[list[str]] = None
    bound: Optional[int] = None


class EllipticRequest(Request):
    point: Optional[str] = None
    all_points: bool = False


class DeltaRequest(Request):
    mode: Optional[Literal["as-written", "balanced"]] = None


class ErrorBody(BaseModel):
    location: str
    message: str
    position: Optional[int] = None


class GroebnerResponse(BaseModel):
    order: OrderName
    variables: list[str]
    generators: list[str]
    basis: list[str]
    exit_code: int = 0


class NormalFormResponse(BaseModel):
    poly: str
    normal_form: str
    in_ideal: bool
    exit_code: int = 0


class PointResponse(BaseModel):
    point: list[str]
    valid: bool
    generator: Optional[str] = None
    value: Optional[str] = None
    exit_code: int


class CotangentResponse(BaseModel):
    point: list[str]
    model: ModelName
    ambient_dim: int
    dim: int
    relation_rows: list[list[str]]
    reduced_relations: list[list[str]]
    differentials: dict[str, list[str]]
    tangent_basis: list[list[str]]
    exit_code: int = 0


class OrderResponse(BaseModel):
    operator: str
    variables: list[str]
    order: int
    verified: bool
    exit_code: int


class InvarianceFailureBody(BaseModel):
    multiplier: list[int]
    generator: str
    witness: str
    residue: str


class InvarianceResponse(BaseModel):
    operator: str
    holds: bool
    products_checked: int
    witness: Optional[str] = None
    residue: Optional[str] = None
    failures: list[InvarianceFailureBody] = Field(default_factory=list)
    exit_code: int


class InduceResponse(BaseModel):
    operator: str
    induced: bool
    order: Optional[int] = None
    witness: Optional[str] = None
    residue: Optional[str] = None
    exit_code: int


class SymbolResponse(BaseModel):
    operator: str
    point: list[str]
    degree: int
    form: str
    classical: str
    exit_code: int = 0


class VerdictBody(BaseModel):
    status: str
    method: str
    witness: Optional[dict[str, Any]] = None
    reason: str = ""


class PointVerdictBody(BaseModel):
    point: list[str]
    symbol: str
    order_at_point: bool
    verdict: VerdictBody
    summary: str


class EllipticResponse(BaseModel):
    operator: str
    results: list[PointVerdictBody]
    exit_code: int


class DeltaResponse(BaseModel):
    mode: str
    operator: str
    exponents: list[int]
    annihilates_generators: bool
    exit_code: int = 0
