"""Problem files: the JSON input shared by the service and the CLI."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .affine import KPoint, PointNotOnVariety, QuotientAlgebra, kpoint, make_quotient
from .parsing import ParseError, parse_operator, parse_polynomial
from .polycore import Polynomial
from .weyl import DiffOperator

SCHEMA_VERSION = 1
DEFAULT_SEED = 20240601

Coordinate = Union[int, str]


class ProblemFile(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, alias="schema")
    variables: list[str]
    ideal: list[str] = Field(default_factory=list)
    operator: Optional[str] = None
    points: list[list[Coordinate]] = Field(default_factory=list)
    order: Optional[Literal["grevlex", "grlex", "lex"]] = None
    mode: Optional[Literal["as-written", "balanced"]] = None
    seed: Optional[int] = None

    @field_validator("schema_version")
    @classmethod
    def _known_schema(cls, v: int) -> int:
        if v != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {v}; expected {SCHEMA_VERSION}")
        return v

    @field_validator("variables")
    @classmethod
    def _distinct(cls, v: list[str]) -> list[str]:
        if not v:
            raise ValueError("at least one variable is required")
        if len(set(v)) != len(v):
            raise ValueError("variable names must be distinct")
        return v

    def canonical_json(self) -> str:
        return json.dumps(self.model_dump(by_alias=True), sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()


class ProblemError(ValueError):
    """Input rejected; ``location`` names the offending field."""

    def __init__(self, location: str, message: str, position: int | None = None):
        self.location = location
        self.message = message
        self.position = position
        where = f"{location}" + (f", position {position}" if position is not None else "")
        super().__init__(f"{where}: {message}")

    def to_json(self) -> dict:
        return {"location": self.location, "message": self.message, "position": self.position}


@dataclass(frozen=True)
class Problem:
    spec: ProblemFile
    algebra: QuotientAlgebra
    operator: DiffOperator | None
    points: tuple[KPoint, ...]

    @property
    def variables(self) -> tuple[str, ...]:
        return self.algebra.variables

    @property
    def seed(self) -> int:
        return DEFAULT_SEED if self.spec.seed is None else self.spec.seed

    @property
    def mode(self) -> str:
        return self.spec.mode or "as-written"


def parse_coordinate(value: Coordinate, location: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ProblemError(location, f"not a rational number: {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ProblemError(location, f"not a rational number: {value!r}") from None


def parse_problem_data(data: dict) -> ProblemFile:
    try:
        return ProblemFile.model_validate(data)
    except ValidationError as exc:
        err = exc.errors()[0]
        loc = ".".join(str(p) for p in err["loc"]) or "problem"
        raise ProblemError(loc, err["msg"]) from None


def load_problem(spec: ProblemFile | dict, order: str | None = None) -> Problem:
    """Parse every string in the file and validate the points against the ideal."""
    if isinstance(spec, dict):
        spec = parse_problem_data(spec)
    variables = tuple(spec.variables)
    gens = []
    for i, text in enumerate(spec.ideal):
        gens.append(_parse(parse_polynomial, text, variables, f"ideal[{i}]"))
    op = None
    if spec.operator is not None:
        op = _parse(parse_operator, spec.operator, variables, "operator")
    algebra = make_quotient(variables, gens, order or spec.order or "grevlex")
    points = []
    for i, raw in enumerate(spec.points):
        if len(raw) != len(variables):
            raise ProblemError(f"points[{i}]", f"expected {len(variables)} coordinates, got {len(raw)}")
        coords = [parse_coordinate(c, f"points[{i}][{j}]") for j, c in enumerate(raw)]
        try:
            points.append(kpoint(algebra, coords))
        except PointNotOnVariety as exc:
            raise ProblemError(f"points[{i}]", str(exc)) from None
    return Problem(spec, algebra, op, tuple(points))


def _parse(fn, text: str, variables, location: str):
    try:
        return fn(text, variables)
    except ParseError as exc:
        raise ProblemError(location, exc.message, exc.position) from None


def read_problem_file(path: str) -> ProblemFile:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ProblemError(path, f"cannot read problem file: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ProblemError(path, f"invalid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(data, dict):
        raise ProblemError(path, "top level must be a JSON object")
    return parse_problem_data(data)


def format_poly(p: Polynomial, algebra: QuotientAlgebra | None = None) -> str:
    if algebra is None:
        return str(p)
    from .polycore import render_polynomial

    return render_polynomial(p, algebra.order.key)
