"""JSON schemas for everything the CLI reads or writes."""

from __future__ import annotations

import json
import logging
from collections.abc import Mapping
from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import (
    AfterValidator,
    BaseModel,
    ConfigDict,
    Field,
    TypeAdapter,
    ValidationError,
    model_validator,
)

from .algebra.star_algebra import StarAlgebra
from .algebroid.mmha import MMHA
from .errors import InputError
from .linear import LinMap, Scalar, Vec
from .linear.maps import AntiLinMap
from .linear.scalars import format_scalar, parse_scalar
from .reporting import VerificationReport

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def _exact_scalar(text: str) -> str:
    try:
        parse_scalar(text)
    except InputError as exc:
        raise ValueError(str(exc)) from exc
    return text


ScalarText = Annotated[str, AfterValidator(_exact_scalar)]
SparseVector = list[tuple[int, ScalarText]]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GroupSpec(StrictModel):
    """A finite group as an explicit multiplication table."""

    schema_version: Literal[1] = SCHEMA_VERSION
    kind: Literal["group"] = "group"
    name: str = Field(min_length=1)
    elements: list[str] | None = None
    identity: int = Field(ge=0)
    inverse: list[int]
    # mult_table[g][h] is the index of g·h.
    mult_table: list[list[int]] = Field(min_length=1)

    @model_validator(mode="after")
    def _shape(self) -> GroupSpec:
        order = len(self.mult_table)
        for g, row in enumerate(self.mult_table):
            if len(row) != order:
                raise ValueError(f"mult_table row {g} has {len(row)} entries, expected {order}")
            for h, value in enumerate(row):
                if not 0 <= value < order:
                    raise ValueError(f"mult_table[{g}][{h}] = {value} is not an element index")
        if self.identity >= order:
            raise ValueError(f"identity {self.identity} is not an element index")
        if len(self.inverse) != order or any(not 0 <= v < order for v in self.inverse):
            raise ValueError("inverse must list one element index per element")
        if self.elements is not None and len(self.elements) != order:
            raise ValueError(f"elements has {len(self.elements)} labels for order {order}")
        return self


# A bundled catalog group by name, or an inline table.
GroupRef = str | GroupSpec


class ActionSpec(StrictModel):
    """A left action ``g·x`` of a group on a finite set, with optional invariant weights."""

    schema_version: Literal[1] = SCHEMA_VERSION
    kind: Literal["action"] = "action"
    name: str = Field(min_length=1)
    group: GroupRef
    points: list[str] = Field(min_length=1)
    # action_table[g][x] is the index of g·x.
    action_table: list[list[int]] = Field(min_length=1)
    weights: list[ScalarText] | None = None

    @model_validator(mode="after")
    def _shape(self) -> ActionSpec:
        size = len(self.points)
        for g, row in enumerate(self.action_table):
            if len(row) != size:
                raise ValueError(f"action_table row {g} has {len(row)} entries, expected {size}")
            for x, value in enumerate(row):
                if not 0 <= value < size:
                    raise ValueError(f"action_table[{g}][{x}] = {value} is not a point index")
        if self.weights is not None and len(self.weights) != size:
            raise ValueError(f"weights has {len(self.weights)} entries for {size} points")
        return self


class BundleSpec(StrictModel):
    """A group algebra graded by a central quotient, with lifts used for the ρ family."""

    schema_version: Literal[1] = SCHEMA_VERSION
    kind: Literal["bundle"] = "bundle"
    name: str = Field(min_length=1)
    extension: GroupRef
    quotient: GroupRef
    projection: list[int] = Field(min_length=1)
    lifts: list[int] = Field(min_length=1)
    # ν on the degree-e part, listed in increasing element order.
    state: list[ScalarText] | None = None


class QuotientSpec(StrictModel):
    """A subgroup ``H ≤ G`` for the quotient-type coideal ``K(H\\G)``."""

    schema_version: Literal[1] = SCHEMA_VERSION
    kind: Literal["quotient"] = "quotient"
    name: str = Field(min_length=1)
    group: GroupRef
    subgroup: list[int] = Field(min_length=1)


InputDocument = Annotated[
    GroupSpec | ActionSpec | BundleSpec | QuotientSpec, Field(discriminator="kind")
]
_INPUT_ADAPTER: TypeAdapter[Any] = TypeAdapter(InputDocument)


class LinMapDump(StrictModel):
    rows: int = Field(ge=0)
    cols: int = Field(ge=0)
    columns: list[SparseVector]


class ProductEntry(StrictModel):
    i: int
    j: int
    value: SparseVector


class StarAlgebraDump(StrictModel):
    schema_version: Literal[1] = SCHEMA_VERSION
    kind: Literal["star_algebra"] = "star_algebra"
    label: str
    dim: int = Field(ge=1)
    unit: SparseVector
    # Only non-zero products are listed.
    products: list[ProductEntry]
    star: list[SparseVector]


class MMHADump(StrictModel):
    schema_version: Literal[1] = SCHEMA_VERSION
    kind: Literal["mmha"] = "mmha"
    label: str
    total: StarAlgebraDump
    base_b: StarAlgebraDump
    base_c: StarAlgebraDump
    iota_b: LinMapDump
    iota_c: LinMapDump
    t_b: LinMapDump
    t_c: LinMapDump
    delta_b: LinMapDump
    delta_c: LinMapDump
    antipode: LinMapDump
    eps_b: LinMapDump
    eps_c: LinMapDump
    mu_b: SparseVector
    mu_c: SparseVector
    partial_psi: LinMapDump
    partial_phi: LinMapDump


class DeltaEntry(StrictModel):
    element: int
    first: int
    second: int
    value: ScalarText


class ClosedFormTables(StrictModel):
    """Expected structure maps of a transformation groupoid, evaluated from closed forms.

    Arrow ``(g, x)`` sits at index ``g·points + x``; all maps are listed per arrow column.
    """

    schema_version: Literal[1] = SCHEMA_VERSION
    kind: Literal["closed_forms"] = "closed_forms"
    instance: str
    arrows: int = Field(ge=1)
    points: int = Field(ge=1)
    composable: list[tuple[int, int]]
    # Non-zero values of Δ_B on composable pairs only.
    delta_b: list[DeltaEntry]
    antipode: list[SparseVector]
    counit_b: list[SparseVector]
    counit_c: list[SparseVector]
    partial_psi: list[SparseVector]
    partial_phi: list[SparseVector]
    mu_b: SparseVector


class CatalogListingEntry(StrictModel):
    name: str
    description: str


class CatalogListing(StrictModel):
    schema_version: Literal[1] = SCHEMA_VERSION
    kind: Literal["catalog"] = "catalog"
    instances: list[CatalogListingEntry]


class ReportDocument(StrictModel):
    """What every CLI command writes: the reports of one run and the overall verdict."""

    schema_version: Literal[1] = SCHEMA_VERSION
    kind: Literal["report"] = "report"
    command: str
    instance: str
    passed: bool
    reports: list[VerificationReport] = Field(default_factory=list)


def dump_vector(v: Mapping[int, Scalar]) -> list[tuple[int, str]]:
    return [(k, format_scalar(v[k])) for k in sorted(v) if v[k]]


def load_vector(entries: list[tuple[int, str]]) -> Vec:
    out: Vec = {}
    for index, text in entries:
        value = parse_scalar(text)
        if value:
            out[index] = value
    return out


def dump_linmap(m: LinMap) -> LinMapDump:
    return LinMapDump(
        rows=m.rows, cols=m.cols, columns=[dump_vector(column) for column in m.columns]
    )


def load_linmap(d: LinMapDump) -> LinMap:
    if len(d.columns) != d.cols:
        raise InputError(f"{len(d.columns)} columns listed for cols={d.cols}", location="columns")
    return LinMap(d.rows, d.cols, tuple(load_vector(column) for column in d.columns))


def dump_star_algebra(a: StarAlgebra) -> StarAlgebraDump:
    products = [
        ProductEntry(i=i, j=j, value=dump_vector(a.mult[i][j]))
        for i in range(a.dim)
        for j in range(a.dim)
        if a.mult[i][j]
    ]
    return StarAlgebraDump(
        label=a.label,
        dim=a.dim,
        unit=dump_vector(a.unit),
        products=products,
        star=[dump_vector(column) for column in a.star.underlying.columns],
    )


def load_star_algebra(d: StarAlgebraDump) -> StarAlgebra:
    table: dict[tuple[int, int], Vec] = {(p.i, p.j): load_vector(p.value) for p in d.products}
    mult = tuple(tuple(table.get((i, j), {}) for j in range(d.dim)) for i in range(d.dim))
    star = LinMap(d.dim, d.dim, tuple(load_vector(column) for column in d.star))
    return StarAlgebra(d.dim, mult, load_vector(d.unit), AntiLinMap(star), d.label)


def dump_mmha(a: MMHA) -> MMHADump:
    return MMHADump(
        label=a.label,
        total=dump_star_algebra(a.total),
        base_b=dump_star_algebra(a.base_b),
        base_c=dump_star_algebra(a.base_c),
        iota_b=dump_linmap(a.iota_b.map),
        iota_c=dump_linmap(a.iota_c.map),
        t_b=dump_linmap(a.t_b),
        t_c=dump_linmap(a.t_c),
        delta_b=dump_linmap(a.delta_b),
        delta_c=dump_linmap(a.delta_c),
        antipode=dump_linmap(a.antipode),
        eps_b=dump_linmap(a.eps_b),
        eps_c=dump_linmap(a.eps_c),
        mu_b=dump_vector(a.mu_b.covector),
        mu_c=dump_vector(a.mu_c.covector),
        partial_psi=dump_linmap(a.partial_psi),
        partial_phi=dump_linmap(a.partial_phi),
    )


def _location(error: Mapping[str, Any]) -> str:
    return ".".join(str(part) for part in error.get("loc", ())) or "<root>"


def _input_error(exc: ValidationError, source: str) -> InputError:
    first = exc.errors()[0]
    count = exc.error_count()
    more = f" (+{count - 1} more)" if count > 1 else ""
    return InputError(f"{first['msg']}{more}", location=f"{source}:{_location(first)}")


def validate_document(payload: Any, *, source: str = "<input>") -> Any:
    """Validate a parsed JSON payload as one of the input documents."""
    try:
        return _INPUT_ADAPTER.validate_python(payload)
    except ValidationError as exc:
        raise _input_error(exc, source) from exc


def validate_model(model: type[StrictModel], payload: Any, *, source: str = "<input>") -> Any:
    try:
        return model.model_validate(payload)
    except ValidationError as exc:
        raise _input_error(exc, source) from exc


def read_json(path: Path) -> Any:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", location=str(path)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, location=f"{path}:{exc.lineno}:{exc.colno}") from exc


def read_document(path: Path) -> Any:
    document = validate_document(read_json(path), source=str(path))
    logger.info("read_document event=loaded path=%s kind=%s", path, document.kind)
    return document


def to_json(model: BaseModel) -> str:
    """Stable JSON text: declared field order, two-space indent, trailing newline."""
    return model.model_dump_json(indent=2) + "\n"


def write_json(path: Path, model: BaseModel) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json(model), encoding="utf-8")
    logger.info("write_json event=written path=%s", path)
