"""Pydantic input schemas for the CLI.

Lattices are given as JSON in one of these shapes:

    {"gram": [[0, 1], [1, 0]], "label": "U"}
    {"standard": "E8-"}                     # U, U(k), E8, E8-, <m>, K3, Mukai, K3n
    {"standard": "K3n", "param": 2}
    {"sum": [<lattice>, <lattice>, ...]}
    {"rescale": {"of": <lattice>, "by": -1}}
    {"disc": "<4>"}                          # the rank-one lattice <m>

Models are {"ns_gram": [[...]], "ample": [...]}, Mukai vectors
{"r": 0, "E": [1], "s": 0} and Beauville-Mukai configs
{"ns_gram": [[...]], "H": [...]}. Every argument accepts either inline JSON
or a path to a JSON file.
"""

import json
from pathlib import Path
from typing import Any, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator

from ..k3.beauville_mukai import BMConfig
from ..k3.mukai import K3Model, MukaiVector
from ..lattice.intlat import IntegralLattice, direct_sum, rescale, standard


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


# =============================================================================
# LATTICES
# =============================================================================

class GramSpec(_Strict):
    gram: list[list[int]] = Field(description="Symmetric even Gram matrix")
    label: Optional[str] = None

    def build(self) -> IntegralLattice:
        return IntegralLattice(tuple(tuple(row) for row in self.gram), label=self.label)


class StandardSpec(_Strict):
    standard: str = Field(description="U, U(k), E8, E8-, <m>, K3, Mukai or K3n")
    param: Optional[int] = Field(default=None, description="k, m or n where needed")

    def build(self) -> IntegralLattice:
        return standard(self.standard, self.param)


class SumSpec(_Strict):
    sum: list["LatticeSpec"] = Field(min_length=1)

    def build(self) -> IntegralLattice:
        return direct_sum(*(part.build() for part in self.sum))


class RescaleBody(_Strict):
    of: "LatticeSpec"
    by: int

    def build(self) -> IntegralLattice:
        return rescale(self.of.build(), self.by)


class RescaleSpec(_Strict):
    rescale: RescaleBody

    def build(self) -> IntegralLattice:
        return self.rescale.build()


class DiscSpec(_Strict):
    disc: Union[str, int] = Field(description="<m> or m")

    @field_validator("disc")
    @classmethod
    def parse_m(cls, value: Union[str, int]) -> int:
        if isinstance(value, int):
            return value
        return int(value.strip().lstrip("<⟨").rstrip(">⟩"))

    def build(self) -> IntegralLattice:
        return standard("<m>", self.disc)


LatticeSpec = Union[GramSpec, StandardSpec, SumSpec, RescaleSpec, DiscSpec]
SumSpec.model_rebuild()
RescaleBody.model_rebuild()
RescaleSpec.model_rebuild()

_lattice_adapter = TypeAdapter(LatticeSpec)
_vector_adapter = TypeAdapter(list[int])
_matrix_adapter = TypeAdapter(list[list[int]])


# =============================================================================
# K3 INPUTS
# =============================================================================

class K3ModelSpec(_Strict):
    ns_gram: list[list[int]] = Field(description="Néron-Severi Gram matrix")
    ample: Optional[list[int]] = Field(default=None, description="Ample class hint")
    label: Optional[str] = None

    def build(self) -> K3Model:
        ns = IntegralLattice(tuple(tuple(row) for row in self.ns_gram), label=self.label or "NS")
        hint = tuple(self.ample) if self.ample is not None else None
        return K3Model(ns, ample_hint=hint)


class MukaiVectorSpec(_Strict):
    r: int
    E: list[int]
    s: int

    def build(self) -> MukaiVector:
        return MukaiVector(self.r, tuple(self.E), self.s)


class BMConfigSpec(_Strict):
    ns_gram: list[list[int]]
    H: list[int] = Field(description="Primitive curve class in NS coordinates")
    ample: Optional[list[int]] = None
    label: Optional[str] = None

    def build(self) -> BMConfig:
        model = K3ModelSpec(ns_gram=self.ns_gram, ample=self.ample, label=self.label).build()
        return BMConfig(model, tuple(self.H))


# =============================================================================
# LOADING
# =============================================================================

class MissingInputError(ValueError):
    """A flag the command needs was not given; reported as a parse error."""

    code = "missing_input"


def require_inputs(**values: Any) -> None:
    """Raise MissingInputError naming every flag whose value is None."""
    missing = [f"--{name.replace('_', '-')}" for name, value in values.items() if value is None]
    if missing:
        raise MissingInputError(f"missing required input: {', '.join(missing)}")


def load_json_arg(value: str) -> Any:
    """Inline JSON if it looks like JSON, otherwise the contents of a file."""
    text = value.strip()
    if text[:1] in "{[":
        return json.loads(text)
    return json.loads(Path(value).read_text(encoding="utf-8"))


def parse_lattice(value: str) -> IntegralLattice:
    return _lattice_adapter.validate_python(load_json_arg(value)).build()


def parse_vector(value: str) -> list[int]:
    return _vector_adapter.validate_python(load_json_arg(value))


def parse_matrix(value: str) -> list[list[int]]:
    return _matrix_adapter.validate_python(load_json_arg(value))


def parse_model(value: str) -> K3Model:
    return K3ModelSpec.model_validate(load_json_arg(value)).build()


def parse_mukai_vector(value: str) -> MukaiVector:
    return MukaiVectorSpec.model_validate(load_json_arg(value)).build()


def parse_bm_config(value: str) -> BMConfig:
    return BMConfigSpec.model_validate(load_json_arg(value)).build()


__all__ = [
    "GramSpec",
    "StandardSpec",
    "SumSpec",
    "RescaleSpec",
    "DiscSpec",
    "LatticeSpec",
    "K3ModelSpec",
    "MukaiVectorSpec",
    "BMConfigSpec",
    "MissingInputError",
    "require_inputs",
    "load_json_arg",
    "parse_lattice",
    "parse_vector",
    "parse_matrix",
    "parse_model",
    "parse_mukai_vector",
    "parse_bm_config",
]
