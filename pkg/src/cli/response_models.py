"""Pydantic response models for CLI reports.

Design Principles:
- Deterministic: the same input gives byte-identical JSON
- Exact: rationals are "p/q" strings, never floats
- Discriminated: every report carries a literal ``report`` field
"""

from fractions import Fraction
from typing import Literal, Optional, Sequence

from pydantic import BaseModel, Field

from ..lattice.discform import DiscElement, FiniteQuadraticForm


def frac(x: Fraction) -> str:
    """'p/q', or 'p' for integers."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def int_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[int(x) for x in row] for row in rows]


# =============================================================================
# SHARED PIECES
# =============================================================================

class DiscElementModel(BaseModel):
    """An element of a discriminant group."""

    coeffs: list[int] = Field(description="Coordinates in the generator basis")
    invariant_factors: list[int]
    rational_coords: list[str] = Field(description="Representative in L ⊗ Q")
    order: int
    q: str = Field(description="q̄ value in [0, 2)")
    negated: bool = Field(default=False, description="Lives in the (-1)-twisted form")

    @classmethod
    def from_element(cls, element: DiscElement) -> "DiscElementModel":
        return cls(
            coeffs=list(element.coeffs),
            invariant_factors=list(element.form.invariant_factors),
            rational_coords=[frac(x) for x in element.rational_coords],
            order=element.order,
            q=frac(element.q),
            negated=element.form.sign < 0,
        )


class DiscFormModel(BaseModel):
    invariant_factors: list[int]
    order: int
    generators: list[list[str]]
    q: list[str]
    pairing: list[list[str]]

    @classmethod
    def from_form(cls, form: FiniteQuadraticForm) -> "DiscFormModel":
        gens = form.generators
        return cls(
            invariant_factors=list(form.invariant_factors),
            order=form.order,
            generators=[[frac(x) for x in g] for g in gens],
            q=[frac(x) for x in form.q_values],
            pairing=[[frac(form.b(a, b)) for b in gens] for a in gens],
        )


class MukaiVectorModel(BaseModel):
    r: int
    E: list[int]
    s: int


class TorsorModel(BaseModel):
    d: int
    zeta_value: int
    order: int
    trivial: bool
    dual_divisor: Optional[list[int]] = None
    representative: Optional[DiscElementModel] = None


# =============================================================================
# LATTICE REPORTS
# =============================================================================

class LatticeInfoResponse(BaseModel):
    report: Literal["lat_info"] = "lat_info"
    label: Optional[str]
    rank: int
    gram: list[list[int]]
    det: int
    abs_det: int
    signature: list[int]
    unimodular: bool


class SnfResponse(BaseModel):
    report: Literal["lat_snf"] = "lat_snf"
    d: list[int]
    left: list[list[int]]
    right: list[list[int]]


class DiscResponse(BaseModel):
    report: Literal["lat_disc"] = "lat_disc"
    label: Optional[str]
    form: DiscFormModel
    trivial: bool


class SublatticeResponse(BaseModel):
    """Shared by complement and saturation reports."""

    report: Literal["lat_comp", "lat_sat"]
    input_basis: list[list[int]]
    basis: list[list[int]]
    rank: int
    gram: list[list[int]]
    index: int = Field(default=1, description="Index of the input in its saturation")
    degenerate: bool = Field(default=False, description="Input has a singular Gram matrix")
    notes: list[str] = Field(default_factory=list)


class DivisibilityResponse(BaseModel):
    report: Literal["lat_div"] = "lat_div"
    vector: list[int]
    divisibility: int
    primitive: bool
    square: int


# =============================================================================
# K3 REPORTS
# =============================================================================

class ModuliResponse(BaseModel):
    report: Literal["moduli"] = "moduli"
    vector: MukaiVectorModel
    v_square: int
    nonempty: Optional[bool]
    existence: str
    existence_reason: str
    dimension: Optional[int]
    half_dimension: Optional[int]
    kind_label: str
    div_v: int
    fine: bool
    obstruction_order: int
    ses_kernel_order: int
    cokernel_index: int
    caldararu_class: DiscElementModel
    transcendental_caldararu: DiscElementModel
    assumes_generic_polarisation: bool
    notes: list[str] = Field(default_factory=list)


class HilbertResponse(BaseModel):
    report: Literal["moduli_hilbert"] = "moduli_hilbert"
    vector: MukaiVectorModel
    n: int
    v_square: int
    div_v: int
    fine: bool
    birational: bool
    derived_equivalent: bool
    elliptic_witness: list[int]
    hilbert_vector: MukaiVectorModel
    existence: str
    dimension: Optional[int]
    notes: list[str] = Field(default_factory=list)


class K3LatticeResponse(BaseModel):
    report: Literal["moduli_k3"] = "moduli_k3"
    vector: MukaiVectorModel
    ns_M_gram: list[list[int]]
    det_ns_S: int
    det_ns_M: int
    div_v: int
    transcendental_index: int


class BirationalityModel(BaseModel):
    birational: bool
    gcd_d: int
    gcd_e: int
    order_d: int
    order_e: int
    classes_equal: bool
    orbit_equivalent: bool
    class_d: DiscElementModel
    class_e: DiscElementModel
    elliptic_witness: list[int]


class BMResponse(BaseModel):
    report: Literal["bm", "bm_birational"] = "bm"
    g: int
    div_H: int
    curve_assumption: str
    d: int
    v_d: MukaiVectorModel
    div_vd: int
    sha_kernel_order: int
    torsor: TorsorModel
    e: Optional[int] = None
    v_e: Optional[MukaiVectorModel] = None
    div_ve: Optional[int] = None
    torsor_equivalent: Optional[bool] = None
    obstruction_image_exponent: Optional[int] = None
    certificate: Optional[BirationalityModel] = None
    notes: list[str] = Field(default_factory=list)


class ShaResponse(BaseModel):
    report: Literal["bm_sha"] = "bm_sha"
    d: int
    div_H: int
    div_vd: int
    kernel_order: int
    generator: TorsorModel


class TwistResponse(BaseModel):
    report: Literal["bm_twist"] = "bm_twist"
    d: int
    e: int
    exponent_on_d: int
    modulus_d: int
    exponent_on_e: int
    modulus_e: int
    applicable: bool
    note: str


class ExtMukaiResponse(BaseModel):
    report: Literal["extmukai"] = "extmukai"
    g: int
    gram_M: list[list[int]]
    gram_Mprime: list[list[int]]
    disc_M: int
    disc_Mprime: int
    distinct: bool
    applicable: bool
    verdict: str
    signature_M: list[int]
    signature_Mprime: list[int]
    ns_Mprime_block: list[list[int]]
    delta_square: int
    delta_divisibility: int
    generator_dot_beta: int


# =============================================================================
# ORACLE REPORTS
# =============================================================================

class GlueResponse(BaseModel):
    report: Literal["verify_glue"] = "verify_glue"
    sublattice: list[list[int]]
    complement: list[list[int]]
    form_n: DiscFormModel
    form_t: DiscFormModel
    images: list[list[int]]
    orders_equal: bool
    anti_isometric: bool
    verified: bool


class CokernelResponse(BaseModel):
    report: Literal["verify_cokernel"] = "verify_cokernel"
    divisibility: int
    index: int
    witness: list[int]
    kernel_generator: list[int]
    vector: list[int]
    verified: bool


class SweepResponse(BaseModel):
    report: Literal["verify_glue_sweep", "verify_cokernel_sweep"]
    seed: int
    samples: int
    verified: int
    all_verified: bool
    rows: list[dict]


class ErrorDetail(BaseModel):
    code: str
    message: str


class ErrorResponse(BaseModel):
    report: Literal["error"] = "error"
    error: ErrorDetail


__all__ = [
    "frac",
    "int_rows",
    "DiscElementModel",
    "DiscFormModel",
    "MukaiVectorModel",
    "TorsorModel",
    "LatticeInfoResponse",
    "SnfResponse",
    "DiscResponse",
    "SublatticeResponse",
    "DivisibilityResponse",
    "ModuliResponse",
    "HilbertResponse",
    "K3LatticeResponse",
    "BirationalityModel",
    "BMResponse",
    "ShaResponse",
    "TwistResponse",
    "ExtMukaiResponse",
    "GlueResponse",
    "CokernelResponse",
    "SweepResponse",
    "ErrorDetail",
    "ErrorResponse",
]
