"""Mukai vectors and moduli spaces of sheaves on K3 surfaces.

The algebraic Mukai lattice N(S) = H⁰ ⊕ NS(S) ⊕ H⁴ is built from a
Néron-Severi Gram matrix with coordinates ordered (r, E..., s) and pairing

    (r, E, s) . (r', E', s') = E.E' - r s' - s r'

On top of it this module reports, for a Mukai vector v:
- whether the existence criterion applies and the dimension v² + 2
- div(v), fineness and the order of the obstruction class
- the Căldăraru class v/div(v) in A_{N(S)} and its transcendental twin
- the Brauer SES kernel order, via the cokernel oracle on a unimodular model

Usage:
    from src.k3.mukai import K3Model, MukaiVector, moduli_report

    model = K3Model.rank_one(4)
    report = moduli_report(model, MukaiVector(0, (1,), 0))
    report.obstruction_order  # 4
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from ..lattice.algebra import engine
from ..lattice.discform import (
    DiscElement,
    FiniteQuadraticForm,
    discriminant_form,
    element_of,
    negate_form,
)
from ..lattice.errors import (
    DimensionMismatchError,
    InconsistencyError,
    InvalidGramError,
    NotPrimitiveError,
    PreconditionError,
    WitnessError,
)
from ..lattice.intlat import (
    IntegralLattice,
    Sublattice,
    divisibility,
    orthogonal_complement,
    signature,
    standard,
)
from ..lattice.normal_form import content, snf, solve_integer, mat_vec
from ..lattice.oracles import cross_check_model, transcendental_cokernel
from ..utils.logger import get_logger

logger = get_logger(__name__)

HYPERBOLIC_GRAM = ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))


# =============================================================================
# MODELS AND VECTORS
# =============================================================================

@dataclass(frozen=True)
class K3Model:
    """Algebraic data of a K3 surface: NS(S) and an optional ample class."""

    ns: IntegralLattice
    ample_hint: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        positive, negative = signature(self.ns)
        if positive != 1:
            raise InvalidGramError(
                f"Néron-Severi lattice must be hyperbolic, got signature ({positive}, {negative})"
            )
        if self.ample_hint is not None:
            hint = tuple(int(x) for x in self.ample_hint)
            object.__setattr__(self, "ample_hint", hint)
            if len(hint) != self.ns.rank:
                raise DimensionMismatchError("ample hint does not match the rank of NS")
            if self.ns.square(hint) <= 0:
                raise PreconditionError("ample hint must have positive square")

    @classmethod
    def rank_one(cls, h_square: int) -> "K3Model":
        """Picard rank one: NS = <h_square> with the generator as ample class."""
        return cls(standard("<m>", h_square), ample_hint=(1,))

    @property
    def picard_rank(self) -> int:
        return self.ns.rank


@dataclass(frozen=True)
class MukaiVector:
    """v = (r, E, s) with E in NS coordinates."""

    r: int
    E: tuple[int, ...]
    s: int

    def __post_init__(self):
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "E", tuple(int(x) for x in self.E))
        object.__setattr__(self, "s", int(self.s))

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "MukaiVector":
        coords = list(coords)
        if len(coords) < 2:
            raise DimensionMismatchError("a Mukai vector needs at least the r and s coordinates")
        return cls(coords[0], tuple(coords[1:-1]), coords[-1])

    @property
    def coords(self) -> tuple[int, ...]:
        return (self.r, *self.E, self.s)

    @property
    def is_primitive(self) -> bool:
        return content(self.coords) == 1

    def __neg__(self) -> "MukaiVector":
        return MukaiVector(-self.r, tuple(-x for x in self.E), -self.s)

    def __str__(self) -> str:
        return f"({self.r}, {list(self.E)}, {self.s})"


class ModuliKind(str, Enum):
    """Outcome of the existence criterion."""

    EMPTY = "empty"
    POINT = "point"
    HYPERKAEHLER = "hyperkaehler"
    NOT_COVERED = "not_covered"

    @property
    def display_name(self) -> str:
        names = {
            ModuliKind.EMPTY: "Empty",
            ModuliKind.POINT: "Point",
            ModuliKind.HYPERKAEHLER: "Hyperkähler",
            ModuliKind.NOT_COVERED: "Not covered",
        }
        return names[self]


@dataclass
class ModuliExistence:
    kind: ModuliKind
    dimension: Optional[int]
    reason: str

    @property
    def nonempty(self) -> Optional[bool]:
        """True/False when decided, None when the criterion does not apply."""
        if self.kind is ModuliKind.NOT_COVERED:
            return None
        return self.kind is not ModuliKind.EMPTY


@dataclass
class ModuliReport:
    """Everything the lattice data says about M_H(v)."""

    vector: MukaiVector
    v_square: int
    existence: ModuliExistence
    dimension: Optional[int]
    div_v: int
    fine: bool
    obstruction_order: int
    caldararu_class: DiscElement
    transcendental_caldararu: DiscElement
    ses_kernel_order: int
    cokernel_index: int
    kind_label: str
    half_dimension: Optional[int]
    assumes_generic_polarisation: bool = True
    notes: list[str] = field(default_factory=list)

    @property
    def nonempty(self) -> Optional[bool]:
        return self.existence.nonempty


@dataclass
class K3ModuliLattice:
    """NS(M) = (v⊥ ∩ N(S)) / Zv for an isotropic Mukai vector."""

    ns_M: IntegralLattice
    div_v: int
    transcendental_index: int       # [T(M) : T(S)]
    det_ns_S: int
    det_ns_M: int


# =============================================================================
# N(S) AND BASIC INVARIANTS
# =============================================================================

@lru_cache(maxsize=64)
def _extended_ns(ns: IntegralLattice) -> IntegralLattice:
    rho = ns.rank
    n = rho + 2
    gram = [[0] * n for _ in range(n)]
    for i in range(rho):
        for j in range(rho):
            gram[i + 1][j + 1] = ns.gram[i][j]
    gram[0][n - 1] = gram[n - 1][0] = -1
    label = f"N({ns.label})" if ns.label else "N(S)"
    return IntegralLattice(tuple(tuple(row) for row in gram), label=label)


def extended_ns(model: K3Model) -> IntegralLattice:
    """N(S) in coordinates (r, E..., s)."""
    return _extended_ns(model.ns)


@lru_cache(maxsize=64)
def _form(lattice: IntegralLattice) -> FiniteQuadraticForm:
    return discriminant_form(lattice)


@lru_cache(maxsize=64)
def _oracle_model(lattice: IntegralLattice) -> tuple[IntegralLattice, Sublattice]:
    return cross_check_model(lattice)


def _check_shape(model: K3Model, v: MukaiVector) -> None:
    if len(v.E) != model.picard_rank:
        raise DimensionMismatchError(
            f"Mukai vector has {len(v.E)} NS coordinates, NS has rank {model.picard_rank}"
        )


def _require_primitive(v: MukaiVector) -> None:
    if not v.is_primitive:
        raise NotPrimitiveError("Mukai vector must be primitive")


def mukai_square(model: K3Model, v: MukaiVector) -> int:
    """v² = E² - 2rs."""
    _check_shape(model, v)
    return model.ns.square(v.E) - 2 * v.r * v.s


def mukai_divisibility(model: K3Model, v: MukaiVector) -> int:
    """div(v) in N(S)."""
    _check_shape(model, v)
    return divisibility(extended_ns(model), v.coords)


def line_bundle_vector(model: K3Model, D: Sequence[int]) -> MukaiVector:
    """Mukai vector (1, D, D²/2 + 1) of the line bundle O(D)."""
    D = tuple(int(x) for x in D)
    if len(D) != model.picard_rank:
        raise DimensionMismatchError("divisor does not match the rank of NS")
    return MukaiVector(1, D, model.ns.square(D) // 2 + 1)


# =============================================================================
# EXISTENCE AND REPORTS
# =============================================================================

def moduli_exists(model: K3Model, v: MukaiVector) -> ModuliExistence:
    """Existence and dimension of M_H(v) for primitive v.

    Positive rank and skyscraper-type vectors are always covered. For r = 0
    the class E must be effective, which is approximated by E.A > 0 for the
    ample hint A; without a hint the case is reported as not covered.
    """
    _check_shape(model, v)
    _require_primitive(v)
    square = mukai_square(model, v)
    if square < -2:
        return ModuliExistence(ModuliKind.EMPTY, None, "v² < -2")

    if v.r > 0:
        reason = "positive rank"
    elif v.r == 0 and any(v.E):
        if model.ample_hint is None:
            return ModuliExistence(
                ModuliKind.NOT_COVERED, None, "effectivity of E is undecidable without an ample hint"
            )
        if model.ns.pair(v.E, model.ample_hint) <= 0:
            return ModuliExistence(
                ModuliKind.NOT_COVERED, None, "E is not positive on the ample hint"
            )
        reason = "rank zero with E positive on the ample hint"
    elif v.r == 0 and v.s > 0:
        reason = "r = E = 0 with s > 0"
    else:
        return ModuliExistence(ModuliKind.NOT_COVERED, None, "negative rank or non-positive s")

    dimension = square + 2
    kind = ModuliKind.POINT if dimension == 0 else ModuliKind.HYPERKAEHLER
    return ModuliExistence(kind, dimension, reason)


def caldararu_class(model: K3Model, v: MukaiVector) -> DiscElement:
    """Class of v/div(v) in A_{N(S)}; its order is div(v)."""
    _check_shape(model, v)
    _require_primitive(v)
    d = mukai_divisibility(model, v)
    return element_of(_form(extended_ns(model)), [Fraction(x, d) for x in v.coords])


def _kind_label(square: int) -> str:
    if square < -2:
        return "empty"
    if square == -2:
        return "point"
    if square == 0:
        return "K3 surface"
    return "hyperkähler of K3^[n]-type"


def moduli_report(model: K3Model, v: MukaiVector) -> ModuliReport:
    """Full verdict for M_H(v).

    div(v) is computed three ways: the gcd of Gram pairings, the order of
    the Căldăraru class, and the cokernel index on a unimodular model of
    N(S). Any disagreement raises InconsistencyError.
    """
    existence = moduli_exists(model, v)
    square = mukai_square(model, v)
    n_s = extended_ns(model)
    div_v = mukai_divisibility(model, v)

    alpha = caldararu_class(model, v)
    omega = DiscElement(alpha.coeffs, negate_form(alpha.form))

    ambient, embedded = _oracle_model(n_s)
    cokernel = transcendental_cokernel(ambient, embedded, v.coords)

    if not (div_v == alpha.order == cokernel.index):
        logger.error(
            "div(v) paths disagree for %s: gcd=%d class order=%d cokernel=%d",
            v, div_v, alpha.order, cokernel.index,
        )
        raise InconsistencyError("divisibility paths disagree")

    notes = ["polarisation assumed v-generic"]
    if square < 0:
        notes.append("obstruction order is only meaningful for v² >= 0")
    elif square == 0:
        notes.append("moduli space is a K3 surface; Brauer class formula applied as for v² >= 2")
    if existence.kind is ModuliKind.NOT_COVERED:
        notes.append(existence.reason)

    dimension = square + 2 if square >= -2 else None
    return ModuliReport(
        vector=v,
        v_square=square,
        existence=existence,
        dimension=dimension,
        div_v=div_v,
        fine=div_v == 1,
        obstruction_order=alpha.order,
        caldararu_class=alpha,
        transcendental_caldararu=omega,
        ses_kernel_order=cokernel.index,
        cokernel_index=cokernel.index,
        kind_label=_kind_label(square),
        half_dimension=dimension // 2 if dimension is not None else None,
        notes=notes,
    )


# =============================================================================
# ORBITS AND NS OF THE MODULI SPACE
# =============================================================================

def verify_hyperbolic_witness(lattice: IntegralLattice, witness: Sequence[Sequence[int]]) -> None:
    """Check that the four vectors span U ⊕ U (Gram exactly U ⊕ U)."""
    rows = [tuple(int(x) for x in w) for w in witness]
    if len(rows) != 4 or any(len(w) != lattice.rank for w in rows):
        raise WitnessError("need U⊕U sublattice")
    gram = tuple(tuple(lattice.pair(a, b) for b in rows) for a in rows)
    if gram != HYPERBOLIC_GRAM:
        raise WitnessError("need U⊕U sublattice")


def orbit_equivalent(
    lattice: IntegralLattice,
    v: Sequence[int],
    u: Sequence[int],
    hyperbolic_witness: Sequence[Sequence[int]],
) -> bool:
    """Whether an isometry acting trivially on A_L sends v to u.

    With two orthogonal hyperbolic planes in L this holds exactly when
    v² = u² and v/div(v), u/div(u) have the same class in A_L.
    """
    verify_hyperbolic_witness(lattice, hyperbolic_witness)
    v = [int(x) for x in v]
    u = [int(x) for x in u]
    for name, x in (("v", v), ("u", u)):
        if len(x) != lattice.rank:
            raise DimensionMismatchError(f"{name} does not match the lattice rank")
        if content(x) != 1:
            raise NotPrimitiveError(f"{name} must be primitive")
    if lattice.square(v) != lattice.square(u):
        return False
    form = _form(lattice)
    dv = divisibility(lattice, v)
    du = divisibility(lattice, u)
    return element_of(form, [Fraction(x, dv) for x in v]) == element_of(
        form, [Fraction(x, du) for x in u]
    )


def ns_of_moduli(model: K3Model, v: MukaiVector) -> Sublattice:
    """NS(M) as v⊥ inside N(S), saturated and in Hermite form."""
    _check_shape(model, v)
    _require_primitive(v)
    if mukai_square(model, v) < 0:
        raise PreconditionError("NS of the moduli space needs v² >= 0")
    n_s = extended_ns(model)
    return orthogonal_complement(Sublattice.span(n_s, [v.coords]))


def k3_moduli_lattice(model: K3Model, v: MukaiVector) -> K3ModuliLattice:
    """NS(M) = (v⊥ ∩ N(S)) / Zv when v² = 0 and M is again a K3 surface."""
    if mukai_square(model, v) != 0:
        raise PreconditionError("k3 moduli lattice needs v² = 0")
    complement = ns_of_moduli(model, v)
    coeffs = engine.solve_in_span(complement.basis, [Fraction(x) for x in v.coords])
    if coeffs is None or any(c.denominator != 1 for c in coeffs):
        raise InconsistencyError("v is not an integral vector of its orthogonal")

    # complete v to a basis of v⊥; rows 1.. of right^{-1} span a complement of Zv
    dec = snf([[int(c) for c in coeffs]])
    rows = engine.unimodular_inverse(dec.right)
    quotient = [complement.ambient(row) for row in rows[1:]]
    n_s = extended_ns(model)
    gram = tuple(tuple(n_s.pair(a, b) for b in quotient) for a in quotient)
    ns_m = IntegralLattice(gram, label="NS(M)")

    div_v = mukai_divisibility(model, v)
    det_s = model.ns.det
    if abs(det_s) != abs(ns_m.det) * div_v * div_v:
        logger.error("|det NS(S)| = %d but |det NS(M)| * div(v)² = %d", det_s, ns_m.det * div_v**2)
        raise InconsistencyError("determinant relation for NS(M) fails")
    return K3ModuliLattice(ns_m, div_v, div_v, det_s, ns_m.det)


# =============================================================================
# HYPERBOLIC PLANES IN NS
# =============================================================================

def hyperbolic_pair(ns: IntegralLattice, F: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Complete an isotropic F of divisibility 1 to a hyperbolic pair (F, G).

    Returns:
        (F, G) with F² = G² = 0 and F.G = 1
    """
    F = [int(x) for x in F]
    if ns.square(F) != 0:
        raise PreconditionError("F must be isotropic")
    if divisibility(ns, F) != 1:
        raise PreconditionError("F must have divisibility 1")
    x = solve_integer([mat_vec(ns.gram, F)], [1])
    if x is None:
        raise InconsistencyError("no dual vector for a divisibility-1 class")
    half = ns.square(x) // 2
    G = [a - half * b for a, b in zip(x, F)]
    return tuple(F), tuple(G)


def hyperbolic_witness(model: K3Model, F: Sequence[int]) -> list[tuple[int, ...]]:
    """U ⊕ U in N(S): the (r, s) plane plus the plane through F in NS."""
    rho = model.picard_rank
    F, G = hyperbolic_pair(model.ns, F)
    zero = (0,) * rho
    return [
        (1, *zero, 0),
        (0, *zero, -1),
        (0, *F, 0),
        (0, *G, 0),
    ]


__all__ = [
    "K3Model",
    "MukaiVector",
    "ModuliKind",
    "ModuliExistence",
    "ModuliReport",
    "K3ModuliLattice",
    "extended_ns",
    "mukai_square",
    "mukai_divisibility",
    "line_bundle_vector",
    "moduli_exists",
    "caldararu_class",
    "moduli_report",
    "orbit_equivalent",
    "verify_hyperbolic_witness",
    "ns_of_moduli",
    "k3_moduli_lattice",
    "hyperbolic_pair",
    "hyperbolic_witness",
]
