"""Beauville-Mukai systems Pic^d = M(0, H, d + 1 - g).

Given NS(S) and a primitive curve class H of genus g, this module answers
the arithmetic questions about the family {Pic^d}:

- div(v_d) = gcd(div(H), d + 1 - g), cross-checked against the Gram matrix
- the kernel order of Sha(S, H) -> Br(Pic^d)
- torsor classes [Pic^d] through ζ_H and optional dual divisors
- the birationality criterion when NS contains a hyperbolic plane

Every group-level answer depends only on d and div(H); divisor searches are
bounded by ``config.search`` and only supply optional representatives.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd
from typing import Iterator, Optional, Sequence

import pandas as pd

from .mukai import (
    K3Model,
    ModuliExistence,
    MukaiVector,
    caldararu_class,
    extended_ns,
    hyperbolic_witness,
    moduli_exists,
    mukai_divisibility,
    mukai_square,
    orbit_equivalent,
)
from ..lattice.discform import DiscElement, discriminant_form, element_of
from ..lattice.errors import (
    DimensionMismatchError,
    HypothesisError,
    InconsistencyError,
    NotPrimitiveError,
    PreconditionError,
)
from ..lattice.intlat import IntegralLattice, divisibility
from ..lattice.normal_form import content
from ..utils.config import config
from ..utils.logger import get_logger

logger = get_logger(__name__)


# =============================================================================
# CONFIGURATION AND RESULT TYPES
# =============================================================================

@dataclass(frozen=True)
class BMConfig:
    """A K3 model together with a primitive ample curve class H."""

    model: K3Model
    H: tuple[int, ...]
    curve_assumption: str = "smooth irreducible"

    def __post_init__(self):
        H = tuple(int(x) for x in self.H)
        object.__setattr__(self, "H", H)
        if len(H) != self.model.picard_rank:
            raise DimensionMismatchError("H does not match the rank of NS")
        if not any(H) or content(H) != 1:
            raise NotPrimitiveError("H must be primitive")
        if self.model.ns.square(H) <= 0:
            raise PreconditionError("H must have positive square")

    @classmethod
    def rank_one(cls, g: int) -> "BMConfig":
        """ρ = 1 with NS = <2g - 2> and H the generator."""
        if g < 2:
            raise PreconditionError("genus must be at least 2")
        return cls(K3Model.rank_one(2 * g - 2), (1,))

    @property
    def ns(self) -> IntegralLattice:
        return self.model.ns

    @property
    def h_square(self) -> int:
        return self.ns.square(self.H)

    @property
    def g(self) -> int:
        return self.h_square // 2 + 1

    @cached_property
    def div_H(self) -> int:
        """div(H) in NS, asserted equal to div((0, H, 0)) in N(S)."""
        in_ns = divisibility(self.ns, self.H)
        in_extended = mukai_divisibility(self.model, MukaiVector(0, self.H, 0))
        if in_ns != in_extended:
            logger.error("div(H) = %d in NS but %d in N(S)", in_ns, in_extended)
            raise InconsistencyError("div(H) differs between NS and N(S)")
        return in_ns


@dataclass
class TorsorClass:
    """Class of the torsor Pic^d in Sha(S, H) ≅ Z/div(H)."""

    d: int
    div_H: int
    zeta_value: int                 # ζ_H of the class, = -d mod div(H)
    representative: Optional[DiscElement] = None
    dual_divisor: Optional[tuple[int, ...]] = None

    @property
    def order(self) -> int:
        return self.div_H // gcd(self.div_H, self.zeta_value)

    @property
    def is_trivial(self) -> bool:
        return self.zeta_value == 0


@dataclass
class BirationalityCertificate:
    """Evidence behind bm_birational(d, e)."""

    d: int
    e: int
    gcd_d: int
    gcd_e: int
    class_d: DiscElement
    class_e: DiscElement
    order_d: int
    order_e: int
    classes_equal: bool
    orbit_equivalent: bool
    witness: tuple[int, ...]        # isotropic F with div 1

    @property
    def birational(self) -> bool:
        return self.gcd_d == self.gcd_e


@dataclass
class TwistedExponents:
    """Brauer twists of the twisted equivalence between Pic^d and Pic^e."""

    d: int
    e: int
    exponent_on_d: int              # α_d^e, mod div(v_d)
    modulus_d: int
    exponent_on_e: int              # α_e^{-d}, mod div(v_e)
    modulus_e: int
    applicable: bool
    note: str = ""


@dataclass
class HilbertCriterion:
    """Comparison of M(v) with S^[n] when U ⊂ NS(S)."""

    n: int
    v_square: int
    div_v: int
    fine: bool
    birational: bool
    derived_equivalent: bool
    witness: tuple[int, ...]
    hilbert_vector: MukaiVector
    existence: ModuliExistence
    notes: list[str] = field(default_factory=list)


# =============================================================================
# v_d AND ITS DIVISIBILITY
# =============================================================================

def v_d(cfg: BMConfig, d: int) -> MukaiVector:
    """(0, H, d + 1 - g)."""
    return MukaiVector(0, cfg.H, d + 1 - cfg.g)


def div_vd(cfg: BMConfig, d: int) -> int:
    """gcd(div(H), d + 1 - g), checked against the Gram computation in N(S)."""
    formula = gcd(cfg.div_H, d + 1 - cfg.g)
    from_gram = mukai_divisibility(cfg.model, v_d(cfg, d))
    if formula != from_gram:
        logger.error("div(v_%d): gcd formula %d, Gram %d", d, formula, from_gram)
        raise InconsistencyError("div(v_d) paths disagree")
    return formula


def sha_kernel_order(cfg: BMConfig, d: int) -> int:
    """Order of the cyclic kernel of Sha(S, H) -> Br(Pic^d)."""
    return cfg.div_H // div_vd(cfg, d)


# =============================================================================
# TORSORS
# =============================================================================

def _check_bound(bound: Optional[int]) -> int:
    bound = config.search.default_bound if bound is None else int(bound)
    if bound < 0:
        raise ValueError("search bound must be non-negative")
    if bound > config.search.max_bound:
        raise ValueError(f"search bound {bound} exceeds the maximum {config.search.max_bound}")
    return bound


def _box(rank: int, bound: int) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors of the box in lexicographic order."""
    for x in product(range(-bound, bound + 1), repeat=rank):
        if any(x):
            yield x


def zeta_H(cfg: BMConfig, a: DiscElement) -> int:
    """ζ_H(a) = a.H mod div(H) for a class of NS*/NS."""
    if a.form.home != cfg.ns:
        raise PreconditionError("class does not belong to the discriminant group of NS")
    rep = a.rational_coords
    value = cfg.ns.pair(rep, cfg.H)
    shifted = cfg.ns.pair([x + (1 if i == 0 else 0) for i, x in enumerate(rep)], cfg.H)
    if Fraction(value).denominator != 1 or (shifted - value) % cfg.div_H:
        raise InconsistencyError("ζ_H is not well defined on this class")
    return int(value) % cfg.div_H


def find_dual_divisor(cfg: BMConfig, bound: Optional[int] = None) -> Optional[tuple[int, ...]]:
    """First D (lexicographic) in the box with div(D) = D.H > 0, or None."""
    bound = _check_bound(bound)
    for D in _box(cfg.ns.rank, bound):
        pairing = cfg.ns.pair(D, cfg.H)
        if pairing > 0 and divisibility(cfg.ns, D) == pairing:
            return D
    return None


def torsor_class(cfg: BMConfig, d: int, bound: Optional[int] = None) -> TorsorClass:
    """[Pic^d] with ζ_H-value -d, plus -d D/div(D) when a dual divisor is found."""
    zeta_value = (-d) % cfg.div_H
    out = TorsorClass(d=d, div_H=cfg.div_H, zeta_value=zeta_value)
    D = find_dual_divisor(cfg, bound)
    if D is None:
        return out
    div_D = divisibility(cfg.ns, D)
    rep = element_of(discriminant_form(cfg.ns), [Fraction(-d * x, div_D) for x in D])
    if zeta_H(cfg, rep) != zeta_value:
        raise InconsistencyError("representative does not reproduce ζ_H = -d")
    out.representative = rep
    out.dual_divisor = D
    return out


def torsor_equivalent(cfg: BMConfig, d: int, e: int) -> bool:
    """Pic^d ≅ Pic^e as torsors iff d ≡ e mod div(H)."""
    return (d - e) % cfg.div_H == 0


def sha_kernel_generator(cfg: BMConfig, d: int, bound: Optional[int] = None) -> TorsorClass:
    """Generator of ker(Sha(S, H) -> Br(Pic^d)): the class of Pic^{div(v_d)}."""
    out = torsor_class(cfg, div_vd(cfg, d), bound)
    if out.order != sha_kernel_order(cfg, d):
        raise InconsistencyError("kernel generator has the wrong order")
    return out


def obstruction_image_exponent(cfg: BMConfig, d: int, e: int) -> int:
    """[Pic^e] maps to α_d^e in Br(Pic^d); the exponent mod div(v_d)."""
    return e % div_vd(cfg, d)


def twisted_equivalence_exponents(cfg: BMConfig, d: int, e: int) -> TwistedExponents:
    """Exponents of the twists on Pic^d and Pic^e, reduced mod div(v_d), div(v_e)."""
    mod_d = div_vd(cfg, d)
    mod_e = div_vd(cfg, e)
    applicable = cfg.ns.rank == 1
    note = "" if applicable else "exponent bookkeeping only; equivalence known for Picard rank one"
    return TwistedExponents(
        d=d,
        e=e,
        exponent_on_d=e % mod_d,
        modulus_d=mod_d,
        exponent_on_e=(-d) % mod_e,
        modulus_e=mod_e,
        applicable=applicable,
        note=note,
    )


# =============================================================================
# ELLIPTIC FIBRATIONS AND BIRATIONALITY
# =============================================================================

def elliptic_with_section(ns: IntegralLattice, bound: Optional[int] = None) -> Optional[tuple[int, ...]]:
    """Search for a primitive isotropic F with div(F) = 1, i.e. U ⊂ NS.

    Vectors are tried by increasing max-norm, then in decreasing
    lexicographic order. None means inconclusive, not a proof of absence.
    """
    bound = _check_bound(bound)
    for radius in range(1, bound + 1):
        shell = [
            x for x in product(range(radius, -radius - 1, -1), repeat=ns.rank)
            if max(abs(c) for c in x) == radius
        ]
        for F in shell:
            if ns.square(F) == 0 and content(F) == 1 and divisibility(ns, F) == 1:
                return F
    logger.debug("no isotropic class of divisibility 1 within bound %d", bound)
    return None


def _require_section(cfg: BMConfig, bound: Optional[int]) -> tuple[int, ...]:
    F = elliptic_with_section(cfg.ns, bound)
    if F is None:
        raise HypothesisError("theorem hypothesis not verified")
    return F


def bm_birational(
    cfg: BMConfig, d: int, e: int, bound: Optional[int] = None
) -> BirationalityCertificate:
    """Decide whether Pic^d and Pic^e are birational (needs U ⊂ NS).

    Raises:
        HypothesisError: if no elliptic fibration with a section is found
        InconsistencyError: if the equivalent criteria disagree
    """
    F = _require_section(cfg, bound)
    return _certificate(cfg, d, e, F)


def _certificate(cfg: BMConfig, d: int, e: int, F: tuple[int, ...]) -> BirationalityCertificate:
    vd, ve = v_d(cfg, d), v_d(cfg, e)
    gcd_d, gcd_e = div_vd(cfg, d), div_vd(cfg, e)
    class_d = caldararu_class(cfg.model, vd)
    class_e = caldararu_class(cfg.model, ve)
    witness = hyperbolic_witness(cfg.model, F)
    orbit = orbit_equivalent(extended_ns(cfg.model), vd.coords, ve.coords, witness)
    cert = BirationalityCertificate(
        d=d,
        e=e,
        gcd_d=gcd_d,
        gcd_e=gcd_e,
        class_d=class_d,
        class_e=class_e,
        order_d=class_d.order,
        order_e=class_e.order,
        classes_equal=class_d == class_e,
        orbit_equivalent=orbit,
        witness=F,
    )
    verdicts = {
        cert.birational,
        cert.order_d == cert.order_e,
        cert.classes_equal,
        cert.orbit_equivalent,
    }
    if len(verdicts) != 1:
        logger.error("birationality criteria disagree for d=%d, e=%d: %s", d, e, cert)
        raise InconsistencyError("birationality criteria disagree")
    return cert


def birational_non_isomorphic_pairs(
    cfg: BMConfig, span: int, bound: Optional[int] = None
) -> pd.DataFrame:
    """Pairs d < e in [-span, span] that are birational but not torsor-isomorphic."""
    F = _require_section(cfg, bound)
    rows = []
    for d in range(-span, span + 1):
        for e in range(d + 1, span + 1):
            if torsor_equivalent(cfg, d, e):
                continue
            cert = _certificate(cfg, d, e, F)
            if cert.birational:
                rows.append({"d": d, "e": e, "div_vd": cert.gcd_d, "div_H": cfg.div_H})
    return pd.DataFrame(rows, columns=["d", "e", "div_vd", "div_H"])


def genus_one_cross_check(ns: IntegralLattice, F: Sequence[int], span: int) -> pd.DataFrame:
    """Elliptic fibre class F: every v_d = (0, F, d) is fine and Sha -> Br is injective."""
    F = tuple(int(x) for x in F)
    if ns.square(F) != 0 or divisibility(ns, F) != 1:
        raise PreconditionError("F must be isotropic of divisibility 1")
    model = K3Model(ns)
    rows = []
    for d in range(-span, span + 1):
        v = MukaiVector(0, F, d)
        div_v = mukai_divisibility(model, v)
        rows.append({
            "d": d,
            "v_square": mukai_square(model, v),
            "div_v": div_v,
            "fine": div_v == 1,
            "sha_kernel_order": divisibility(ns, F) // gcd(divisibility(ns, F), d),
        })
    return pd.DataFrame(rows)


# =============================================================================
# HILBERT SCHEMES
# =============================================================================

def hilbert_scheme_criterion(
    model: K3Model, v: MukaiVector, bound: Optional[int] = None
) -> HilbertCriterion:
    """Is M(v) birational to S^[n]? Needs U ⊂ NS and v² = 2n - 2 >= 2.

    Three verdicts are compared: fineness, orbit equivalence with
    (1, 0, 1 - n), and div(v) = 1. Derived equivalence is reported as
    implied by birationality only.
    """
    square = mukai_square(model, v)
    if square < 2:
        raise PreconditionError("Hilbert scheme criterion needs v² >= 2")
    existence = moduli_exists(model, v)
    F = elliptic_with_section(model.ns, bound)
    if F is None:
        raise HypothesisError("theorem hypothesis not verified")

    n = square // 2 + 1
    u = MukaiVector(1, (0,) * model.picard_rank, 1 - n)
    div_v = mukai_divisibility(model, v)
    birational = orbit_equivalent(
        extended_ns(model), v.coords, u.coords, hyperbolic_witness(model, F)
    )
    fine = caldararu_class(model, v).is_zero
    if not (fine == birational == (div_v == 1)):
        logger.error("Hilbert criterion disagrees for %s: fine=%s birational=%s", v, fine, birational)
        raise InconsistencyError("Hilbert scheme criteria disagree")
    notes = ["derived equivalence reported only as a consequence of birationality"]
    return HilbertCriterion(
        n=n,
        v_square=square,
        div_v=div_v,
        fine=fine,
        birational=birational,
        derived_equivalent=birational,
        witness=F,
        hilbert_vector=u,
        existence=existence,
        notes=notes,
    )


__all__ = [
    "BMConfig",
    "TorsorClass",
    "BirationalityCertificate",
    "TwistedExponents",
    "HilbertCriterion",
    "v_d",
    "div_vd",
    "sha_kernel_order",
    "zeta_H",
    "find_dual_divisor",
    "torsor_class",
    "torsor_equivalent",
    "sha_kernel_generator",
    "obstruction_image_exponent",
    "twisted_equivalence_exponents",
    "elliptic_with_section",
    "bm_birational",
    "birational_non_isomorphic_pairs",
    "genus_one_cross_check",
    "hilbert_scheme_criterion",
]
