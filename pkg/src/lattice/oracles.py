"""Structural oracles on explicit unimodular models.

Two checks are implemented on top of intlat/discform:

- glue_check: for a primitive non-degenerate N in a unimodular L with
  complement T = N^⊥, builds the glue map A_T -> A_N (solve x·ζ = λ·ζ on T,
  send λ to the class of x - λ) and verifies it is an anti-isometry.
- transcendental_cokernel: for v primitive in a primitive N ⊆ L, computes the
  index of {x ∈ L : x·v ≡ 0 mod div_N(v)} / N inside L / N and a witness u
  with u·v ≡ 1 (mod div_N(v)).

Plus the seeded random sweeps that run both checks over many samples.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from .algebra import engine
from .discform import (
    DiscElement,
    FiniteQuadraticForm,
    discriminant_form,
    element_of,
    forms_anti_isometric_elementwise,
)
from .errors import (
    DegenerateLatticeError,
    InconsistencyError,
    NotPrimitiveError,
    NotUnimodularError,
    PreconditionError,
    ZeroVectorError,
)
from .intlat import (
    IntegralLattice,
    Sublattice,
    direct_sum,
    orthogonal_complement,
    saturate,
    standard,
)
from .normal_form import content, hermite_rows, kernel_basis, mat_mul, mat_vec, snf, solve_integer
from ..utils.config import config
from ..utils.logger import get_logger

logger = get_logger(__name__)


# =============================================================================
# RESULT TYPES
# =============================================================================

@dataclass
class GlueReport:
    """Result of the glue check."""

    sublattice: Sublattice
    complement: Sublattice
    form_n: FiniteQuadraticForm
    form_t: FiniteQuadraticForm
    images: list[DiscElement]       # glue images of the A_T generators in A_N
    orders_equal: bool
    anti_isometric: bool

    @property
    def verified(self) -> bool:
        return self.orders_equal and self.anti_isometric


@dataclass
class CokernelReport:
    """Result of the transcendental cokernel oracle."""

    divisibility: int               # div_N(v)
    index: int                      # [L/N : K/N]
    witness: list[int]              # u with u·v ≡ 1 mod div_N(v)
    kernel_generator: list[int]     # w = div_N(v) * u
    vector: list[int]               # v in ambient coordinates

    @property
    def verified(self) -> bool:
        return self.index == self.divisibility


# =============================================================================
# GLUE CHECK
# =============================================================================

def glue_check(lattice: IntegralLattice, sub: Sublattice) -> GlueReport:
    """Verify A_T(-1) ≅ A_N through the explicit glue map.

    Args:
        lattice: Unimodular ambient lattice
        sub: Sublattice of ``lattice`` (saturated first if needed)

    Returns:
        GlueReport with both forms, the generator images and the verdict
    """
    if not lattice.is_unimodular:
        raise NotUnimodularError("glue check requires unimodular ambient")
    n_sub = saturate(sub)
    if n_sub.rank == 0 or n_sub.is_degenerate:
        raise DegenerateLatticeError("glue check needs a non-degenerate sublattice")
    t_sub = orthogonal_complement(n_sub)
    form_n = discriminant_form(n_sub.as_lattice("N"))
    form_t = discriminant_form(t_sub.as_lattice("T")) if t_sub.rank else discriminant_form(
        IntegralLattice((), label="T")
    )

    constraints = mat_mul(t_sub.basis, lattice.gram) if t_sub.rank else []
    images = []
    for gen in form_t.generators:
        lam = t_sub.ambient(gen)
        rhs = mat_vec(t_sub.gram_restricted, gen)
        if any(Fraction(x).denominator != 1 for x in rhs):
            raise InconsistencyError("complement generator is not a dual vector")
        x = solve_integer(constraints, [int(v) for v in rhs])
        if x is None:
            raise InconsistencyError("glue equation has no integral solution")
        mu = [Fraction(a) - b for a, b in zip(x, lam)]
        coeffs = engine.solve_in_span(n_sub.basis, mu)
        if coeffs is None:
            raise InconsistencyError("x - λ does not lie in N ⊗ Q")
        images.append(element_of(form_n, coeffs))

    orders_equal = form_n.order == form_t.order
    anti = forms_anti_isometric_elementwise(form_t, form_n, images)
    logger.debug(
        "glue: |A_N|=%d |A_T|=%d anti-isometric=%s", form_n.order, form_t.order, anti
    )
    return GlueReport(n_sub, t_sub, form_n, form_t, images, orders_equal, anti)


# =============================================================================
# TRANSCENDENTAL COKERNEL
# =============================================================================

def transcendental_cokernel(
    lattice: IntegralLattice, sub: Sublattice, v: Sequence[int]
) -> CokernelReport:
    """Index of the congruence subgroup {x : x·v ≡ 0 mod d} / N in L / N.

    Args:
        lattice: Unimodular ambient lattice
        sub: Primitive sublattice N
        v: Coordinates of a primitive vector of N in N's basis

    Returns:
        CokernelReport; ``verified`` is the statement index == div_N(v)
    """
    if not lattice.is_unimodular:
        raise NotUnimodularError("transcendental cokernel requires unimodular ambient")
    if not sub.is_primitive:
        raise NotPrimitiveError("N must be primitive in L")
    v = [int(x) for x in v]
    if len(v) != sub.rank:
        raise PreconditionError(f"v needs {sub.rank} coordinates in the basis of N")
    if not any(v):
        raise ZeroVectorError("zero vector has no divisibility")
    if content(v) != 1:
        raise NotPrimitiveError("v must be primitive in N")

    d = content(mat_vec(sub.gram_restricted, v))
    if d == 0:
        raise PreconditionError("v pairs to zero with all of N; divisibility undefined")
    v_amb = sub.ambient(v)
    w = mat_vec(lattice.gram, v_amb)
    n = lattice.rank

    # K = {x : w·x ≡ 0 mod d} as the projection of ker [w | d]
    k_rows = [row[:n] for row in kernel_basis([w + [d]], n + 1)]

    # coordinates on L/N: x -> (x · right)[k:], where N's rows span the first k
    dec_n = snf(sub.basis)
    k = sub.rank
    projected = [
        [sum(x[i] * dec_n.right[i][j] for i in range(n)) for j in range(k, n)] for x in k_rows
    ]
    if n == k:
        index = 1
    else:
        dec_k = snf(projected)
        if dec_k.rank != n - k:
            raise InconsistencyError("congruence subgroup has infinite index in L/N")
        index = 1
        for x in dec_k.d:
            index *= x

    dec_w = snf([w])
    if dec_w.d[0] != 1:
        raise InconsistencyError("v is not primitive in the unimodular ambient")
    u = [dec_w.left[0][0] * dec_w.right[i][0] for i in range(n)]
    report = CokernelReport(
        divisibility=d,
        index=index,
        witness=u,
        kernel_generator=[d * x for x in u],
        vector=[int(x) for x in v_amb],
    )
    if not report.verified:
        logger.error("cokernel index %d differs from div_N(v) = %d", index, d)
    return report


# =============================================================================
# UNIMODULAR ENVELOPE
# =============================================================================

def unimodular_envelope(lattice: IntegralLattice) -> tuple[IntegralLattice, Sublattice]:
    """Even unimodular M ⊇ N primitively: {(x, y) ∈ N* ⊕ N(-1)* : x ≡ y mod N}.

    Returns:
        (M, image of N under x -> (x, 0) as a Sublattice of M)
    """
    k = lattice.rank
    det = abs(lattice.det)
    inverse = engine.inverse(lattice.gram)
    scale = det  # denominators of G^{-1} divide |det G|
    generators = []
    for i in range(k):
        generators.append([scale if j == i else 0 for j in range(2 * k)])
        generators.append([scale if j == k + i else 0 for j in range(2 * k)])
        dual = [inverse[j][i] for j in range(k)]
        generators.append([int(x * scale) for x in dual] * 2)
    basis = [[Fraction(x, scale) for x in row] for row in hermite_rows(generators)]

    doubled = [[0] * (2 * k) for _ in range(2 * k)]
    for i in range(k):
        for j in range(k):
            doubled[i][j] = lattice.gram[i][j]
            doubled[k + i][k + j] = -lattice.gram[i][j]
    gram = mat_mul(mat_mul(basis, doubled), [list(c) for c in zip(*basis)])
    if any(Fraction(x).denominator != 1 for row in gram for x in row):
        raise InconsistencyError("envelope Gram is not integral")
    envelope = IntegralLattice(tuple(tuple(int(x) for x in row) for row in gram),
                               label=f"env({lattice.display()})")
    if not envelope.is_unimodular:
        raise InconsistencyError("envelope is not unimodular")

    embedding = []
    for i in range(k):
        target = [Fraction(1 if j == i else 0) for j in range(2 * k)]
        coeffs = engine.solve_in_span(basis, target)
        embedding.append([int(c) for c in coeffs])
    return envelope, Sublattice.span(envelope, embedding)


def cross_check_model(lattice: IntegralLattice) -> tuple[IntegralLattice, Sublattice]:
    """envelope(N) ⊕ U ⊕ E8(-1) with N embedded in the first summand."""
    envelope, embedded = unimodular_envelope(lattice)
    extra = direct_sum(standard("U"), standard("E8-"))
    ambient = direct_sum(envelope, extra, label=f"{envelope.label}+U+E8(-1)")
    pad = [0] * extra.rank
    return ambient, Sublattice.span(ambient, [list(b) + pad for b in embedded.basis])


# =============================================================================
# RANDOMIZED SWEEPS
# =============================================================================

def oracle_ambients() -> dict[str, IntegralLattice]:
    """The unimodular models sampled by the sweeps."""
    u = standard("U")
    return {
        "U^2": direct_sum(u, u, label="U^2"),
        "U^3": direct_sum(u, u, u, label="U^3"),
        "U+E8(-1)": direct_sum(u, standard("E8-"), label="U+E8(-1)"),
    }


def random_primitive_sublattice(
    lattice: IntegralLattice,
    rank: int,
    box: int,
    rng: np.random.Generator,
    non_degenerate: bool = True,
    max_attempts: Optional[int] = None,
) -> Sublattice:
    """Saturated sublattice spanned by ``rank`` random vectors in [-box, box].

    Raises:
        PreconditionError: if no acceptable sample is found
    """
    attempts = max_attempts or config.oracle.max_attempts
    for _ in range(attempts):
        rows = rng.integers(-box, box + 1, size=(rank, lattice.rank)).tolist()
        if engine.rank(rows) != rank:
            continue
        sub = saturate(Sublattice.span(lattice, rows))
        if non_degenerate and sub.is_degenerate:
            continue
        return sub
    raise PreconditionError(f"no rank-{rank} sample found in {attempts} attempts")


def glue_sweep(
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    box: Optional[int] = None,
) -> pd.DataFrame:
    """Run glue_check on random primitive sublattices (rank 1-3).

    Returns:
        DataFrame with columns: ambient, rank, order_n, order_t, anti_isometric, verified
    """
    samples = samples or config.oracle.glue_samples
    box = box or config.oracle.coefficient_box
    rng = np.random.default_rng(config.oracle.seed if seed is None else seed)
    ambients = list(oracle_ambients().items())
    rows = []
    for i in range(samples):
        name, lattice = ambients[i % len(ambients)]
        rank = int(rng.integers(1, 4))
        sub = random_primitive_sublattice(lattice, rank, box, rng)
        report = glue_check(lattice, sub)
        rows.append({
            "ambient": name,
            "rank": rank,
            "order_n": report.form_n.order,
            "order_t": report.form_t.order,
            "anti_isometric": report.anti_isometric,
            "verified": report.verified,
        })
    logger.debug("glue sweep finished: %d samples", samples)
    return pd.DataFrame(rows)


def cokernel_sweep(
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    box: Optional[int] = None,
) -> pd.DataFrame:
    """Run transcendental_cokernel on random (L, N, v) triples.

    Returns:
        DataFrame with columns: ambient, rank, divisibility, index, witness_ok, verified
    """
    samples = samples or config.oracle.cokernel_samples
    box = box or config.oracle.coefficient_box
    rng = np.random.default_rng(config.oracle.seed if seed is None else seed)
    ambients = list(oracle_ambients().items())
    rows = []
    for i in range(samples):
        name, lattice = ambients[i % len(ambients)]
        rank = int(rng.integers(1, 4))
        sub = random_primitive_sublattice(lattice, rank, box, rng, non_degenerate=False)
        v = _random_primitive_coords(sub, box, rng)
        report = transcendental_cokernel(lattice, sub, v)
        pairing = lattice.pair(report.witness, report.vector)
        rows.append({
            "ambient": name,
            "rank": rank,
            "divisibility": report.divisibility,
            "index": report.index,
            "witness_ok": (pairing - 1) % report.divisibility == 0,
            "verified": report.verified,
        })
    logger.debug("cokernel sweep finished: %d samples", samples)
    return pd.DataFrame(rows)


def _random_primitive_coords(sub: Sublattice, box: int, rng: np.random.Generator) -> list[int]:
    """Random primitive coordinates in N whose divisibility in N is defined."""
    for _ in range(config.oracle.max_attempts):
        v = rng.integers(-box, box + 1, size=sub.rank).tolist()
        g = content(v)
        if g == 0:
            continue
        v = [x // g for x in v]
        if any(mat_vec(sub.gram_restricted, v)):
            return v
    raise PreconditionError("no primitive vector with nonzero pairings found")


__all__ = [
    "GlueReport",
    "CokernelReport",
    "glue_check",
    "transcendental_cokernel",
    "unimodular_envelope",
    "cross_check_model",
    "oracle_ambients",
    "random_primitive_sublattice",
    "glue_sweep",
    "cokernel_sweep",
]
