"""Algebraic parts of extended Mukai lattices of Pic^{g-1} and Pic^g.

For a Picard rank one K3 of genus g the two Beauville-Mukai systems
M = Pic^{g-1} and M' = Pic^g have (1,1)-parts

    M:  U ⊕ <2α + δ_M, β>,  Gram [[2-2g, -2], [-2, 0]]    det 4
    M': U(-1) ⊕ NS(M'),     NS(M') = <(0,0,1), (2g-2,H,0)>  det (2g-2)²

Derived equivalences preserve these discriminants, so M and M' are not
derived equivalent as soon as 2g - 2 >= 4.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import pandas as pd

from .mukai import K3Model, MukaiVector, extended_ns, ns_of_moduli
from ..lattice.algebra import engine
from ..lattice.errors import InconsistencyError, PreconditionError
from ..lattice.intlat import IntegralLattice, Sublattice, divisibility, signature
from ..utils.logger import get_logger

logger = get_logger(__name__)

Gram = tuple[tuple[int, ...], ...]


@dataclass
class DeltaBookkeeping:
    g: int
    generator_square: int           # (2α + δ_M)²
    generator_dot_beta: int         # (2α + δ_M).β
    delta_square: int               # δ_M²
    delta_divisibility: int         # div(δ_M) in H²(M, Z)


@dataclass
class ExtMukaiReport:
    g: int
    gram_M: Gram
    gram_Mprime: Gram
    disc_M: int
    disc_Mprime: int
    distinct: bool
    applicable: bool
    signature_M: tuple[int, int]
    signature_Mprime: tuple[int, int]
    ns_Mprime_block: Gram           # NS(M') Gram recomputed from v⊥, reordered

    @property
    def verdict(self) -> str:
        if not self.applicable:
            return "inconclusive"
        return "not derived equivalent" if self.distinct else "inconclusive"


def _check_genus(g: int) -> None:
    if g < 2:
        raise PreconditionError(f"genus must be at least 2, got {g}")


def lambda11_picgminus1(g: int) -> Gram:
    """Gram of U ⊕ <2α + δ_M, β> for M = Pic^{g-1}."""
    _check_genus(g)
    return (
        (0, 1, 0, 0),
        (1, 0, 0, 0),
        (0, 0, 2 - 2 * g, -2),
        (0, 0, -2, 0),
    )


def _ns_mprime(g: int) -> Gram:
    a = 2 * g - 2
    return ((0, -a), (-a, a))


def lambda11_picg(g: int) -> Gram:
    """Gram of U(-1) ⊕ NS(M') for M' = Pic^g, NS(M') in basis (0,0,1), (2g-2,H,0)."""
    _check_genus(g)
    (p, q), (_, t) = _ns_mprime(g)
    return (
        (0, -1, 0, 0),
        (-1, 0, 0, 0),
        (0, 0, p, q),
        (0, 0, q, t),
    )


def ns_mprime_from_moduli(g: int) -> Gram:
    """NS(M') as v⊥ for v = (0, H, 1) on <2g-2>, reordered to match the block.

    Raises InconsistencyError if no ordering of the computed basis gives
    the block used in lambda11_picg.
    """
    _check_genus(g)
    sub = ns_of_moduli(K3Model.rank_one(2 * g - 2), MukaiVector(0, (1,), 1))
    target = _ns_mprime(g)
    gram = sub.gram_restricted
    for order in permutations(range(sub.rank)):
        candidate = tuple(tuple(gram[i][j] for j in order) for i in order)
        if candidate == target:
            return candidate
    logger.error("NS(M') from v⊥ is %s, expected %s up to order", gram, target)
    raise InconsistencyError("NS(M') block does not match the moduli computation")


def delta_bookkeeping(g: int) -> DeltaBookkeeping:
    """δ_M² = 2 - 2g and div(δ_M) = 2g - 2, on an elliptic model of genus g.

    With NS = U and H = e + (g-1)f, δ_M is realised as e - (g-1)f inside
    (0, H, 0)⊥ ⊂ N(S); the unimodular rest of H²(S, Z) does not change its
    divisibility.
    """
    _check_genus(g)
    gram = lambda11_picgminus1(g)
    model = K3Model(IntegralLattice(((0, 1), (1, 0)), label="U"))
    n_s = extended_ns(model)
    perp = ns_of_moduli(model, MukaiVector(0, (1, g - 1), 0))
    delta = (0, 1, 1 - g, 0)
    coeffs = engine.solve_in_span(perp.basis, [Fraction(x) for x in delta])
    if coeffs is None or any(c.denominator != 1 for c in coeffs):
        raise InconsistencyError("δ_M does not lie in v⊥")
    div_delta = divisibility(perp.as_lattice(), [int(c) for c in coeffs])
    out = DeltaBookkeeping(
        g=g,
        generator_square=gram[2][2],
        generator_dot_beta=gram[2][3],
        delta_square=n_s.square(delta),
        delta_divisibility=div_delta,
    )
    if out.delta_square != out.generator_square or div_delta != 2 * g - 2:
        raise InconsistencyError("δ_M bookkeeping does not match the Gram block")
    return out


def derived_distinct(g: int) -> ExtMukaiReport:
    """Compare the discriminants of the two (1,1)-lattices."""
    gram_m = lambda11_picgminus1(g)
    gram_mp = lambda11_picg(g)
    lat_m = IntegralLattice(gram_m, label="Λ(Pic^{g-1})")
    lat_mp = IntegralLattice(gram_mp, label="Λ(Pic^g)")
    block = ns_mprime_from_moduli(g)
    report = ExtMukaiReport(
        g=g,
        gram_M=gram_m,
        gram_Mprime=gram_mp,
        disc_M=lat_m.det,
        disc_Mprime=lat_mp.det,
        distinct=lat_m.det != lat_mp.det,
        applicable=2 * g - 2 >= 4,
        signature_M=signature(lat_m),
        signature_Mprime=signature(lat_mp),
        ns_Mprime_block=block,
    )
    logger.debug("g=%d: disc %d vs %d", g, report.disc_M, report.disc_Mprime)
    return report


def extmukai_sweep(g_min: int = 2, g_max: int = 50) -> pd.DataFrame:
    """One row per genus: both discriminants, distinctness, applicability."""
    rows = []
    for g in range(g_min, g_max + 1):
        r = derived_distinct(g)
        rows.append({
            "g": g,
            "disc_M": r.disc_M,
            "disc_Mprime": r.disc_Mprime,
            "distinct": r.distinct,
            "applicable": r.applicable,
        })
    return pd.DataFrame(rows)


__all__ = [
    "DeltaBookkeeping",
    "ExtMukaiReport",
    "lambda11_picgminus1",
    "lambda11_picg",
    "ns_mprime_from_moduli",
    "delta_bookkeeping",
    "derived_distinct",
    "extmukai_sweep",
]
