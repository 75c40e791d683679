"""Even integral lattices, vectors and sublattices.

Core objects:
- IntegralLattice: symmetric, even, non-degenerate integer Gram matrix
- LatticeVector: integer coordinates in a lattice's basis
- Sublattice: a linearly independent family of vectors of an ambient lattice

Operations follow the column convention: the pairing of x and y is
x^T * gram * y. All arithmetic is exact (Python ints and Fractions).

Usage:
    from src.lattice.intlat import standard, divisibility

    U = standard("U")
    divisibility(U, U.vector([1, 0]))  # 1
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Union

from .algebra import engine
from .errors import (
    DegenerateLatticeError,
    DimensionMismatchError,
    InvalidGramError,
    ZeroVectorError,
)
from .lattice_types import StandardLattice
from .normal_form import (
    content,
    hermite_rows,
    identity,
    kernel_basis,
    mat_mul,
    mat_vec,
    snf,
    transpose,
)
from ..utils.logger import get_logger

logger = get_logger(__name__)

Number = Union[int, Fraction]


# =============================================================================
# LATTICES AND VECTORS
# =============================================================================

@dataclass(frozen=True)
class IntegralLattice:
    """An even, non-degenerate integral lattice given by its Gram matrix."""

    gram: tuple[tuple[int, ...], ...]
    label: Optional[str] = None

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        for i, row in enumerate(gram):
            if len(row) != n:
                raise InvalidGramError(f"Gram matrix must be square (row {i} has {len(row)} entries)")
        for i in range(n):
            if gram[i][i] % 2:
                raise InvalidGramError(f"lattice is not even: gram[{i}][{i}] = {gram[i][i]}")
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise InvalidGramError(f"Gram matrix is not symmetric at ({i}, {j})")
        if self.det == 0:
            raise DegenerateLatticeError("Gram matrix is degenerate (det = 0)")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        """Signed determinant of the Gram matrix."""
        return engine.det(self.gram)

    @property
    def is_unimodular(self) -> bool:
        return abs(self.det) == 1

    def pair(self, x: Sequence[Number], y: Sequence[Number]) -> Number:
        """Bilinear form x^T * gram * y (works for rational coordinates too)."""
        return sum(x[i] * sum(self.gram[i][j] * y[j] for j in range(self.rank))
                   for i in range(self.rank))

    def square(self, x: Sequence[Number]) -> Number:
        return self.pair(x, x)

    def vector(self, coords: Sequence[int]) -> "LatticeVector":
        return LatticeVector(tuple(coords), self)

    def display(self) -> str:
        return self.label or f"lattice of rank {self.rank}"


@dataclass(frozen=True)
class LatticeVector:
    """Integer coordinates of a vector in ``home``'s basis."""

    coords: tuple[int, ...]
    home: IntegralLattice = field(repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))
        if len(self.coords) != self.home.rank:
            raise DimensionMismatchError(
                f"vector has {len(self.coords)} coordinates, lattice has rank {self.home.rank}"
            )

    @property
    def square(self) -> int:
        return self.home.square(self.coords)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def divisibility(self) -> int:
        return divisibility(self.home, self.coords)

    @property
    def is_primitive(self) -> bool:
        return is_primitive(self.home, self.coords)

    def dot(self, other: "LatticeVector") -> int:
        return self.home.pair(self.coords, other.coords)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-x for x in self.coords), self.home)

    def scaled(self, k: int) -> "LatticeVector":
        return LatticeVector(tuple(k * x for x in self.coords), self.home)


def _coords(v: Union[LatticeVector, Sequence[int]]) -> tuple[int, ...]:
    return v.coords if isinstance(v, LatticeVector) else tuple(int(x) for x in v)


# =============================================================================
# SUBLATTICES
# =============================================================================

@dataclass(frozen=True)
class Sublattice:
    """Span of linearly independent vectors of ``home``.

    The basis is kept as given for reporting; ``saturated`` is the primitive
    hull. ``notes`` records caveats from the operation that built it.
    """

    home: IntegralLattice
    basis: tuple[tuple[int, ...], ...]
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        basis = tuple(_coords(b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        for b in basis:
            if len(b) != self.home.rank:
                raise DimensionMismatchError(
                    f"basis vector has {len(b)} coordinates, lattice has rank {self.home.rank}"
                )
        if basis and engine.rank(basis) != len(basis):
            raise InvalidGramError("sublattice basis is not linearly independent")

    @classmethod
    def span(cls, home: IntegralLattice, vectors: Sequence) -> "Sublattice":
        return cls(home, tuple(_coords(v) for v in vectors))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def gram_restricted(self) -> tuple[tuple[int, ...], ...]:
        """gram_restricted[i][j] = basis[i] . basis[j] in the ambient form."""
        g = mat_mul(mat_mul(self.basis, self.home.gram), transpose(self.basis)) if self.basis else []
        return tuple(tuple(row) for row in g)

    @property
    def is_degenerate(self) -> bool:
        return engine.det(self.gram_restricted) == 0

    @cached_property
    def saturation_index(self) -> int:
        """Index of this sublattice in its saturation (1 iff primitive)."""
        if not self.basis:
            return 1
        dec = snf(self.basis)
        index = 1
        for x in dec.d:
            index *= x
        return index

    @property
    def is_primitive(self) -> bool:
        return self.saturation_index == 1

    @cached_property
    def saturated(self) -> "Sublattice":
        return saturate(self)

    def as_lattice(self, label: Optional[str] = None) -> IntegralLattice:
        """The sublattice as an abstract lattice (raises if degenerate)."""
        return IntegralLattice(self.gram_restricted, label=label)

    def ambient(self, coeffs: Sequence[Number]) -> list[Number]:
        """Ambient coordinates of sum(coeffs[i] * basis[i])."""
        return [sum(c * b[j] for c, b in zip(coeffs, self.basis)) for j in range(self.home.rank)]

    def same_lattice(self, other: "Sublattice") -> bool:
        return hermite_rows(self.basis) == hermite_rows(other.basis)


# =============================================================================
# OPERATIONS
# =============================================================================

def divisibility(lattice: IntegralLattice, v: Union[LatticeVector, Sequence[int]]) -> int:
    """div(v): gcd of the entries of gram * v."""
    coords = _coords(v)
    if len(coords) != lattice.rank:
        raise DimensionMismatchError("vector length does not match lattice rank")
    if not any(coords):
        raise ZeroVectorError("zero vector has no divisibility")
    return content(mat_vec(lattice.gram, coords))


def is_primitive(lattice: IntegralLattice, v: Union[LatticeVector, Sequence[int]]) -> bool:
    """True iff gcd of the coordinates of v is 1."""
    coords = _coords(v)
    if len(coords) != lattice.rank:
        raise DimensionMismatchError("vector length does not match lattice rank")
    if not any(coords):
        raise ZeroVectorError("zero vector is neither primitive nor imprimitive")
    return content(coords) == 1


def saturate(sub: Sublattice) -> Sublattice:
    """Primitive hull span_Q(sub) ∩ home, with a canonical basis.

    If left * B * right = D, the first k rows of right^{-1} are a basis of the
    saturation and the index is the product of the invariant factors.
    """
    if not sub.basis:
        return sub
    dec = snf(sub.basis)
    inverse = engine.unimodular_inverse(dec.right)
    rows = hermite_rows(inverse[: sub.rank])
    logger.debug("saturate rank %d: index %d", sub.rank, sub.saturation_index)
    return Sublattice(sub.home, tuple(tuple(r) for r in rows))


def orthogonal_complement(sub: Sublattice) -> Sublattice:
    """Saturated basis of {x in home : x . s = 0 for all s in sub}."""
    n = sub.home.rank
    if not sub.basis:
        return Sublattice(sub.home, tuple(tuple(r) for r in identity(n)))
    constraints = mat_mul(sub.basis, sub.home.gram)
    rows = kernel_basis(constraints, n)
    notes: tuple[str, ...] = ()
    if sub.is_degenerate:
        logger.info("complement of a degenerate sublattice of rank %d", sub.rank)
        notes = (
            "input sublattice is degenerate: it meets its complement, so their sum has infinite index",
        )
    return Sublattice(sub.home, tuple(tuple(r) for r in rows), notes=notes)


def direct_sum(*lattices: IntegralLattice, label: Optional[str] = None) -> IntegralLattice:
    """Block-diagonal orthogonal sum."""
    n = sum(lat.rank for lat in lattices)
    gram = [[0] * n for _ in range(n)]
    offset = 0
    for lat in lattices:
        for i in range(lat.rank):
            for j in range(lat.rank):
                gram[offset + i][offset + j] = lat.gram[i][j]
        offset += lat.rank
    if label is None and all(lat.label for lat in lattices):
        label = "+".join(lat.label for lat in lattices)
    return IntegralLattice(tuple(tuple(r) for r in gram), label=label)


def rescale(lattice: IntegralLattice, k: int, label: Optional[str] = None) -> IntegralLattice:
    """L(k): entrywise k * gram."""
    if k == 0:
        raise InvalidGramError("cannot rescale a lattice by 0")
    if label is None and lattice.label:
        label = f"{lattice.label}({k})"
    return IntegralLattice(tuple(tuple(k * x for x in row) for row in lattice.gram), label=label)


def signature(lattice: IntegralLattice) -> tuple[int, int]:
    """(positive, negative) inertia indices, computed exactly."""
    return engine.signature(lattice.gram)


# =============================================================================
# STANDARD LATTICES
# =============================================================================

_U = ((0, 1), (1, 0))

# Cartan matrix of E8 (Bourbaki numbering), positive definite, det 1
_E8 = (
    (2, 0, -1, 0, 0, 0, 0, 0),
    (0, 2, 0, -1, 0, 0, 0, 0),
    (-1, 0, 2, -1, 0, 0, 0, 0),
    (0, -1, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)


def standard(name: Union[str, StandardLattice], param: Optional[int] = None) -> IntegralLattice:
    """Build a named lattice.

    Args:
        name: One of U, U(k), E8, E8-, <m>, K3, Mukai, K3n
        param: k for U(k), m for <m> (even), n for K3n (n >= 2)

    Returns:
        The named IntegralLattice
    """
    kind = name if isinstance(name, StandardLattice) else StandardLattice.from_string(name)
    if kind.takes_parameter and param is None:
        raise InvalidGramError(f"{kind.display_name} needs an integer parameter")

    if kind is StandardLattice.U:
        return IntegralLattice(_U, label="U")
    if kind is StandardLattice.U_SCALED:
        return rescale(IntegralLattice(_U), param, label=f"U({param})")
    if kind is StandardLattice.E8:
        return IntegralLattice(_E8, label="E8")
    if kind is StandardLattice.E8_NEG:
        return rescale(IntegralLattice(_E8), -1, label="E8(-1)")
    if kind is StandardLattice.DIAGONAL:
        if param % 2:
            raise InvalidGramError(f"<{param}> is odd; only even lattices are supported")
        return IntegralLattice(((param,),), label=f"<{param}>")

    u = standard(StandardLattice.U)
    e8 = standard(StandardLattice.E8_NEG)
    if kind is StandardLattice.K3:
        return direct_sum(u, u, u, e8, e8, label="K3")
    if kind is StandardLattice.MUKAI:
        return direct_sum(u, u, u, u, e8, e8, label="Mukai")
    if param < 2:
        raise InvalidGramError(f"K3n requires n >= 2, got {param}")
    return direct_sum(
        standard(StandardLattice.K3),
        standard(StandardLattice.DIAGONAL, -2 * param - 2),
        label=f"K3n({param})",
    )


__all__ = [
    "IntegralLattice",
    "LatticeVector",
    "Sublattice",
    "divisibility",
    "is_primitive",
    "saturate",
    "orthogonal_complement",
    "direct_sum",
    "rescale",
    "signature",
    "standard",
]
