"""Finite quadratic forms on discriminant groups A_L = L*/L.

For an even lattice L with Gram G, Smith reduction left * G * right = D gives
A_L ≅ ⊕ Z/d_i over the invariant factors d_i > 1. The canonical generator
for d_i is column i of ``right`` divided by d_i (rational coordinates in the
basis of L). A dual vector x is reduced by computing left * (G x) and taking
the entries modulo d_i.

Values:
- q̄(x) = x^T G x in Q/2Z, normalised into [0, 2)
- b(x, y) = x^T G y in Q/Z, normalised into [0, 1)
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd, lcm
from typing import Optional, Sequence

from .errors import HomomorphismError, NotDualVectorError
from .intlat import IntegralLattice
from .normal_form import mat_vec, snf


# =============================================================================
# Q/2Z AND Q/Z
# =============================================================================

def mod_two(x: Fraction) -> Fraction:
    """Representative of x in [0, 2)."""
    x = Fraction(x)
    return x - 2 * floor(x / 2)


def mod_one(x: Fraction) -> Fraction:
    """Representative of x in [0, 1)."""
    x = Fraction(x)
    return x - floor(x)


def _rational_pair(gram, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    n = len(gram)
    return sum((x[i] * gram[i][j] * y[j] for i in range(n) for j in range(n)), Fraction(0))


# =============================================================================
# FORMS AND ELEMENTS
# =============================================================================

@dataclass(frozen=True)
class FiniteQuadraticForm:
    """Discriminant form of ``home``, optionally twisted by -1."""

    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    home: IntegralLattice = field(repr=False)
    sign: int = 1
    # rows of the Smith left transform for the nontrivial factors
    reducer: tuple[tuple[int, ...], ...] = field(default=(), repr=False, compare=False)

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def q(self, x: Sequence[Fraction]) -> Fraction:
        """q̄ of a rational representative, in [0, 2)."""
        return mod_two(self.sign * _rational_pair(self.home.gram, x, x))

    def b(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        """Pairing of two rational representatives, in [0, 1)."""
        return mod_one(self.sign * _rational_pair(self.home.gram, x, y))

    @property
    def q_values(self) -> tuple[Fraction, ...]:
        return tuple(self.q(g) for g in self.generators)

    @property
    def gram_q2z(self) -> tuple[tuple[Fraction, ...], ...]:
        """Diagonal: q̄ in Q/2Z; off-diagonal: pairing in Q/Z."""
        k = len(self.generators)
        return tuple(
            tuple(self.q(self.generators[i]) if i == j
                  else self.b(self.generators[i], self.generators[j]) for j in range(k))
            for i in range(k)
        )

    def zero(self) -> "DiscElement":
        return DiscElement(tuple(0 for _ in self.invariant_factors), self)

    def generator(self, i: int) -> "DiscElement":
        coeffs = [0] * len(self.invariant_factors)
        coeffs[i] = 1
        return DiscElement(tuple(coeffs), self)

    def elements(self) -> list["DiscElement"]:
        """Every element, in lexicographic coefficient order."""
        out = [()]
        for d in self.invariant_factors:
            out = [c + (k,) for c in out for k in range(d)]
        return [DiscElement(c, self) for c in out]


@dataclass(frozen=True)
class DiscElement:
    """Element of a discriminant group in generator coordinates."""

    coeffs: tuple[int, ...]
    form: FiniteQuadraticForm = field(repr=False, compare=False)

    def __post_init__(self):
        factors = self.form.invariant_factors
        if len(self.coeffs) != len(factors):
            raise ValueError("coefficient count does not match the number of generators")
        object.__setattr__(
            self, "coeffs", tuple(int(c) % d for c, d in zip(self.coeffs, factors))
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiscElement):
            return NotImplemented
        return self.coeffs == other.coeffs and self.form.invariant_factors == other.form.invariant_factors

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "DiscElement") -> "DiscElement":
        return DiscElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.form)

    def __neg__(self) -> "DiscElement":
        return DiscElement(tuple(-a for a in self.coeffs), self.form)

    def __rmul__(self, k: int) -> "DiscElement":
        return DiscElement(tuple(k * a for a in self.coeffs), self.form)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def order(self) -> int:
        out = 1
        for c, d in zip(self.coeffs, self.form.invariant_factors):
            out = lcm(out, d // gcd(c, d))
        return out

    @property
    def rational_coords(self) -> tuple[Fraction, ...]:
        n = self.form.home.rank
        return tuple(
            sum((c * g[j] for c, g in zip(self.coeffs, self.form.generators)), Fraction(0))
            for j in range(n)
        )

    @property
    def q(self) -> Fraction:
        return self.form.q(self.rational_coords)

    def b(self, other: "DiscElement") -> Fraction:
        return self.form.b(self.rational_coords, other.rational_coords)


# =============================================================================
# OPERATIONS
# =============================================================================

def discriminant_form(lattice: IntegralLattice) -> FiniteQuadraticForm:
    """A_L with SNF-canonical generators.

    Args:
        lattice: Non-degenerate even lattice

    Returns:
        FiniteQuadraticForm whose order equals |det gram|
    """
    dec = snf(lattice.gram)
    idx = dec.nontrivial
    n = lattice.rank
    generators = tuple(
        tuple(Fraction(dec.right[j][i], dec.d[i]) for j in range(n)) for i in idx
    )
    return FiniteQuadraticForm(
        invariant_factors=tuple(dec.d[i] for i in idx),
        generators=generators,
        home=lattice,
        sign=1,
        reducer=tuple(dec.left[i] for i in idx),
    )


def element_of(form: FiniteQuadraticForm, coords: Sequence) -> DiscElement:
    """Class of a dual vector given by rational coordinates in the home basis."""
    x = [Fraction(c) for c in coords]
    if len(x) != form.home.rank:
        raise NotDualVectorError("not a dual vector: wrong number of coordinates")
    y = mat_vec(form.home.gram, x)
    if any(v.denominator != 1 for v in y):
        raise NotDualVectorError("not a dual vector")
    y = [int(v) for v in y]
    return DiscElement(tuple(sum(r * v for r, v in zip(row, y)) for row in form.reducer), form)


def negate_form(form: FiniteQuadraticForm) -> FiniteQuadraticForm:
    """Same group, all values negated: the (-1)-twist A_L(-1)."""
    return FiniteQuadraticForm(
        invariant_factors=form.invariant_factors,
        generators=form.generators,
        home=form.home,
        sign=-form.sign,
        reducer=form.reducer,
    )


def same_element(x: DiscElement, y: DiscElement) -> bool:
    return x.form.home == y.form.home and x.coeffs == y.coeffs


def _generates(images: Sequence[DiscElement], target: FiniteQuadraticForm) -> bool:
    """Whether the images generate the whole target group."""
    k = len(target.invariant_factors)
    if k == 0:
        return True
    relations = [list(img.coeffs) for img in images]
    relations += [[d if i == j else 0 for j in range(k)] for i, d in enumerate(target.invariant_factors)]
    dec = snf(relations)
    return dec.rank == k and all(x == 1 for x in dec.d[:k])


def forms_anti_isometric_elementwise(
    source: FiniteQuadraticForm,
    target: FiniteQuadraticForm,
    images: Sequence[DiscElement],
) -> bool:
    """Check that generator_i -> images[i] is an anti-isometry source -> target.

    Raises HomomorphismError if the images do not define a homomorphism
    (an image of order not dividing its generator's invariant factor).
    Returns False when the map is a homomorphism but not bijective, or
    fails q_target(image) = -q_source(source) on generators or pairings.
    """
    if len(images) != len(source.invariant_factors):
        raise HomomorphismError(
            f"need {len(source.invariant_factors)} images, got {len(images)}"
        )
    for i, (img, d) in enumerate(zip(images, source.invariant_factors)):
        if img.form.invariant_factors != target.invariant_factors:
            raise HomomorphismError(f"image {i} does not live in the target form")
        if not (d * img).is_zero:
            raise HomomorphismError(f"non-homomorphic image list: {d} * image[{i}] != 0")

    if source.order != target.order or not _generates(images, target):
        return False

    for i, img in enumerate(images):
        if img.q != mod_two(-source.q(source.generators[i])):
            return False
        for j in range(i + 1, len(images)):
            expected = mod_one(-source.b(source.generators[i], source.generators[j]))
            if img.b(images[j]) != expected:
                return False
    return True


def describe_form(form: FiniteQuadraticForm, name: Optional[str] = None) -> str:
    """One-line summary, e.g. 'A_L ≅ Z/2 ⊕ Z/4'."""
    label = name or "A"
    if form.is_trivial:
        return f"{label} trivial"
    return f"{label} ≅ " + " ⊕ ".join(f"Z/{d}" for d in form.invariant_factors)


__all__ = [
    "FiniteQuadraticForm",
    "DiscElement",
    "discriminant_form",
    "element_of",
    "negate_form",
    "forms_anti_isometric_elementwise",
    "same_element",
    "describe_form",
    "mod_two",
    "mod_one",
]
