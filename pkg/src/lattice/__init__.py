"""Exact lattice arithmetic: normal forms, lattices, discriminant forms, oracles."""

from .algebra import ExactLinearAlgebra, engine
from .discform import (
    DiscElement,
    FiniteQuadraticForm,
    discriminant_form,
    element_of,
    forms_anti_isometric_elementwise,
    negate_form,
)
from .errors import LatticeError
from .intlat import (
    IntegralLattice,
    LatticeVector,
    Sublattice,
    direct_sum,
    divisibility,
    is_primitive,
    orthogonal_complement,
    rescale,
    saturate,
    signature,
    standard,
)
from .lattice_types import StandardLattice
from .normal_form import SnfDecomposition, hermite_rows, snf, solve_integer
from .oracles import (
    CokernelReport,
    GlueReport,
    cokernel_sweep,
    glue_check,
    glue_sweep,
    transcendental_cokernel,
    unimodular_envelope,
)

__all__ = [
    # Exact algebra
    "ExactLinearAlgebra",
    "engine",
    "SnfDecomposition",
    "snf",
    "hermite_rows",
    "solve_integer",
    # Lattices
    "IntegralLattice",
    "LatticeVector",
    "Sublattice",
    "StandardLattice",
    "direct_sum",
    "divisibility",
    "is_primitive",
    "orthogonal_complement",
    "rescale",
    "saturate",
    "signature",
    "standard",
    # Discriminant forms
    "FiniteQuadraticForm",
    "DiscElement",
    "discriminant_form",
    "element_of",
    "negate_form",
    "forms_anti_isometric_elementwise",
    # Oracles
    "GlueReport",
    "CokernelReport",
    "glue_check",
    "transcendental_cokernel",
    "unimodular_envelope",
    "glue_sweep",
    "cokernel_sweep",
    # Errors
    "LatticeError",
]
