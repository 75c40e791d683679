"""Standard lattice names.

Simple enum-based catalogue of the named lattices the toolkit can build.

Usage:
    from src.lattice.lattice_types import StandardLattice

    name = StandardLattice.from_string("E8-")
    lattice = standard(name)
"""

from enum import Enum


class StandardLattice(str, Enum):
    """Named lattices accepted by ``standard``."""

    U = "U"
    U_SCALED = "U(k)"
    E8 = "E8"
    E8_NEG = "E8-"
    DIAGONAL = "<m>"
    K3 = "K3"
    MUKAI = "Mukai"
    K3N = "K3n"

    @classmethod
    def from_string(cls, value: str) -> "StandardLattice":
        """Convert string to StandardLattice, accepting common spellings."""
        aliases = {
            "u": cls.U,
            "u(k)": cls.U_SCALED,
            "uk": cls.U_SCALED,
            "e8": cls.E8,
            "e8-": cls.E8_NEG,
            "e8(-1)": cls.E8_NEG,
            "<m>": cls.DIAGONAL,
            "disc": cls.DIAGONAL,
            "k3": cls.K3,
            "mukai": cls.MUKAI,
            "k3n": cls.K3N,
            "k3^[n]": cls.K3N,
        }
        key = value.strip().lower()
        if key not in aliases:
            raise ValueError(f"Unknown standard lattice: {value}")
        return aliases[key]

    @property
    def display_name(self) -> str:
        """Human-readable name."""
        names = {
            StandardLattice.U: "hyperbolic plane U",
            StandardLattice.U_SCALED: "rescaled hyperbolic plane U(k)",
            StandardLattice.E8: "E8",
            StandardLattice.E8_NEG: "E8(-1)",
            StandardLattice.DIAGONAL: "rank-one lattice <m>",
            StandardLattice.K3: "K3 lattice U^3+E8(-1)^2",
            StandardLattice.MUKAI: "Mukai lattice U^4+E8(-1)^2",
            StandardLattice.K3N: "K3^[n] lattice U^3+E8(-1)^2+<-2n-2>",
        }
        return names[self]

    @property
    def takes_parameter(self) -> bool:
        """Whether the name needs an integer parameter (k, m or n)."""
        return self in (StandardLattice.U_SCALED, StandardLattice.DIAGONAL, StandardLattice.K3N)
