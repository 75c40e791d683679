"""K3 Lattice Obstructions - exact lattice arithmetic for moduli of sheaves on K3 surfaces."""

__version__ = "0.1.0"
