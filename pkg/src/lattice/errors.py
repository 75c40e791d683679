"""Domain errors for lattice computations.

Every error is a ``ValueError`` so callers that only expect bad input keep
working; the ``code`` attribute is what the CLI prints in structured errors.
"""


class LatticeError(ValueError):
    """Base class for all domain errors."""

    code = "lattice_error"

    def to_dict(self) -> dict:
        return {"code": self.code, "message": str(self)}


class InvalidGramError(LatticeError):
    code = "invalid_gram"


class DegenerateLatticeError(LatticeError):
    code = "degenerate_lattice"


class DimensionMismatchError(LatticeError):
    code = "dimension_mismatch"


class ZeroVectorError(LatticeError):
    code = "zero_vector"


class NotPrimitiveError(LatticeError):
    code = "not_primitive"


class NotDualVectorError(LatticeError):
    code = "not_dual_vector"


class NotUnimodularError(LatticeError):
    code = "not_unimodular"


class HomomorphismError(LatticeError):
    code = "not_homomorphism"


class WitnessError(LatticeError):
    code = "invalid_witness"


class HypothesisError(LatticeError):
    code = "hypothesis_not_verified"


class PreconditionError(LatticeError):
    code = "precondition"


class InconsistencyError(LatticeError):
    """Two independent computation paths disagreed."""

    code = "internal_inconsistency"


__all__ = [
    "LatticeError",
    "InvalidGramError",
    "DegenerateLatticeError",
    "DimensionMismatchError",
    "ZeroVectorError",
    "NotPrimitiveError",
    "NotDualVectorError",
    "NotUnimodularError",
    "HomomorphismError",
    "WitnessError",
    "HypothesisError",
    "PreconditionError",
    "InconsistencyError",
]
