"""K3 layer: Mukai vectors, Beauville-Mukai systems, extended Mukai lattices."""

from .mukai import (
    K3Model,
    MukaiVector,
    ModuliKind,
    ModuliReport,
    extended_ns,
    moduli_exists,
    moduli_report,
    caldararu_class,
    orbit_equivalent,
    ns_of_moduli,
)
from .beauville_mukai import (
    BMConfig,
    TorsorClass,
    BirationalityCertificate,
    bm_birational,
    div_vd,
    sha_kernel_order,
    torsor_class,
    v_d,
)
from .extended_mukai import ExtMukaiReport, derived_distinct

__all__ = [
    # Mukai
    "K3Model",
    "MukaiVector",
    "ModuliKind",
    "ModuliReport",
    "extended_ns",
    "moduli_exists",
    "moduli_report",
    "caldararu_class",
    "orbit_equivalent",
    "ns_of_moduli",
    # Beauville-Mukai
    "BMConfig",
    "TorsorClass",
    "BirationalityCertificate",
    "bm_birational",
    "div_vd",
    "sha_kernel_order",
    "torsor_class",
    "v_d",
    # Extended Mukai
    "ExtMukaiReport",
    "derived_distinct",
]
