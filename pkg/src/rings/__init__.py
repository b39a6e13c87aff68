from src.rings.homs import (
    RingHom,
    apply_hom,
    factor_projection,
    frobenius_lift,
    reduction,
    residue_field_map,
    specialization,
    substitution,
)
from src.rings.ring import Element, Ring, make_ring, zmod
from src.rings.spec import LocalSpec, RingSpec, parse_ring_spec

__all__ = [
    "Element",
    "LocalSpec",
    "Ring",
    "RingHom",
    "RingSpec",
    "apply_hom",
    "factor_projection",
    "frobenius_lift",
    "make_ring",
    "parse_ring_spec",
    "reduction",
    "residue_field_map",
    "specialization",
    "substitution",
    "zmod",
]
