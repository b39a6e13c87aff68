from src.sharp.dp import (
    DPElement,
    coassociativity_check,
    comultiply,
    dp_comult,
    dp_content,
    dp_multiply,
    dp_reduce,
    evaluate,
    not_additive_check,
    primitive_part,
    rewriting_confluence_check,
    tensor,
)
from src.sharp.joyal import (
    divided_power_coordinates_check,
    joyal_coordinates,
    joyal_sign,
    joyal_to_divided_power,
)
from src.sharp.kernel import (
    SharpPoint,
    annihilator_check,
    module_action_check,
    quasi_ideal_check,
    sharp_points,
    unit_product_identity_check,
    unit_splitting,
    unit_splitting_check,
)

__all__ = [
    "DPElement",
    "SharpPoint",
    "annihilator_check",
    "coassociativity_check",
    "comultiply",
    "divided_power_coordinates_check",
    "dp_comult",
    "dp_content",
    "dp_multiply",
    "dp_reduce",
    "evaluate",
    "joyal_coordinates",
    "joyal_sign",
    "joyal_to_divided_power",
    "module_action_check",
    "not_additive_check",
    "primitive_part",
    "quasi_ideal_check",
    "rewriting_confluence_check",
    "sharp_points",
    "tensor",
    "unit_product_identity_check",
    "unit_splitting",
    "unit_splitting_check",
]
