from src.sigma.charp import affine_action, char_p_identity_suite
from src.sigma.modules import (
    ModulePoint,
    module_identity_check,
    module_points,
    rescale_module_point,
    transport,
    transport_check,
    xi,
    xi_quasi_ideal_check,
)
from src.sigma.morphisms import (
    LOCUS_TAGS,
    classify_factors,
    classify_locus,
    f_prime,
    f_prime_check,
    j_minus,
    j_plus_data,
    j_plus_law_check,
    locus_check,
)
from src.sigma.points import (
    GroupElem,
    SigmaPoint,
    action_check,
    de_rham_point,
    economic_points,
    g_act,
    g_inverse,
    g_law,
    gmat_compose,
    group_law_check,
    is_gf_subgroup,
    is_teichmuller_locus,
    make_sigma_point,
    normalize_gamma,
    orbit_primitivity_check,
    random_economic_point,
    rescale,
    rescale_check,
)
from src.sigma.primitive import (
    contract_to_p,
    contracting_check,
    degeneracy_check,
    divides_primitive_check,
    frobenius_primitivity_check,
    is_primitive,
    orbit_normalize,
    orbit_normalize_check,
    perfect_normal_form,
    perfect_normal_form_check,
    primitive_times_unit_check,
    primitive_vectors,
    unit_to_one,
    unit_to_one_check,
)

__all__ = [
    "GroupElem",
    "LOCUS_TAGS",
    "ModulePoint",
    "SigmaPoint",
    "action_check",
    "affine_action",
    "char_p_identity_suite",
    "classify_factors",
    "classify_locus",
    "contract_to_p",
    "contracting_check",
    "de_rham_point",
    "degeneracy_check",
    "divides_primitive_check",
    "economic_points",
    "f_prime",
    "f_prime_check",
    "frobenius_primitivity_check",
    "g_act",
    "g_inverse",
    "g_law",
    "gmat_compose",
    "group_law_check",
    "is_gf_subgroup",
    "is_primitive",
    "is_teichmuller_locus",
    "j_minus",
    "j_plus_data",
    "j_plus_law_check",
    "locus_check",
    "make_sigma_point",
    "module_identity_check",
    "module_points",
    "normalize_gamma",
    "orbit_normalize",
    "orbit_normalize_check",
    "orbit_primitivity_check",
    "perfect_normal_form",
    "perfect_normal_form_check",
    "primitive_times_unit_check",
    "primitive_vectors",
    "random_economic_point",
    "rescale",
    "rescale_check",
    "rescale_module_point",
    "transport",
    "transport_check",
    "unit_to_one",
    "unit_to_one_check",
    "xi",
    "xi_quasi_ideal_check",
]
