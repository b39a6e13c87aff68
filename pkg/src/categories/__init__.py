from src.categories.coeq import (
    CoeqInstance,
    WordClosure,
    canonical_degree_one,
    closed_form_word,
    coeq_bruteforce,
    coeq_closed_form,
    coeq_crosscheck,
    coeq_groupoid_classes,
    format_word,
    lax_colimit_instance,
    saturate,
)
from src.categories.fincat import (
    Arrow,
    FinCategory,
    Functor,
    GradedCategory,
    identity_functor,
    inclusion,
    is_left_adjoint,
    underlying_groupoid_classes,
)
from src.categories.lax import lax_quotient
from src.categories.nodal import admissible_windows, nodal_model_check
from src.categories.toy import (
    cross_points,
    gamma_double_prime,
    gamma_double_prime_check,
    toy_instance,
    toy_S_prime,
)

__all__ = [
    "Arrow",
    "CoeqInstance",
    "FinCategory",
    "Functor",
    "GradedCategory",
    "WordClosure",
    "admissible_windows",
    "canonical_degree_one",
    "closed_form_word",
    "coeq_bruteforce",
    "coeq_closed_form",
    "coeq_crosscheck",
    "coeq_groupoid_classes",
    "cross_points",
    "format_word",
    "gamma_double_prime",
    "gamma_double_prime_check",
    "identity_functor",
    "inclusion",
    "is_left_adjoint",
    "lax_colimit_instance",
    "lax_quotient",
    "nodal_model_check",
    "saturate",
    "toy_S_prime",
    "toy_instance",
    "underlying_groupoid_classes",
]
