from src.witt.arith import (
    current_strategy,
    frobenius,
    iterate_verschiebung,
    mul_int,
    teichmuller,
    teichmuller_expansion,
    use_strategy,
    verschiebung,
    witt_arith,
    witt_frobenius_perfect,
    witt_invert,
    witt_pow,
)
from src.witt.dwork import dwork_condition_p2, p2_over_p, p2_over_p_ghosts
from src.witt.ghost import GhostSeq, dwork_lift, ghost, ghost_lift, lifted_precisions
from src.witt.homs import check_pi_F_hom, check_teichmuller_homs, iterate_frobenius, pi_F, witt_map
from src.witt.laws import (
    ring_laws_check,
    strategy_equivalence_check,
    structural_identities_check,
    unit_criterion_check,
)
from src.witt.polys import WittPolyFamily, universal_polys
from src.witt.vector import WittVector, enumerate_vectors, random_vector

__all__ = [
    "GhostSeq",
    "WittPolyFamily",
    "WittVector",
    "check_pi_F_hom",
    "check_teichmuller_homs",
    "current_strategy",
    "dwork_condition_p2",
    "dwork_lift",
    "enumerate_vectors",
    "frobenius",
    "ghost",
    "ghost_lift",
    "iterate_frobenius",
    "iterate_verschiebung",
    "lifted_precisions",
    "mul_int",
    "p2_over_p",
    "p2_over_p_ghosts",
    "pi_F",
    "random_vector",
    "ring_laws_check",
    "strategy_equivalence_check",
    "structural_identities_check",
    "teichmuller",
    "teichmuller_expansion",
    "unit_criterion_check",
    "universal_polys",
    "use_strategy",
    "verschiebung",
    "witt_arith",
    "witt_frobenius_perfect",
    "witt_invert",
    "witt_map",
    "witt_pow",
]
