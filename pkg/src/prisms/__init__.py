from src.prisms.delta import delta, delta_laws_check, delta_precision
from src.prisms.economic import economic_consistency, lubin_tate_teichmuller_check, teichmuller_roots
from src.prisms.joyal import (
    cyclotomic_tower_check,
    distinguished_check,
    joyal_split,
    joyal_split_check,
    split_exact,
)
from src.prisms.model import PRISM_KINDS, PrismModel, make_prism
from src.prisms.qpower import q_power, q_power_action_check, q_power_loss, q_power_precision

__all__ = [
    "PRISM_KINDS",
    "PrismModel",
    "cyclotomic_tower_check",
    "delta",
    "delta_laws_check",
    "delta_precision",
    "distinguished_check",
    "economic_consistency",
    "joyal_split",
    "joyal_split_check",
    "lubin_tate_teichmuller_check",
    "make_prism",
    "q_power",
    "q_power_action_check",
    "q_power_loss",
    "q_power_precision",
    "split_exact",
    "teichmuller_roots",
]
