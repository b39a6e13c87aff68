"""
The Z_p-power map n ↦ q^n on the q-de Rham model.
Sprint: S6

    q^n = Σ_{i<M} n(n-1)…(n-i+1)/i! · (q - 1)^i,   truncated at (q - 1)^M.

n is a p-adic integer known modulo p^K.  Dividing the falling factorial by
i! costs v_p(i!) digits, so the result is exact at precision
K - max_{i<M} v_p(i!); for M ≤ p nothing is lost.
"""

from __future__ import annotations

import itertools
import logging
from math import comb
from typing import Optional

from src.checks.tally import Tally, exhaustive_or_sampled
from src.errors import IncompatibleOperandsError, PrecisionError
from src.models.schemas import Report
from src.prisms.model import PrismModel
from src.rings import Element, substitution

logger = logging.getLogger(__name__)


def _factorial_valuation(p: int, i: int) -> int:
    v, power = 0, p
    while power <= i:
        v += i // power
        power *= p
    return v


def q_power_loss(p: int, M: int) -> int:
    """p-adic digits lost to the i! denominators of the series truncated at (q - 1)^M."""
    return max((_factorial_valuation(p, i) for i in range(M)), default=0)


def q_power_precision(model: PrismModel) -> int:
    return model.K - q_power_loss(model.p, model.M)


def q_power(n: int, model: PrismModel, precision: Optional[int] = None) -> Element:
    """
    q^n for n ∈ Z_p given modulo p^K, at precision `precision`
    (default: the best available, K - q_power_loss).
    """
    if model.kind != "q_de_rham":
        raise IncompatibleOperandsError(f"q^n is defined on the q-de Rham prism, not {model.kind}")
    p = model.p
    available = q_power_precision(model)
    if available < 1:
        raise PrecisionError(
            f"(q-1)^{model.M} needs {q_power_loss(p, model.M)} digits of p-adic slack, model has K={model.K}"
        )
    precision = available if precision is None else precision
    if not 1 <= precision <= available:
        raise PrecisionError(f"q^n is known to precision {available}, {precision} was requested")
    target = model.lowered(model.K - precision)
    rep = n % p ** model.K
    t = target.ring.gen
    total = target.ring.zero
    for i in range(model.M):
        total = total + t ** i * comb(rep, i)
    logger.debug("q^%d over %s at precision %d", n, model.name, precision)
    return total


def q_power_action_check(model: PrismModel, sample_count: Optional[int] = 50) -> Report:
    """
    On pairs (n, m) of p-adic integers mod p^K:
        q^n · q^m = q^{n+m},   (q^n)^m = q^{nm},   φ(q^n) = q^{pn};
    for integer n ≥ 0, q^n matches repeated multiplication.
    """
    tally = Tally(f"q_power_action[{model.name}]")
    p, modulus = model.p, model.p ** model.K
    low = model.lowered(model.K - q_power_precision(model))
    q = low.coordinate
    for n in range(2 * p + 2):
        tally.check(q_power(n, model) == q ** n, "q^n differs from repeated multiplication", n=n)
    tally.check(q_power(1 + p, model) == q * low.phi(q), "q^{1+p} != q·φ(q)")
    tally.check(q_power(-1, model) * q == 1, "q^{-1} is not the inverse of q")

    pairs = exhaustive_or_sampled(
        modulus ** 2,
        lambda: itertools.product(range(modulus), repeat=2),
        lambda rng: (rng.randrange(modulus), rng.randrange(modulus)),
        tally=tally,
        sample_count=sample_count,
    )
    for n, m in pairs:
        qn, qm = q_power(n, model), q_power(m, model)
        tally.check(qn * qm == q_power(n + m, model), "q^n q^m != q^{n+m}", n=n, m=m)
        act = substitution(low.ring, qn - 1, label=f"q↦q^{n}")
        tally.check(act(qm) == q_power(n * m, model), "(q^n)^m != q^{nm}", n=n, m=m)
        tally.check(low.phi(qn) == q_power(p * n, model), "φ(q^n) != q^{pn}", n=n)
    tally.note("precision", low.K)
    return tally.report()
