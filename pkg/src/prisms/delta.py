"""
The δ-structure of a prism model: δ(a) = (φ(a) - a^p) / p.
Sprint: S6

a is known modulo p^K, so φ(a) - a^p is known modulo p^K and the quotient
only modulo p^{K-1}: δ lands in the model lowered by one digit.
"""

from __future__ import annotations

import itertools
import logging
from math import comb
from typing import Optional

from src.checks.tally import Tally, exhaustive_or_sampled
from src.errors import DivisibilityError, PrecisionError
from src.models.schemas import Report
from src.prisms.model import PrismModel
from src.rings import Element

logger = logging.getLogger(__name__)


def delta_precision(model: PrismModel) -> int:
    return model.K - 1


def delta(model: PrismModel, a: Element | int) -> Element:
    """δ(a) in Z/p^{K-1}[t]/(t^M)."""
    if model.K < 2:
        raise PrecisionError(f"δ needs K >= 2 to keep any digit, model has K={model.K}")
    ring, p = model.ring, model.p
    a = ring.element(a)
    diff = ring.sub_raw(model.phi.apply_raw(a.raw), ring.pow_raw(a.raw, p))
    if not ring.divisible_raw(diff, p):
        raise DivisibilityError(f"φ(a) - a^{p} is not divisible by {p} at a = {a}; φ is not a Frobenius lift")
    lower = model.lowered(1).ring
    quotient = ring.divide_exact_raw(diff, p)
    logger.debug("δ(%s) over %s, precision %d", a, model.name, model.K - 1)
    return Element(lower, lower.reduce_raw(quotient, ring))


def _sum_correction(lowered: PrismModel, a: Element, b: Element) -> Element:
    """Σ_{0<i<p} (C(p,i)/p) a^i b^{p-i}."""
    p = lowered.p
    total = lowered.ring.zero
    for i in range(1, p):
        total = total + (a ** i) * (b ** (p - i)) * (comb(p, i) // p)
    return total


def delta_laws_check(model: PrismModel, sample_count: Optional[int] = None) -> Report:
    """
    On pairs (a, b):
        δ(ab)    = a^p δ(b) + b^p δ(a) + p δ(a) δ(b)
        δ(a + b) = δ(a) + δ(b) - Σ_{0<i<p} (C(p,i)/p) a^i b^{p-i}
    plus δ(0) = δ(1) = 0.
    """
    tally = Tally(f"delta_laws[{model.name}]")
    ring, p = model.ring, model.p
    lowered = model.lowered(1)
    down = model.reduce_to(lowered)
    tally.check(delta(model, 0) == 0 and delta(model, 1) == 0, "δ(0) or δ(1) is not 0")

    pairs = exhaustive_or_sampled(
        ring.cardinality ** 2,
        lambda: itertools.product(ring.elements(), repeat=2),
        lambda rng: (ring.random_element(rng), ring.random_element(rng)),
        tally=tally,
        sample_count=sample_count,
    )
    for a, b in pairs:
        da, db = delta(model, a), delta(model, b)
        la, lb = down(a), down(b)
        product = la ** p * db + lb ** p * da + da * db * p
        tally.check(delta(model, a * b) == product, "product rule", a=a, b=b)
        total = da + db - _sum_correction(lowered, la, lb)
        tally.check(delta(model, a + b) == total, "sum rule", a=a, b=b)
    tally.note("delta_precision", delta_precision(model))
    tally.note("model", model.name)
    return tally.report()
