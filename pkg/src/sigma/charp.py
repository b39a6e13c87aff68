"""
Identities that hold over rings of characteristic p.
Sprint: S4

With v_-^p·ζ_0 = 0 the affine action becomes
    ([ζ_0] + pα) / (1 - [v_-^p]α) = [ζ_0] + V(h(F(α))),
    h(β) = β / (1 - [v_-^{p^2}]β),
so the subgroup F(α) = 0 fixes the Teichmüller locus.
"""

from __future__ import annotations

import itertools
import logging
import random
from typing import Optional

from src.checks.tally import Tally, exhaustive_or_sampled
from src.errors import IncompatibleOperandsError
from src.models.schemas import Report
from src.rings import Element, Ring
from src.sigma.modules import module_points, transport, xi
from src.sigma.points import (
    GroupElem,
    g_act,
    is_gf_subgroup,
    make_sigma_point,
    random_economic_point,
    random_group_elem,
    v_power,
)
from src.witt import (
    WittVector,
    enumerate_vectors,
    frobenius,
    mul_int,
    random_vector,
    teichmuller,
    verschiebung,
    witt_invert,
)

logger = logging.getLogger(__name__)


def h(v_minus: Element, beta: WittVector) -> WittVector:
    """β / (1 - [v_-^{p^2}]β)."""
    p = beta.p
    one = WittVector.one(beta.ring, beta.n)
    return beta * witt_invert(one - v_power(v_minus, p * p, beta.n) * beta)


def affine_action(v_minus: Element, zeta0: Element, alpha: WittVector) -> tuple[WittVector, WittVector]:
    """Both sides of the char-p formula for the action on [ζ_0]."""
    ring, n, p = alpha.ring, alpha.n, alpha.p
    base = teichmuller(zeta0, n, degree=p)
    w = WittVector.one(ring, n) - v_power(v_minus, p, n) * alpha
    left = witt_invert(w) * (base + mul_int(p, alpha))
    right = base + verschiebung(h(v_minus, frobenius(alpha)))
    return left, right


def _divisor_pairs(ring: Ring) -> list[tuple[Element, Element]]:
    p = ring.p
    return [(v, z) for v, z in itertools.product(ring.elements(), repeat=2)
            if (v ** p * z).raw == ring.zero_raw]


def char_p_identity_suite(ring: Ring, n: int = 3, samples: int = 200,
                          seed: Optional[int] = None) -> Report:
    """
    Over R of characteristic p:
      (a) the affine action on [ζ_0] when v_-^p ζ_0 = 0,
      (b) module transport keeps ξ,
      (c) α with F(α) = 0 fixes Teichmüller-locus points.
    """
    if not ring.is_char_p:
        raise IncompatibleOperandsError(f"{ring} does not have characteristic p")
    tally = Tally(f"char_p_identities(n={n})", seed=seed)
    p = ring.p
    pairs = _divisor_pairs(ring)
    alphas_size = ring.cardinality ** n

    def everything():
        return itertools.product(pairs, enumerate_vectors(ring, n, p))

    def one_sample(rng: random.Random):
        return pairs[rng.randrange(len(pairs))], random_vector(ring, n, rng, p)

    for (v, z0), alpha in exhaustive_or_sampled(len(pairs) * alphas_size, everything, one_sample,
                                                tally=tally, sample_count=samples):
        w = WittVector.one(ring, n) - v_power(v, p, n) * alpha
        if not w.is_unit():
            tally.count("skipped_non_unit")
            continue
        left, right = affine_action(v, z0, alpha)
        tally.check(left == right, "(a) affine action on [ζ_0]", v=v, zeta0=z0, alpha=alpha)
        if is_gf_subgroup(alpha):
            point = make_sigma_point(ring, v, teichmuller(z0, n, degree=p))
            moved = g_act(point, GroupElem(alpha, v))
            tally.check(moved == point, "(c) F(α) = 0 moved a Teichmüller-locus point",
                        v=v, zeta0=z0, alpha=alpha)
            tally.count("gf_subgroup")

    rng = random.Random(tally.seed)
    for _ in range(min(samples, 20)):
        point = random_economic_point(ring, n, rng)
        mps = module_points(point)
        m = mps[rng.randrange(len(mps))]
        g = random_group_elem(point, rng, "Gmat")
        moved = transport(m, g)
        tally.check(xi(moved) == xi(m), "(b) transport changed ξ", point=point, m=m, g=g)
    tally.note("divisor_pairs", len(pairs))
    return tally.report()
