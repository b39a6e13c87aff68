"""
F', j_- and j_+ at element level, and locus tags.
Sprint: S4
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from typing import Literal, Optional

from src.checks.tally import Tally, exhaustive_or_sampled
from src.errors import ConsistencyError, IncompatibleOperandsError, NotAUnitError, PrimitivityError
from src.models.schemas import Report
from src.rings import Ring
from src.sigma.points import (
    SigmaPoint,
    economic_points,
    g_act,
    make_sigma_point,
    random_economic_point,
    random_group_elem,
)
from src.sigma.primitive import is_primitive, primitive_vectors, random_primitive
from src.witt import (
    WittVector,
    frobenius,
    mul_int,
    random_vector,
    teichmuller,
    verschiebung,
    witt_invert,
)

logger = logging.getLogger(__name__)

LocusTag = Literal["SigmaPlus", "SigmaMinus", "DeltaPrime0", "Yplus", "Yminus"]
LOCUS_TAGS: tuple[LocusTag, ...] = ("SigmaPlus", "SigmaMinus", "DeltaPrime0", "Yplus", "Yminus")


def f_prime(point: SigmaPoint) -> WittVector:
    """(v_-, ζ) ↦ [v_-^p]ζ + p, on economic points."""
    if not point.is_economic:
        raise IncompatibleOperandsError(f"F' is defined on economic points (γ = 1), got γ = {point.gamma}")
    return point.primitive_element()


def j_minus(u: WittVector) -> SigmaPoint:
    """u ↦ (v_- = 1, ζ = u - p, γ = 1)."""
    if u.degree != 0:
        raise IncompatibleOperandsError(f"j_- takes degree-0 vectors, got degree {u.degree}")
    if not is_primitive(u):
        raise PrimitivityError(f"{u} is not primitive")
    zeta = (u - mul_int(u.p, WittVector.one(u.ring, u.n))).with_degree(u.p)
    return make_sigma_point(u.ring, u.ring.one, zeta)


def j_plus_data(point: SigmaPoint) -> WittVector:
    """ξ_ζ = [v_-] + V(ζ^{-1}) in W_{n+1}, degree -1."""
    if not point.zeta.is_unit():
        raise NotAUnitError(f"ζ = {point.zeta} is not a unit")
    n = point.n
    return teichmuller(point.v_minus, n + 1, degree=-1) + verschiebung(witt_invert(point.zeta))


# ---------------------------------------------------------------------------
# Loci
# ---------------------------------------------------------------------------

def classify_factors(point: SigmaPoint) -> list[frozenset[LocusTag]]:
    """Tags of each local factor of R."""
    ring = point.ring
    v_flags = ring.local_flags_raw(point.v_minus.raw)
    z_flags = ring.local_flags_raw(point.zeta.comps[0])
    v_parts = ring.factor_raws(point.v_minus.raw)
    z_parts = ring.factor_raws(point.zeta.comps[0])
    zeros = ring.factor_raws(ring.zero_raw)
    result = []
    for i, spec in enumerate(ring.spec.factors):
        tags: set[LocusTag] = set()
        if not v_flags[i]:
            tags.add("SigmaMinus")
        if not z_flags[i]:
            tags.add("SigmaPlus")
        if v_parts[i] == zeros[i]:
            tags.add("DeltaPrime0")
            if spec.K == 1:
                tags.add("Yminus")
        if z_parts[i] == zeros[i] and spec.K == 1:
            tags.add("Yplus")
        if {"SigmaPlus", "SigmaMinus"} <= tags:
            raise ConsistencyError(f"factor {i} of {point} lies on both Σ_+ and Σ_-")
        result.append(frozenset(tags))
    return result


def classify_locus(point: SigmaPoint) -> frozenset[LocusTag]:
    """Tags holding in every local factor."""
    if not point.is_economic:
        raise IncompatibleOperandsError("locus tags are read off economic points; normalize γ first")
    per_factor = classify_factors(point)
    return frozenset.intersection(*per_factor)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def f_prime_check(ring: Ring, n: int, samples: int = 100, seed: Optional[int] = None) -> Report:
    """F'∘j_- = id on W_prim; F' is G-equivariant through w = 1 - [v_-^p]α; F'(v_- = 0) = p."""
    tally = Tally(f"f_prime(n={n})", seed=seed)
    primitives = list(primitive_vectors(ring, n, 0))

    def one_sample(rng: random.Random) -> WittVector:
        return random_primitive(ring, n, rng)

    for u in exhaustive_or_sampled(len(primitives), lambda: primitives, one_sample, tally=tally):
        tally.check(f_prime(j_minus(u)) == u, "F'(j_-(u)) != u", u=u)
    p_one = mul_int(ring.p, WittVector.one(ring, n))
    rng = random.Random(tally.seed)
    for _ in range(samples):
        zeta = random_vector(ring, n, rng, ring.p)
        tally.check(f_prime(make_sigma_point(ring, 0, zeta)) == p_one, "F'(0, ζ) != p", zeta=zeta)
        point = random_economic_point(ring, n, rng)
        g = random_group_elem(point, rng)
        moved = g_act(point, g)
        tally.check(f_prime(moved) == witt_invert(g.w) * f_prime(point), "F' is not equivariant",
                    point=point, g=g)
    tally.count("primitive", len(primitives))
    return tally.report()


def _j_plus_point(ring: Ring, n: int, rng: random.Random, attempts: int = 1000) -> SigmaPoint:
    for _ in range(attempts):
        zeta = random_vector(ring, n, rng, ring.p)
        v = ring.random_element(rng)
        if not zeta.is_unit() or not v.is_nilpotent():
            continue
        try:
            return make_sigma_point(ring, v, zeta)
        except PrimitivityError:
            continue
    raise NotAUnitError(f"no point with ζ a unit found in {attempts} draws over {ring}")


def j_plus_law_check(ring: Ring, n: int, samples: int = 100, seed: Optional[int] = None) -> Report:
    """ξ_ζ is primitive, F(ξ_ζ)·ζ = F'(P), and ξ transforms by (1 + V(ζ^{-1}α))^{-1}."""
    tally = Tally(f"j_plus_law(n={n})", seed=seed)
    rng = random.Random(tally.seed)
    one = WittVector.one(ring, n + 1)
    for _ in range(samples):
        point = _j_plus_point(ring, n, rng)
        xi_zeta = j_plus_data(point)
        tally.check(is_primitive(xi_zeta), "ξ_ζ is not primitive", point=point)
        tally.check(frobenius(xi_zeta) * point.zeta == f_prime(point), "F(ξ_ζ)·ζ != F'(P)", point=point)
        g = random_group_elem(point, rng)
        moved = g_act(point, g)
        factor = one + verschiebung(witt_invert(point.zeta) * g.alpha)
        expected = witt_invert(factor) * xi_zeta
        tally.check(j_plus_data(moved) == expected, "ξ transformation law", point=point, g=g)
    return tally.report()


def locus_check(ring: Ring, n: int) -> Report:
    """Every economic point gets tags; no factor is on both Σ_+ and Σ_-."""
    tally = Tally(f"locus(n={n})")
    seen: Counter[str] = Counter()
    for point in economic_points(ring, n):
        try:
            tags = classify_locus(point)
        except ConsistencyError as exc:
            tally.fail(str(exc), point=point)
            continue
        tally.check(not {"SigmaPlus", "SigmaMinus"} <= tags, "tagged Σ_+ and Σ_-", point=point)
        if "Yminus" in tags or "Yplus" in tags:
            tally.check(ring.is_char_p, "Y tags outside characteristic p", point=point)
        for tag in tags:
            seen[tag] += 1
    for tag in LOCUS_TAGS:
        tally.note(tag, seen[tag])
    return tally.report()
