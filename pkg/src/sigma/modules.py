"""
Module points over a Σ' point and the functional ξ.
Sprint: S4

Over a point (v_-, ζ, γ) of truncation n, a module point is (x, y) with
x ∈ W_{n+1} of degree 1, y ∈ W_n of degree 0 and F(x) = y·ζ.  The
functional is ξ(x, y) = [v_-]x + V(γy) ∈ W_{n+1}, and W acts by
a·(x, y) = (ax, F(a)y).
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Optional

from src.checks.tally import Tally, exhaustive_or_sampled
from src.errors import DegreeError, IncompatibleOperandsError, PrimitivityError
from src.models.schemas import Report
from src.rings import Ring
from src.sigma.points import (
    GroupElem,
    SigmaPoint,
    economic_points,
    g_act,
    random_economic_point,
    random_group_elem,
    rescale,
    v_power,
)
from src.witt import WittVector, enumerate_vectors, frobenius, mul_int, teichmuller, verschiebung

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModulePoint:
    x: WittVector
    y: WittVector
    parent: SigmaPoint

    def __post_init__(self) -> None:
        n = self.parent.n
        if self.x.n != n + 1 or self.y.n != n:
            raise IncompatibleOperandsError(f"module points need x in W_{n + 1} and y in W_{n}")
        if self.x.degree != 1 or self.y.degree != 0:
            raise DegreeError(f"x, y must have degrees 1, 0; got {self.x.degree}, {self.y.degree}")
        if frobenius(self.x) != self.y * self.parent.zeta:
            raise PrimitivityError(f"F(x) != yζ for x={self.x}, y={self.y}")

    def __add__(self, other: ModulePoint) -> ModulePoint:
        if other.parent != self.parent:
            raise IncompatibleOperandsError("module points over different Σ' points")
        return ModulePoint(self.x + other.x, self.y + other.y, self.parent)

    def scale(self, a: WittVector) -> ModulePoint:
        """a·(x, y) = (ax, F(a)y) for a ∈ W_{n+1} of degree 0."""
        return ModulePoint(a * self.x, frobenius(a) * self.y, self.parent)

    def __str__(self) -> str:
        return f"(x={self.x}, y={self.y})"


def module_points(point: SigmaPoint) -> list[ModulePoint]:
    """All (x, y) with F(x) = yζ; F(x) and yζ are computed once each."""
    ring, n = point.ring, point.n
    ring.check_enumerable(ring.cardinality ** (2 * n + 1))
    by_target: dict[WittVector, list[WittVector]] = {}
    for y in enumerate_vectors(ring, n):
        by_target.setdefault(y * point.zeta, []).append(y)
    result = []
    for x in enumerate_vectors(ring, n + 1, 1):
        for y in by_target.get(frobenius(x), ()):
            result.append(ModulePoint(x, y, point))
    logger.debug("%d module points over %s", len(result), point)
    return result


def xi(m: ModulePoint) -> WittVector:
    """[v_-]x + V(γy), of degree 0 in W_{n+1}."""
    point = m.parent
    return teichmuller(point.v_minus, point.n + 1, degree=-1) * m.x + verschiebung(point.gamma * m.y)


def transport(m: ModulePoint, g: GroupElem) -> ModulePoint:
    """(x, y) ↦ (x + V(αy), wy), a module point over g_act(parent, g)."""
    target = g_act(m.parent, g)
    return ModulePoint(m.x + verschiebung(g.alpha * m.y), g.w * m.y, target)


def rescale_module_point(m: ModulePoint, lam) -> ModulePoint:
    """x ↦ [λ]x over the rescaled point; y is unchanged."""
    lam = m.parent.ring.element(lam)
    return ModulePoint(teichmuller(lam, m.x.n) * m.x, m.y, rescale(m.parent, lam))


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def module_identity_check(ring: Ring, n: int) -> Report:
    """F(ξ) = y·([v_-^p]ζ + pγ), additivity and W-linearity of ξ, on every economic point."""
    tally = Tally(f"module_identity(n={n})")
    scalars = list(enumerate_vectors(ring, n + 1))
    for point in economic_points(ring, n):
        target = v_power(point.v_minus, point.p, n) * point.zeta + mul_int(point.p, point.gamma)
        mps = module_points(point)
        tally.count("module_points", len(mps))
        for m in mps:
            tally.check(frobenius(xi(m)) == m.y * target, "F(ξ) != y([v^p]ζ + pγ)", point=point, m=m)
            for a in scalars[:: max(1, len(scalars) // 4)]:
                tally.check(xi(m.scale(a)) == a * xi(m), "ξ is not W-linear", point=point, m=m, a=a)
        for m1, m2 in itertools.combinations(mps[:16], 2):
            tally.check(xi(m1 + m2) == xi(m1) + xi(m2), "ξ is not additive", point=point, m1=m1, m2=m2)
    return tally.report()


def xi_quasi_ideal_check(ring: Ring, n: int, *, seed: Optional[int] = None,
                         points: int = 4) -> Report:
    """ξ(m)·m' = ξ(m')·m on module points of sampled economic points."""
    tally = Tally(f"quasi_ideal(sigma,n={n})", seed=seed)
    rng = random.Random(tally.seed)
    for _ in range(points):
        point = random_economic_point(ring, n, rng)
        mps = module_points(point)

        def pairs():
            return itertools.combinations_with_replacement(mps, 2)

        def one_pair(r):
            return mps[r.randrange(len(mps))], mps[r.randrange(len(mps))]

        size = len(mps) * (len(mps) + 1) // 2
        for m1, m2 in exhaustive_or_sampled(size, pairs, one_pair, tally=tally):
            left, right = m1.scale(xi(m2)), m2.scale(xi(m1))
            tally.check(left.x == right.x and left.y == right.y, "ξ(m')·m != ξ(m)·m'",
                        point=point, m1=m1, m2=m2)
    return tally.report()


def transport_check(ring: Ring, n: int, samples: int = 50, seed: Optional[int] = None) -> Report:
    """Transport lands on module points of the moved point and fixes ξ; so does rescaling."""
    tally = Tally(f"module_transport(n={n})", seed=seed)
    rng = random.Random(tally.seed)
    units = [u for u in ring.elements() if u.is_unit()]
    for _ in range(samples):
        point = random_economic_point(ring, n, rng)
        mps = module_points(point)
        m = mps[rng.randrange(len(mps))]
        g = random_group_elem(point, rng, "Gmat")
        try:
            moved = transport(m, g)
        except PrimitivityError as exc:
            tally.fail(str(exc), point=point, m=m, g=g)
            continue
        tally.check(xi(moved) == xi(m), "transport changed ξ", point=point, m=m, g=g)
        lam = units[rng.randrange(len(units))]
        tally.check(xi(rescale_module_point(m, lam)) == xi(m), "rescaling changed ξ",
                    point=point, m=m, lam=lam)
    return tally.report()
