"""
G_a^sharp and G_m^sharp as kernels of Frobenius on Witt vectors.
Sprint: S3

A point of G_a^sharp over R is x ∈ W_{n+1}(R) with F(x) = 0 in W_n(R).
W acts on these points through W/VW, so the inclusion into W is a
quasi-ideal: [x_0]·y = [y_0]·x.  Modulo p, x ↦ [c]·(1 + V(x)) splits
G_m^sharp as μ_p × G_a^sharp.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Literal

from src.checks.tally import Tally, exhaustive_or_sampled
from src.errors import ConsistencyError, IncompatibleOperandsError, PrimitivityError
from src.models.schemas import Report
from src.rings import Element, Ring
from src.witt import (
    WittVector,
    enumerate_vectors,
    frobenius,
    random_vector,
    teichmuller,
    verschiebung,
)

logger = logging.getLogger(__name__)

QuasiIdeal = Literal["sharp", "sigma"]


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SharpPoint:
    """x ∈ W_{n+1}(R) with F(x) = 0."""

    x: WittVector

    def __post_init__(self) -> None:
        if self.x.n < 2:
            raise IncompatibleOperandsError("G_a^sharp points need length >= 2")
        if not frobenius(self.x).is_zero():
            raise PrimitivityError(f"{self.x} is not in the kernel of F")

    @property
    def n(self) -> int:
        return self.x.n - 1

    @property
    def d(self) -> Element:
        """Image in G_a: the zeroth component."""
        return self.x[0]

    def __add__(self, other: SharpPoint) -> SharpPoint:
        return SharpPoint(self.x + other.x)

    def __neg__(self) -> SharpPoint:
        return SharpPoint(-self.x)

    def act(self, w: WittVector) -> SharpPoint:
        """Module action of W."""
        return SharpPoint(w * self.x)

    def __str__(self) -> str:
        return str(self.x)


def kernel_vectors(ring: Ring, n: int) -> Iterator[WittVector]:
    """Every x in W_{n+1}(R) with F(x) = 0."""
    for x in enumerate_vectors(ring, n + 1):
        if frobenius(x).is_zero():
            yield x


def sharp_points(ring: Ring, n: int) -> list[SharpPoint]:
    """All points of G_a^sharp(R) at truncation n, checked to form a group."""
    vectors = list(kernel_vectors(ring, n))
    members = set(vectors)
    for x, y in itertools.combinations_with_replacement(vectors, 2):
        if x + y not in members:
            raise ConsistencyError(f"Ker F over {ring} not closed: {x} + {y}")
    logger.debug("Ker F in W_%d(%s): %d points", n + 1, ring, len(vectors))
    return [SharpPoint(x) for x in vectors]


# ---------------------------------------------------------------------------
# Multiplicative splitting modulo p
# ---------------------------------------------------------------------------

def _require_char_p(ring: Ring) -> None:
    if not ring.is_char_p:
        raise IncompatibleOperandsError(f"{ring} does not have characteristic p")


def unit_splitting(x: SharpPoint, c: Element) -> WittVector:
    """[c]·(1 + V(x)) in Ker(F: W_{n+2}^× → W_{n+1}^×)."""
    ring = x.x.ring
    _require_char_p(ring)
    c = ring.element(c)
    if c ** ring.p != ring.one:
        raise PrimitivityError(f"{c} is not a {ring.p}-th root of unity in {ring}")
    length = x.x.n + 1
    return teichmuller(c, length) * (WittVector.one(ring, length) + verschiebung(x.x))


def mu_p(ring: Ring) -> list[Element]:
    return [c for c in ring.elements() if c ** ring.p == ring.one]


def unit_product_identity_check(ring: Ring, n: int = 3) -> Report:
    """(1+Vx)(1+Vy) = 1 + V(x + y + VF(xy)) in W_n, for x, y ∈ W_{n-1}."""
    _require_char_p(ring)
    if n < 3:
        raise IncompatibleOperandsError("the product identity needs n >= 3")
    tally = Tally(f"unit_product_identity(n={n})")
    one = WittVector.one(ring, n)
    vectors = list(enumerate_vectors(ring, n - 1))
    for x, y in itertools.product(vectors, repeat=2):
        left = (one + verschiebung(x)) * (one + verschiebung(y))
        right = one + verschiebung(x + y + verschiebung(frobenius(x * y)))
        tally.check(left == right, "product of 1+V terms", x=x, y=y)
    tally.note("ring", ring)
    return tally.report()


def unit_splitting_check(ring: Ring, n: int) -> Report:
    """The splitting lands in Ker F, is injective and multiplicative."""
    _require_char_p(ring)
    tally = Tally(f"unit_splitting(n={n})")
    points = sharp_points(ring, n)
    roots = mu_p(ring)
    images: dict[WittVector, tuple[SharpPoint, Element]] = {}
    for pt, c in itertools.product(points, roots):
        u = unit_splitting(pt, c)
        tally.check(frobenius(u).is_one(), "F([c](1+Vx)) != 1", x=pt, c=c)
        seen = images.setdefault(u, (pt, c))
        tally.check(seen == (pt, c), "splitting not injective", x=pt, c=c)
    for (a, c), (b, e) in itertools.product(itertools.product(points, roots), repeat=2):
        tally.check(unit_splitting(a, c) * unit_splitting(b, e) == unit_splitting(a + b, c * e),
                    "splitting not multiplicative", x=a, y=b, c=c, e=e)
    tally.note("points", len(points))
    tally.note("mu_p", len(roots))
    return tally.report()


# ---------------------------------------------------------------------------
# Annihilators, module structure, quasi-ideals
# ---------------------------------------------------------------------------

def annihilator_check(ring: Ring, n: int) -> Report:
    """x·V(y) = 0 in W_n for x ∈ Ker(F: W_n → W_{n-1}) and y ∈ W_{n-1}."""
    tally = Tally(f"annihilator(n={n})")
    kernel = list(kernel_vectors(ring, n - 1))
    others = list(enumerate_vectors(ring, n - 1))
    for x, y in itertools.product(kernel, others):
        tally.check((x * verschiebung(y)).is_zero(), "x·V(y) != 0", x=x, y=y)
    tally.count("kernel", len(kernel))
    return tally.report()


def module_action_check(ring: Ring, n: int) -> Report:
    """w·x = [w_0]·x on Ker F: the W-action factors through W/VW."""
    tally = Tally(f"sharp_module_action(n={n})")
    points = sharp_points(ring, n)
    size = ring.cardinality ** (n + 1) * len(points)

    def everything():
        return itertools.product(enumerate_vectors(ring, n + 1), points)

    def one_sample(rng):
        return random_vector(ring, n + 1, rng), points[rng.randrange(len(points))]

    for w, pt in exhaustive_or_sampled(size, everything, one_sample, tally=tally):
        acted = pt.act(w)
        tally.check(acted.x == teichmuller(w[0], n + 1) * pt.x, "w·x != [w_0]·x", w=w, x=pt)
    return tally.report()


def quasi_ideal_check(d_map: QuasiIdeal, ring: Ring, n: int, *, seed: int | None = None) -> Report:
    """
    d(x)·y = d(y)·x.

    "sharp" is the inclusion Ker F ⊂ W, acting through [x_0]; "sigma" is ξ
    on the module points of sampled economic points.
    """
    if d_map == "sigma":
        from src.sigma.modules import xi_quasi_ideal_check

        return xi_quasi_ideal_check(ring, n, seed=seed)
    if d_map != "sharp":
        raise ValueError(f"unknown quasi-ideal {d_map!r}")
    tally = Tally(f"quasi_ideal(sharp,n={n})", seed=seed)
    points = sharp_points(ring, n)
    for a, b in itertools.combinations_with_replacement(points, 2):
        left = teichmuller(a.d, n + 1) * b.x
        right = teichmuller(b.d, n + 1) * a.x
        tally.check(left == right, "[x0]y != [y0]x", x=a, y=b)
    tally.count("points", len(points))
    return tally.report()
