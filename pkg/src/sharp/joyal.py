"""
Divided-power coordinates of Frobenius-kernel points.
Sprint: S3

The coordinate ring of W is the free δ-ring on x_0, with Joyal coordinates
y_k = δ^k(x_0), where δ(b) = (b(F(x)) - b(x)^p) / p.  On Ker F this gives
p·y_{k+1} = -y_k^p, so u_k = ε_k·y_k with ε_0 = 1 and ε_{k+1} = -ε_k^p
satisfies u_k^p = p·u_{k+1}: ε_k = (-1)^k for odd p, and (1, -1, -1, …)
for p = 2.
"""

from __future__ import annotations

import logging
from functools import lru_cache

from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement

from src.checks.tally import Tally
from src.errors import ConsistencyError
from src.models.schemas import Report
from src.rings import Element, Ring
from src.sharp.dp import dp_comult, evaluate
from src.sharp.kernel import SharpPoint, sharp_points
from src.witt.polys import CompiledPoly, universal_polys

logger = logging.getLogger(__name__)


def joyal_sign(p: int, k: int) -> int:
    """ε_k with u_k = ε_k·y_k on Ker F."""
    if p == 2:
        return 1 if k == 0 else -1
    return -1 if k % 2 else 1


@lru_cache(maxsize=32)
def joyal_polys(p: int, n: int) -> tuple[PolyElement, ...]:
    """y_0, …, y_n as integer polynomials in x_0, …, x_n."""
    family = universal_polys(p, n, "F")
    gens = family.ring.gens
    ys = [gens[0]]
    for k in range(n):
        y = ys[-1]
        composed = family.ring.zero
        for monom, coeff in y.terms():
            term = family.ring(coeff)
            for i, e in enumerate(monom):
                if e:
                    term *= family.polynomials[i] ** e
            composed += term
        try:
            ys.append((composed - y ** p).exquo(y.ring(p)))
        except ExactQuotientFailed as exc:
            raise ConsistencyError(f"δ^{k + 1}(x_0) for p={p} is not integral") from exc
    logger.debug("Joyal coordinates for p=%d up to y_%d", p, n)
    return tuple(ys)


def joyal_coordinates(x: SharpPoint) -> tuple[Element, ...]:
    """(y_0(x), …, y_n(x))."""
    ring = x.x.ring
    polys = joyal_polys(ring.p, x.n)
    values = x.x.comps
    return tuple(Element(ring, CompiledPoly.from_poly(y)(ring, values)) for y in polys)


def joyal_to_divided_power(x: SharpPoint) -> tuple[Element, ...]:
    """(u_0(x), …, u_n(x)): the values of the divided-power generators at x."""
    p = x.x.p
    return tuple(y * joyal_sign(p, k) for k, y in enumerate(joyal_coordinates(x)))


def divided_power_coordinates_check(ring: Ring, n: int) -> Report:
    """
    On every point of Ker F over R: u_k^p = p·u_{k+1}, and Witt addition
    matches Δ(u_k) evaluated on the two summands.
    """
    tally = Tally(f"divided_power_coordinates(n={n})")
    points = sharp_points(ring, n)
    coords = {pt: joyal_to_divided_power(pt) for pt in points}
    p = ring.p
    for pt, us in coords.items():
        for k in range(n):
            tally.check(us[k] ** p == us[k + 1] * p, f"u_{k}^p != p·u_{k + 1}", x=pt)
    deltas = [dp_comult(k, p, n + 1) for k in range(n + 1)]
    for a in points:
        for b in points:
            total = coords[a + b]
            for k, delta in enumerate(deltas):
                tally.check(total[k] == evaluate(delta, (coords[a], coords[b]), ring),
                            f"u_{k}(x+y) != Δ(u_{k})(x, y)", x=a, y=b)
    tally.note("points", len(points))
    tally.note("signs", [joyal_sign(p, k) for k in range(n + 1)])
    return tally.report()


def dp_generator_values(x: SharpPoint) -> dict[str, str]:
    """Printable u_k values, used by the CLI."""
    return {f"u{k}": str(v) for k, v in enumerate(joyal_to_divided_power(x))}
