"""
Lubin–Tate prisms and their economic quotient.
Sprint: S6

On A_u = Z_p[[x]] with φ_u(x) = x^p + pux, the subring generated by
y = u^{-1}x^{p-1} is stable under φ_u, which acts there as
y ↦ u^{p-1}y(y+p)^{p-1}; the generator x^{p-1} + pu of the prism ideal
becomes u(y + p).  The Teichmüller roots of unity act on A_u by x ↦ cx and
commute with φ_u.
"""

from __future__ import annotations

import logging
import random

from src.checks.tally import Tally
from src.errors import IncompatibleOperandsError
from src.models.schemas import Report
from src.prisms.model import PrismModel, make_prism
from src.rings import Element, substitution

logger = logging.getLogger(__name__)

_SAMPLES = 32


def economic_consistency(p: int, u: int = 1, K: int = 4, e: int = 10) -> Report:
    """
    In Z/p^K[x]/(x^e), with y = u^{-1}x^{p-1}:
        u^{-1}·φ_u(x)^{p-1} = u^{p-1}·y(y+p)^{p-1},
        x^{p-1} + pu = u(y + p),
    and y ↦ u^{-1}x^{p-1} intertwines the economic φ with φ_u.
    """
    tally = Tally(f"economic_consistency(p={p},u={u},K={K},e={e})")
    lt = make_prism("lubin_tate", p, K, e, u)
    econ = make_prism("economic", p, K, e, u)
    ring = lt.ring
    x = ring.gen
    u_el = ring.element(lt.u)
    u_inv = u_el.inverse()
    y = u_inv * x ** (p - 1)

    lhs = u_inv * lt.phi(x) ** (p - 1)
    rhs = u_el ** (p - 1) * y * (y + p) ** (p - 1)
    tally.check(lhs == rhs, "u^{-1}φ_u(x)^{p-1} != u^{p-1}y(y+p)^{p-1}", lhs=lhs, rhs=rhs)
    tally.check(lt.d == u_el * (y + p), "x^{p-1} + pu != u(y + p)")

    embed = substitution(ring, y, label="y↦u^{-1}x^{p-1}")
    tally.check(embed(econ.phi(econ.ring.gen)) == lt.phi(embed(econ.ring.gen)), "φ is not intertwined on y")
    for a in _sample(econ, tally.seed):
        tally.check(embed(econ.phi(a)) == lt.phi(embed(a)), "φ is not intertwined", a=a)
    tally.note("phi_u(x)", lt.phi(x))
    return tally.report()


def _sample(model: PrismModel, seed: int) -> list[Element]:
    rng = random.Random(seed)
    return [model.ring.random_element(rng) for _ in range(_SAMPLES)]


def teichmuller_roots(p: int, K: int) -> list[int]:
    """The (p-1)-st roots of unity in Z/p^K: c^{p^{K-1}} for c = 1..p-1."""
    modulus = p ** K
    return [pow(c, p ** (K - 1), modulus) for c in range(1, p)]


def lubin_tate_teichmuller_check(model: PrismModel) -> Report:
    """
    x ↦ cx commutes with φ_u for c a (p-1)-st root of unity, and fails to
    for the unit 1 + p once p^2 and x^p are both nonzero.
    """
    if model.kind != "lubin_tate":
        raise IncompatibleOperandsError(f"expected a Lubin–Tate model, got {model.kind}")
    tally = Tally(f"lubin_tate_teichmuller[{model.name}]")
    p, K, ring = model.p, model.K, model.ring
    x = ring.gen
    samples = _sample(model, tally.seed)
    for c in teichmuller_roots(p, K):
        tally.check(pow(c, p - 1, p ** K) == 1, "c^{p-1} != 1", c=c)
        act = substitution(ring, x * c, label=f"x↦{c}x")
        for a in [x, *samples]:
            tally.check(act(model.phi(a)) == model.phi(act(a)), "[c] does not commute with φ_u", c=c, a=a)
    if K >= 2 and model.M > p:
        act = substitution(ring, x * (1 + p), label=f"x↦{1 + p}x")
        tally.check(act(model.phi(x)) != model.phi(act(x)), "1 + p commutes with φ_u")
    tally.note("roots", teichmuller_roots(p, K))
    return tally.report()
