"""
Report-producing law checks for W_n(R): ring axioms, strategy agreement and
the structural identities among F, V and Teichmüller lifts.
Sprint: S2
"""

from __future__ import annotations

import itertools
import logging
from typing import Optional

from src.checks.tally import Tally, exhaustive_or_sampled
from src.errors import ConsistencyError
from src.models.schemas import Report
from src.rings import Ring
from src.witt.arith import frobenius, mul_int, use_strategy, verschiebung, witt_arith, witt_invert
from src.witt.vector import WittVector, enumerate_vectors, random_vector

logger = logging.getLogger(__name__)


def _tuples(ring: Ring, n: int, k: int, tally: Tally, sample_count: Optional[int]):
    size = (ring.cardinality ** n) ** k
    return exhaustive_or_sampled(
        size,
        lambda: itertools.product(list(enumerate_vectors(ring, n)), repeat=k),
        lambda rng: tuple(random_vector(ring, n, rng) for _ in range(k)),
        tally=tally,
        sample_count=sample_count,
    )


def ring_laws_check(ring: Ring, n: int, sample_count: Optional[int] = None) -> Report:
    """Associativity, commutativity and distributivity on triples."""
    tally = Tally(f"witt_ring_laws(n={n})")
    tally.note("ring", ring)
    for x, y, z in _tuples(ring, n, 3, tally, sample_count):
        tally.check((x + y) + z == x + (y + z), "addition is not associative", x=x, y=y, z=z)
        tally.check((x * y) * z == x * (y * z), "multiplication is not associative", x=x, y=y, z=z)
        tally.check(x * y == y * x and x + y == y + x, "not commutative", x=x, y=y)
        tally.check(x * (y + z) == x * y + x * z, "not distributive", x=x, y=y, z=z)
    return tally.report()


def strategy_equivalence_check(ring: Ring, n: int, sample_count: Optional[int] = None) -> Report:
    """polynomial and ghost strategies agree on add, mul, neg and F."""
    tally = Tally(f"witt_strategy_equivalence(n={n})")
    tally.note("ring", ring)
    for x, y in _tuples(ring, n, 2, tally, sample_count):
        results = {}
        for strategy in ("polynomial", "ghost"):
            with use_strategy(strategy):
                results[strategy] = (
                    witt_arith("add", x, y),
                    witt_arith("mul", x, y),
                    witt_arith("neg", x),
                    frobenius(x) if n >= 2 else None,
                )
        tally.check(results["polynomial"] == results["ghost"], "strategies disagree", x=x, y=y)
    return tally.report()


def structural_identities_check(ring: Ring, n: int) -> Report:
    """
    FV = p, V(x)y = V(xF(y)), F([a]) = [a^p], (Vx)^2 = p·V(x^2); in
    characteristic p also VF = p and F(x)_i = x_i^p.
    """
    if n < 2:
        raise ValueError("structural identities need n >= 2")
    tally = Tally(f"witt_structural_identities(n={n})")
    p = ring.p
    ring.check_enumerable(ring.cardinality ** n)
    shorter = list(enumerate_vectors(ring, n - 1))
    full = list(enumerate_vectors(ring, n))

    for x in shorter:
        vx = verschiebung(x)
        tally.check(frobenius(vx) == mul_int(p, x), "FV != p", x=x)
        tally.check(vx * vx == mul_int(p, verschiebung(x * x)), "(Vx)^2 != p·V(x^2)", x=x)
        for y in full:
            tally.check(vx * y == verschiebung(x * frobenius(y)), "V(x)y != V(xF(y))", x=x, y=y)
    for a in ring.elements():
        tally.check(frobenius(WittVector.teichmuller(a, n)) == WittVector.teichmuller(a ** p, n - 1),
                    "F([a]) != [a^p]", a=a)
    if ring.is_char_p:
        for x in full:
            tally.check(verschiebung(frobenius(x)) == mul_int(p, x), "VF != p", x=x)
            componentwise = WittVector(ring, tuple(ring.pow_raw(c, p) for c in x.comps[:-1]), x.degree * p)
            tally.check(frobenius(x) == componentwise, "F is not componentwise", x=x)
    tally.note("ring", ring)
    return tally.report()


def unit_criterion_check(ring: Ring, n: int) -> Report:
    """x is a unit of W_n(R) exactly when x_0 is a unit of R."""
    tally = Tally(f"witt_unit_criterion(n={n})")
    ring.check_enumerable(ring.cardinality ** n)
    one = WittVector.one(ring, n)
    full = list(enumerate_vectors(ring, n))
    for x in full:
        x0_unit = ring.is_unit_raw(x.comps[0])
        if x0_unit:
            try:
                tally.check(x * witt_invert(x) == one, "x·x^{-1} != 1", x=x)
            except ConsistencyError as exc:
                tally.fail(str(exc), x=x)
        else:
            tally.check(all(x * y != one for y in full), "x_0 is not a unit but x is", x=x)
        tally.count("units" if x0_unit else "non_units")
    return tally.report()
