"""
The Witt vector [p^2]/p.
Sprint: S2

The sequence w_i = p^{2p^i - 1} satisfies Dwork's congruences for the
identity Frobenius lift on Z_p, so it is the ghost sequence of a Witt
vector a with p·a = [p^2].  The lift is computed in Z/p^{K+n} (where the
exact divisions have room) and reduced to Z/p^K.
"""

from __future__ import annotations

import logging

from src.checks.tally import Tally
from src.models.schemas import Report
from src.rings import frobenius_lift, zmod
from src.witt.arith import mul_int
from src.witt.ghost import GhostSeq, dwork_lift, dwork_violations
from src.witt.vector import WittVector

logger = logging.getLogger(__name__)


def p2_over_p_ghosts(p: int, n: int, K: int) -> GhostSeq:
    """(p^{2p^i - 1})_{i<n} over Z/p^K."""
    ring = zmod(p, K)
    return GhostSeq.from_elements(ring, [pow(p, 2 * p ** i - 1, p ** K) for i in range(n)])


def p2_over_p(p: int, n: int, K: int) -> WittVector:
    """The vector a ∈ W_n(Z/p^K) with ghost components p^{2p^i - 1}."""
    lifted = zmod(p, K + n)
    g = p2_over_p_ghosts(p, n, K + n)
    a = dwork_lift(frobenius_lift(lifted), g)
    ring = zmod(p, K)
    return WittVector(ring, tuple(ring.reduce_raw(c, lifted) for c in a.comps))


def dwork_condition_p2(p: int, n: int, K: int = 3) -> Report:
    """The p^{2p^i - 1} sequence meets Dwork's congruences, and p·a = [p^2]."""
    tally = Tally(f"dwork_condition_p2(p={p},n={n})")
    lifted = zmod(p, K + n)
    g = p2_over_p_ghosts(p, n, K + n)
    bad = dwork_violations(frobenius_lift(lifted), g)
    tally.check(not bad, "Dwork congruence fails", indices=bad)
    a = p2_over_p(p, n, K)
    target = WittVector.teichmuller(p * p, n, ring=a.ring)
    tally.check(mul_int(p, a) == target, "p·a != [p^2]", a=a)
    tally.note("a", a)
    tally.note("ring", a.ring)
    return tally.report()
