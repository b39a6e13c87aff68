"""
Maps between Witt vector rings and their homomorphism checks.
Sprint: S2
"""

from __future__ import annotations

import itertools
import logging

from src.checks.tally import Tally
from src.errors import IncompatibleOperandsError
from src.models.schemas import Report
from src.rings import Ring, RingHom
from src.witt.arith import frobenius, witt_arith
from src.witt.vector import WittVector, enumerate_vectors

logger = logging.getLogger(__name__)


def witt_map(hom: RingHom, x: WittVector) -> WittVector:
    """W(f): apply a ring hom componentwise."""
    if x.ring is not hom.source:
        raise IncompatibleOperandsError(f"{hom.label} starts at {hom.source}, vector lives over {x.ring}")
    return WittVector(hom.target, tuple(hom.apply_raw(c) for c in x.comps), x.degree)


def iterate_frobenius(x: WittVector, m: int) -> WittVector:
    """F^m: W_{n+m} → W_n."""
    for _ in range(m):
        x = frobenius(x)
    return x


def pi_F(x: WittVector, m: int, n: int) -> WittVector:
    """π_n ∘ F^m."""
    return iterate_frobenius(x, m).truncate(n)


def check_pi_F_hom(m: int, n: int, ring: Ring) -> Report:
    """x ↦ π_n(F^m(x)) preserves +, × and 1 on all of W_{n+m}(R)."""
    tally = Tally(f"pi_F_hom(m={m},n={n})")
    length = n + m
    vectors = list(enumerate_vectors(ring, length))
    images = {x: pi_F(x, m, n) for x in vectors}
    one = WittVector.one(ring, length)
    tally.check(pi_F(one, m, n) == WittVector.one(ring, n), "1 does not map to 1")
    for x, y in itertools.product(vectors, repeat=2):
        fx, fy = images[x], images[y]
        s = witt_arith("add", x, y)
        tally.check(images[s] == witt_arith("add", fx, fy), "not additive", x=x, y=y)
        pr = witt_arith("mul", x, y)
        tally.check(images[pr] == witt_arith("mul", fx, fy), "not multiplicative", x=x, y=y)
    tally.note("domain", f"W_{length}({ring})")
    tally.count("pairs", len(vectors) ** 2)
    return tally.report()


def _additive_power_expected(q: int, p: int, N: int) -> bool:
    # λ ↦ λ^N on F_q is additive iff it is a Frobenius power
    if N < 1:
        return False
    return any(pow(p, j, q - 1) == N % (q - 1) for j in range(max(1, (q - 1).bit_length() * 2)))


def check_teichmuller_homs(n: int, N: int, ring: Ring) -> Report:
    """
    λ ↦ [λ^N] is multiplicative into W_n(F_q); its π_1 part is additive
    exactly when N ≡ p^j mod (q - 1).
    """
    spec = ring.spec.factors[0]
    if ring.factor_count != 1 or not spec.is_field:
        raise IncompatibleOperandsError(f"Teichmüller hom check runs over a finite field, got {ring}")
    tally = Tally(f"teichmuller_homs(n={n},N={N})")
    els = list(ring.elements())
    teich = {a: WittVector.teichmuller(a ** N, n) for a in els}
    for a, b in itertools.product(els, repeat=2):
        tally.check(teich[a * b] == witt_arith("mul", teich[a], teich[b]),
                    "not multiplicative", a=a, b=b)
    additive = all((a + b) ** N == a ** N + b ** N for a, b in itertools.product(els, repeat=2))
    expected = _additive_power_expected(spec.residue_size, ring.p, N)
    tally.check(additive == expected, "additivity of λ ↦ λ^N does not match the p-power criterion",
                N=N, q=spec.residue_size)
    tally.note("pi1_additive", additive)
    return tally.report()
