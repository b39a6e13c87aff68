"""
Ghost components, their exact-division inverse and Dwork lifting.
Sprint: S2

    w_i(x) = x_0^{p^i} + p x_1^{p^{i-1}} + … + p^i x_i

Over Z/p^K[t]/(t^e) the ghost map loses information, so ghost sequences
carry a p-adic precision per entry.  Inverting the ghost map divides the
i-th step exactly by p^i (centered representatives) and costs i digits of
precision.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Iterable, Optional, Sequence

from src.errors import DivisibilityError, DworkConditionError, IncompatibleOperandsError, PrecisionError
from src.rings import Element, Ring, RingHom
from src.witt.vector import WittVector

logger = logging.getLogger(__name__)

Raw = Any


# ---------------------------------------------------------------------------
# Ghost sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GhostSeq:
    """Ghost entries w_0..w_{n-1} with per-entry p-adic precision."""

    ring: Ring
    entries: tuple[Raw, ...]
    precisions: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != len(self.precisions):
            raise IncompatibleOperandsError(
                f"{len(self.entries)} ghost entries but {len(self.precisions)} precisions"
            )
        if any(a < b for a, b in zip(self.precisions, self.precisions[1:])):
            raise ValueError(f"precisions must be non-increasing: {self.precisions}")

    @classmethod
    def from_elements(cls, ring: Ring, values: Iterable[Any],
                      precisions: Optional[Sequence[int]] = None) -> GhostSeq:
        entries = tuple(ring.element(v).raw for v in values)
        if precisions is None:
            precisions = (ring.spec.nilpotency_order,) * len(entries)
        return cls(ring, entries, tuple(precisions))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def elements(self) -> tuple[Element, ...]:
        return tuple(Element(self.ring, w) for w in self.entries)

    def agrees(self, other: GhostSeq) -> bool:
        """Entrywise equality modulo p^(smaller of the two precisions)."""
        if self.ring is not other.ring or self.n != other.n:
            return False
        p = self.ring.p
        for a, b, pa, pb in zip(self.entries, other.entries, self.precisions, other.precisions):
            prec = min(pa, pb)
            if prec > 0 and not self.ring.divisible_raw(self.ring.sub_raw(a, b), p ** prec):
                return False
        return True

    def __str__(self) -> str:
        return "(" + ", ".join(self.ring.format_raw(w) for w in self.entries) + ")"


# ---------------------------------------------------------------------------
# Raw helpers (shared with the ghost-transport strategy)
# ---------------------------------------------------------------------------

def ghost_raw(ring: Ring, comps: Sequence[Raw]) -> tuple[Raw, ...]:
    """Ghost components of a raw component tuple."""
    p = ring.p
    add, scale = ring.add_raw, ring.scale_raw
    powers: list[Raw] = []
    out = []
    for i, c in enumerate(comps):
        powers = [ring.pow_raw(pw, p) for pw in powers]
        powers.append(c)
        acc = ring.zero_raw
        for j, pw in enumerate(powers):
            acc = add(acc, scale(pw, p ** j))
        out.append(acc)
    return tuple(out)


def _divide_at(ring: Ring, a: Raw, i: int, precision: int) -> Raw:
    """a / p^i where a is only known modulo p^precision (centered lift)."""
    p = ring.p
    if precision >= ring.spec.nilpotency_order:
        return ring.divide_exact_raw(a, p ** i)
    blocks = []
    for spec, block in zip(ring.spec.factors, ring.coeffs_raw(a)):
        m = p ** min(precision, spec.K)
        out = []
        for c in block:
            c %= m
            if c > m // 2:
                c -= m
            if c % p ** i:
                raise DivisibilityError(f"{ring.format_raw(a)} is not divisible by {p}^{i} mod {p}^{precision}")
            out.append(c // p ** i)
        blocks.append(out)
    return ring.from_coeffs_raw(blocks)


def recover_raw(ring: Ring, ghosts: Sequence[Raw],
                precisions: Optional[Sequence[int]] = None) -> tuple[Raw, ...]:
    """
    Invert the ghost map step by step:

        x_i = (w_i - Σ_{j<i} p^j x_j^{p^{i-j}}) / p^i
    """
    p = ring.p
    full = ring.spec.nilpotency_order
    precisions = precisions or (full,) * len(ghosts)
    comps: list[Raw] = []
    powers: list[Raw] = []
    for i, w in enumerate(ghosts):
        powers = [ring.pow_raw(pw, p) for pw in powers]
        acc = ring.zero_raw
        for j, pw in enumerate(powers):
            acc = ring.add_raw(acc, ring.scale_raw(pw, p ** j))
        dividend = ring.sub_raw(w, acc)
        if i and precisions[i] <= i:
            raise PrecisionError(f"ghost entry {i} has precision {precisions[i]}, needs > {i}")
        try:
            x_i = _divide_at(ring, dividend, i, precisions[i]) if i else dividend
        except DivisibilityError as exc:
            raise DivisibilityError(f"not a ghost sequence at index {i}: {exc}") from exc
        comps.append(x_i)
        powers.append(x_i)
    return tuple(comps)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def ghost(x: WittVector) -> GhostSeq:
    """Ghost components of x, each trusted to the ring's full precision."""
    entries = ghost_raw(x.ring, x.comps)
    return GhostSeq(x.ring, entries, (x.ring.spec.nilpotency_order,) * x.n)


def lifted_precisions(g: GhostSeq) -> tuple[int, ...]:
    """Precision of each component of ghost_lift(g): entry precision minus i."""
    return tuple(prec - i for i, prec in enumerate(g.precisions))


def ghost_lift(g: GhostSeq, degree: int = 0) -> WittVector:
    """
    The Witt vector with ghost components g.

    Component i is meaningful modulo p^(precision_i - i); see lifted_precisions.
    Raises DivisibilityError when g is not a ghost sequence.
    """
    comps = recover_raw(g.ring, g.entries, g.precisions)
    logger.debug("ghost_lift over %s: %s", g.ring, g)
    return WittVector(g.ring, comps, degree)


def dwork_violations(phi: RingHom, g: GhostSeq) -> list[int]:
    """Indices i where w_{i+1} - φ(w_i) is not divisible by p^{i+1}."""
    ring, p = g.ring, g.ring.p
    bad = []
    for i in range(g.n - 1):
        diff = ring.sub_raw(g.entries[i + 1], phi.apply_raw(g.entries[i]))
        prec = min(g.precisions[i], g.precisions[i + 1], i + 1)
        if prec > 0 and not ring.divisible_raw(diff, p ** prec):
            bad.append(i)
    return bad


def dwork_lift(phi: RingHom, g: GhostSeq, degree: int = 0) -> WittVector:
    """
    Dwork's lemma: if w_{i+1} ≡ φ(w_i) mod p^{i+1} for a Frobenius lift φ,
    then g is the ghost sequence of a Witt vector, which is returned.
    """
    if phi.source is not g.ring or phi.target is not g.ring:
        raise IncompatibleOperandsError(f"{phi.label} is not an endomorphism of {g.ring}")
    if phi.kind != "frobenius_lift":
        raise DworkConditionError(f"{phi.label} is a {phi.kind} hom, not a Frobenius lift")
    bad = dwork_violations(phi, g)
    if bad:
        i = bad[0]
        raise DworkConditionError(
            f"w_{i + 1} - φ(w_{i}) is not divisible by {g.ring.p}^{i + 1} in {g.ring}"
        )
    return ghost_lift(g, degree)
