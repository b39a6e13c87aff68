"""
Prism models: a truncated δ-ring (A, φ) together with a generator d of the
prism ideal.
Sprint: S6

Every model lives on Z/p^K[t]/(t^M):

    q_de_rham      t = q - 1,  φ(q) = q^p,             d = 1 + q + … + q^{p-1}
    lubin_tate(u)  t = x,      φ(x) = x^p + pux,       d = x^{p-1} + pu
    economic(u)    t = y,      φ(y) = u^{p-1}y(y+p)^{p-1},  d = y + p

so the distinguished point (q = 1, x = 0, y = 0) is always t = 0.  K and M
are independent precision dials: K is p-adic, M the truncation in t.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Literal, Optional

from src.errors import NotAUnitError, PrecisionError
from src.rings import Element, Ring, RingHom, frobenius_lift, reduction, specialization, zmod

logger = logging.getLogger(__name__)

PrismKind = Literal["q_de_rham", "lubin_tate", "economic"]
PRISM_KINDS: tuple[str, ...] = ("q_de_rham", "lubin_tate", "economic")


@dataclass(frozen=True, eq=False)
class PrismModel:
    kind: PrismKind
    p: int
    K: int
    M: int
    u: Optional[int]
    ring: Ring
    phi: RingHom
    d: Element

    @property
    def name(self) -> str:
        suffix = "" if self.u is None else f"(u={self.u})"
        return f"{self.kind}{suffix}[p={self.p},K={self.K},M={self.M}]"

    @property
    def variable(self) -> str:
        return {"q_de_rham": "q", "lubin_tate": "x", "economic": "y"}[self.kind]

    @property
    def coordinate(self) -> Element:
        """q for the q-de Rham prism, the generator t otherwise."""
        t = self.ring.gen
        return t + 1 if self.kind == "q_de_rham" else t

    def lowered(self, drop: int) -> PrismModel:
        """The same prism at p-adic precision K - drop."""
        return make_prism(self.kind, self.p, self.K - drop, self.M, self.u)

    def reduce_to(self, lower: PrismModel) -> RingHom:
        return reduction(self.ring, lower.ring)

    @cached_property
    def at_distinguished_point(self) -> RingHom:
        """A → Z/p^K, t ↦ 0."""
        return specialization(self.ring, zmod(self.p, self.K), 0, label=f"{self.variable}↦{self._point}")

    @property
    def d_at_point(self) -> int:
        """d at t = 0 as an integer: p, or p·u for Lubin–Tate."""
        return self.p * self.u if self.kind == "lubin_tate" else self.p

    @property
    def _point(self) -> str:
        return "1" if self.kind == "q_de_rham" else "0"

    def describe(self) -> dict[str, str]:
        return {
            "kind": self.kind,
            "ring": str(self.ring.spec),
            "phi_t": self.ring.format_raw(self.phi.images[0]),
            "d": str(self.d),
            "variable": f"{self.variable} = {'1 + t' if self.kind == 'q_de_rham' else 't'}",
            "precision": str(self.K),
        }


def _require_unit(p: int, K: int, u: int) -> int:
    if u % p == 0:
        raise NotAUnitError(f"u={u} is not a unit of Z/{p}^{K}")
    return u % p ** K


@lru_cache(maxsize=64)
def make_prism(kind: str, p: int, K: int = 4, M: int = 4, u: Optional[int] = None) -> PrismModel:
    """
    Build one of the three prism models.

    u is only read for lubin_tate / economic (default 1) and must be prime to p.
    Raises PrecisionError for K < 1 or M < 2 and NotAUnitError for a bad u.
    """
    if kind not in PRISM_KINDS:
        raise ValueError(f"unknown prism kind {kind!r}; expected one of {', '.join(PRISM_KINDS)}")
    if K < 1:
        raise PrecisionError(f"p-adic precision K={K} must be >= 1")
    if M < 2:
        raise PrecisionError(f"truncation M={M} must be >= 2 to keep the variable")
    ring = zmod(p, K, M)
    t = ring.gen
    if kind == "q_de_rham":
        u = None
        q = t + 1
        phi = frobenius_lift(ring, q ** p - 1, label="φ(q)=q^p")
        d = sum((q ** i for i in range(1, p)), ring.one)
    elif kind == "lubin_tate":
        u = _require_unit(p, K, 1 if u is None else u)
        phi = frobenius_lift(ring, t ** p + t * (p * u), label=f"φ(x)=x^{p}+{p * u}x")
        d = t ** (p - 1) + p * u
    else:
        u = _require_unit(p, K, 1 if u is None else u)
        phi = frobenius_lift(ring, t * (t + p) ** (p - 1) * u ** (p - 1),
                             label=f"φ(y)=u^{p - 1}y(y+{p})^{p - 1}")
        d = t + p
    model = PrismModel(kind, p, K, M, u, ring, phi, d)  # type: ignore[arg-type]
    logger.debug("prism %s: φ(t) = %s, d = %s", model.name, ring.format_raw(phi.images[0]), d)
    return model
