"""
Truncated p-typical Witt vectors.
Sprint: S2

A WittVector is a length-n tuple of raw ring values over a Ring handle,
tagged with an integer Teichmüller degree.  Vectors are immutable and only
comparable with vectors of equal ring, length and degree.  The operators
dispatch to src.witt.arith with the active strategy.
"""

from __future__ import annotations

import itertools
import random
from typing import Any, Iterable, Iterator, Sequence

from src.errors import IncompatibleOperandsError
from src.models.schemas import WittVectorPayload
from src.rings import Element, Ring, make_ring

Raw = Any


class WittVector:
    """(x_0, …, x_{n-1}) in W_n(R), with degree tag."""

    __slots__ = ("ring", "comps", "degree")

    def __init__(self, ring: Ring, comps: Sequence[Raw], degree: int = 0) -> None:
        if not comps:
            raise ValueError("Witt vectors need length n >= 1")
        self.ring = ring
        self.comps: tuple[Raw, ...] = tuple(comps)
        self.degree = degree

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_elements(cls, ring: Ring, values: Iterable[Any], degree: int = 0) -> WittVector:
        """Coerce ints, strings or Elements of ring into components."""
        return cls(ring, [ring.element(v).raw for v in values], degree)

    @classmethod
    def zero(cls, ring: Ring, n: int, degree: int = 0) -> WittVector:
        return cls(ring, (ring.zero_raw,) * n, degree)

    @classmethod
    def one(cls, ring: Ring, n: int) -> WittVector:
        return cls(ring, (ring.one_raw,) + (ring.zero_raw,) * (n - 1), 0)

    @classmethod
    def teichmuller(cls, a: Element | int, n: int, degree: int = 0, ring: Ring | None = None) -> WittVector:
        """[a] = (a, 0, …, 0)."""
        if ring is None:
            if not isinstance(a, Element):
                raise TypeError("pass ring= for integer Teichmüller inputs")
            ring = a.ring
        raw = ring.element(a).raw
        return cls(ring, (raw,) + (ring.zero_raw,) * (n - 1), degree)

    # ------------------------------------------------------------------
    # Shape
    # ------------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.comps)

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def components(self) -> tuple[Element, ...]:
        return tuple(Element(self.ring, c) for c in self.comps)

    def __getitem__(self, i: int) -> Element:
        return Element(self.ring, self.comps[i])

    def __len__(self) -> int:
        return len(self.comps)

    def with_degree(self, degree: int) -> WittVector:
        return WittVector(self.ring, self.comps, degree)

    def truncate(self, n: int) -> WittVector:
        """π_n: keep the first n components."""
        if not 1 <= n <= self.n:
            raise IncompatibleOperandsError(f"cannot truncate length {self.n} to {n}")
        return WittVector(self.ring, self.comps[:n], self.degree)

    def is_zero(self) -> bool:
        z = self.ring.zero_raw
        return all(c == z for c in self.comps)

    def is_one(self) -> bool:
        return self.comps[0] == self.ring.one_raw and all(c == self.ring.zero_raw for c in self.comps[1:])

    def is_unit(self) -> bool:
        """Units of W_n(R) are exactly the vectors with x_0 a unit."""
        return self.ring.is_unit_raw(self.comps[0])

    def same_shape(self, other: WittVector) -> bool:
        return self.ring is other.ring and self.n == other.n

    def require_shape(self, other: WittVector) -> None:
        if self.ring is not other.ring:
            raise IncompatibleOperandsError(f"W over {self.ring} vs W over {other.ring}")
        if self.n != other.n:
            raise IncompatibleOperandsError(f"lengths {self.n} and {other.n} differ")

    # ------------------------------------------------------------------
    # Operators
    # ------------------------------------------------------------------

    def __add__(self, other: Any) -> WittVector:
        from src.witt.arith import witt_arith
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return witt_arith("add", self, o)

    __radd__ = __add__

    def __sub__(self, other: Any) -> WittVector:
        from src.witt.arith import witt_arith
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return witt_arith("sub", self, o)

    def __rsub__(self, other: Any) -> WittVector:
        from src.witt.arith import witt_arith
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return witt_arith("sub", o, self)

    def __mul__(self, other: Any) -> WittVector:
        from src.witt.arith import mul_int, witt_arith
        if isinstance(other, int) and not isinstance(other, bool):
            return mul_int(other, self)
        if not isinstance(other, WittVector):
            return NotImplemented
        return witt_arith("mul", self, other)

    __rmul__ = __mul__

    def __neg__(self) -> WittVector:
        from src.witt.arith import witt_arith
        return witt_arith("neg", self)

    def __pow__(self, k: int) -> WittVector:
        from src.witt.arith import witt_invert, witt_pow
        if k < 0:
            return witt_pow(witt_invert(self), -k)
        return witt_pow(self, k)

    def _coerce(self, other: Any) -> WittVector:
        if isinstance(other, WittVector):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            from src.witt.arith import mul_int
            return mul_int(other, WittVector.one(self.ring, self.n))
        return NotImplemented  # type: ignore[return-value]

    # ------------------------------------------------------------------
    # Comparison / display
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WittVector):
            return NotImplemented
        return (self.ring is other.ring and self.degree == other.degree
                and self.comps == other.comps)

    def __hash__(self) -> int:
        return hash((self.ring.spec, self.degree, self.comps))

    def __repr__(self) -> str:
        deg = f", degree={self.degree}" if self.degree else ""
        return f"W{self.n}({self}{deg})"

    def __str__(self) -> str:
        return "(" + ", ".join(self.ring.format_raw(c) for c in self.comps) + ")"

    def to_payload(self) -> WittVectorPayload:
        return WittVectorPayload(
            p=self.p, n=self.n, degree=self.degree, ring=str(self.ring),
            components=[self.ring.format_raw(c) for c in self.comps],
        )

    @classmethod
    def from_payload(cls, payload: WittVectorPayload) -> WittVector:
        ring = make_ring(payload.ring)
        if ring.p != payload.p or len(payload.components) != payload.n:
            raise IncompatibleOperandsError(f"payload header does not match {payload.ring}")
        return cls(ring, [ring.parse_element(c).raw for c in payload.components], payload.degree)


# ---------------------------------------------------------------------------
# Domains
# ---------------------------------------------------------------------------

def enumerate_vectors(ring: Ring, n: int, degree: int = 0) -> Iterator[WittVector]:
    """All of W_n(R), first component varying slowest."""
    ring.check_enumerable(ring.cardinality ** n)
    raws = [e.raw for e in ring.elements()]
    for combo in itertools.product(raws, repeat=n):
        yield WittVector(ring, combo, degree)


def random_vector(ring: Ring, n: int, rng: random.Random, degree: int = 0) -> WittVector:
    return WittVector(ring, [ring.random_element(rng).raw for _ in range(n)], degree)
