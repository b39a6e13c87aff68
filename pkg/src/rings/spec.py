"""
Ring specifications and their string grammar.
Sprint: S1

A ring is a finite product of local factors, each one of

    Zmod(p^K)[t]/(t^e)   truncated polynomial ring (e = 1: just Z/p^K)
    GR(p^K,k)            Galois ring Z/p^K[t]/(f), f monic of degree k,
                         irreducible mod p
    GF(p^k)              the field GR(p,k)

Products are joined by " x ".  Shorthands: "F_p" for Zmod(p), "Z/p^K" for
Zmod(p^K), a bare modulus "Zmod(8)" for Zmod(2^3).  Any single lowercase
letter may stand for the variable: it is always stored as t.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from src.errors import RingSpecError


# ---------------------------------------------------------------------------
# Local factors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalSpec:
    """One local factor Z/p^K[t]/(modulus) with modulus monic of degree e."""

    p: int
    K: int
    e: int = 1
    galois: bool = False
    modulus: tuple[int, ...] = field(default=(), compare=False)
    """Monic modulus, coefficients low → high (length e + 1)."""

    def __post_init__(self) -> None:
        if self.p < 2 or not isprime(self.p):
            raise RingSpecError(f"p={self.p} is not prime")
        if self.K < 1:
            raise RingSpecError(f"p_power K={self.K} must be >= 1")
        if self.e < 1:
            raise RingSpecError(f"poly_var_order e={self.e} must be >= 1")
        if self.galois and self.e == 1:
            object.__setattr__(self, "galois", False)
        if not self.modulus:
            if self.galois and self.e > 1:
                modulus = first_irreducible_modulus(self.p, self.e)
            else:
                modulus = (0,) * self.e + (1,)
            object.__setattr__(self, "modulus", modulus)

    @property
    def characteristic(self) -> int:
        return self.p ** self.K

    @property
    def cardinality(self) -> int:
        return self.p ** (self.K * self.e)

    @property
    def residue_size(self) -> int:
        """Size of the residue field."""
        return self.p ** self.e if self.galois else self.p

    @property
    def is_field(self) -> bool:
        return self.K == 1 and (self.galois or self.e == 1)

    def with_precision(self, K: int) -> LocalSpec:
        """Same factor at p-adic precision K."""
        return LocalSpec(self.p, K, self.e, self.galois, self.modulus)

    def __str__(self) -> str:
        if self.galois and self.e > 1:
            if self.K == 1:
                return f"GF({self.p}^{self.e})"
            return f"GR({self.p}^{self.K},{self.e})"
        base = f"Zmod({self.p}^{self.K})" if self.K > 1 else f"Zmod({self.p})"
        if self.e == 1:
            return base
        return f"{base}[t]/(t^{self.e})"


@lru_cache(maxsize=None)
def first_irreducible_modulus(p: int, k: int) -> tuple[int, ...]:
    """
    Lexicographically first monic polynomial of degree k irreducible mod p.

    Candidates are ordered by their lower coefficients read high → low as a
    base-p number.  Returned low → high.
    """
    for n in range(p ** k):
        digits = [(n // p ** i) % p for i in range(k)]  # low -> high
        dense = [1] + digits[::-1]                     # high -> low for galoistools
        if gf_irreducible_p(dense, p, ZZ):
            return tuple(digits) + (1,)
    raise RingSpecError(f"no irreducible polynomial of degree {k} mod {p}")  # unreachable


# ---------------------------------------------------------------------------
# Product specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RingSpec:
    """A finite product of local factors sharing one prime p."""

    factors: tuple[LocalSpec, ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise RingSpecError("a ring needs at least one factor")
        primes = {f.p for f in self.factors}
        if len(primes) != 1:
            raise RingSpecError(f"all factors must share one prime, got {sorted(primes)}")

    @classmethod
    def local(cls, p: int, K: int = 1, e: int = 1) -> RingSpec:
        return cls((LocalSpec(p, K, e),))

    @property
    def p(self) -> int:
        return self.factors[0].p

    @property
    def cardinality(self) -> int:
        n = 1
        for f in self.factors:
            n *= f.cardinality
        return n

    @property
    def is_char_p(self) -> bool:
        return all(f.K == 1 for f in self.factors)

    @property
    def nilpotency_order(self) -> int:
        """Smallest N with p^N = 0."""
        return max(f.K for f in self.factors)

    def with_extra_precision(self, extra: int) -> RingSpec:
        return RingSpec(tuple(f.with_precision(f.K + extra) for f in self.factors))

    def with_precision(self, K: int) -> RingSpec:
        return RingSpec(tuple(f.with_precision(K) for f in self.factors))

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_POLY_SUFFIX = r"(?:\[(?P<var>[a-z])\]/\((?P=var)\^(?P<e>\d+)\))?"
_PATTERNS = [
    ("zmod", re.compile(r"Zmod\((?P<q>\d+)(?:\^(?P<k>\d+))?\)" + _POLY_SUFFIX)),
    ("zmod", re.compile(r"Z/(?P<q>\d+)(?:\^(?P<k>\d+))?" + _POLY_SUFFIX)),
    ("fp", re.compile(r"F_(?P<q>\d+)" + _POLY_SUFFIX)),
    ("gf", re.compile(r"GF\((?P<q>\d+)(?:\^(?P<k>\d+))?\)")),
    ("gr", re.compile(r"GR\((?P<q>\d+)(?:\^(?P<k>\d+))?,(?P<deg>\d+)\)")),
]
_SEPARATOR = re.compile(r"\s+x\s+|\s*×\s*")


def _prime_power(q: int, position: int) -> tuple[int, int]:
    if q < 2:
        raise RingSpecError(f"{q} is not a prime power", position)
    fac = factorint(q)
    if len(fac) != 1:
        raise RingSpecError(f"{q} is not a prime power", position)
    (p, k), = fac.items()
    return int(p), int(k)


def _parse_factor(text: str, position: int) -> LocalSpec:
    compact = re.sub(r"\s+", "", text)
    for kind, pattern in _PATTERNS:
        m = pattern.fullmatch(compact)
        if m is None:
            continue
        q = int(m.group("q"))
        exp = m.groupdict().get("k")
        if exp is not None:
            p = q
            if not isprime(p):
                raise RingSpecError(f"p={p} is not prime", position)
            power = int(exp)
        else:
            p, power = _prime_power(q, position)
        if kind == "fp" and power != 1:
            raise RingSpecError(f"F_{q} is not a prime field; use GF({q})", position)
        if kind in ("zmod", "fp"):
            e = int(m.group("e")) if m.group("e") else 1
            return LocalSpec(p, power, e)
        if kind == "gf":
            return LocalSpec(p, 1, power, galois=True)
        return LocalSpec(p, power, int(m.group("deg")), galois=True)
    raise RingSpecError(f"cannot parse ring factor {text.strip()!r}", position)


@lru_cache(maxsize=256)
def parse_ring_spec(text: str) -> RingSpec:
    """Parse the ring grammar of the module docstring."""
    if not text or not text.strip():
        raise RingSpecError("empty ring specification", 0)
    factors = []
    start = 0
    for m in _SEPARATOR.finditer(text):
        factors.append(_parse_factor(text[start:m.start()], start))
        start = m.end()
    factors.append(_parse_factor(text[start:], start))
    try:
        return RingSpec(tuple(factors))
    except RingSpecError as exc:
        raise RingSpecError(str(exc), 0) from exc
