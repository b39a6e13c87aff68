"""
The divided-power algebra of the additive group, symbolically.
Sprint: S3

A = Z_(p)[u_0, u_1, …] / (u_n^p = p·u_{n+1}),   u_n = x^{p^n} / p^{(p^n-1)/(p-1)}.

Elements are dicts from exponent vectors to exact integers.  Every
exponent is kept < p by carrying u_i^p → p·u_{i+1}, so the basis is
reduced and equality is dict equality.  Tensor powers A^{⊗L} use one
exponent vector of length L·depth (leg-major).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from math import comb, gcd
from typing import Iterable, Mapping

from src.checks.tally import Tally
from src.errors import ConsistencyError, TruncationError
from src.models.schemas import DPElementPayload, Report

logger = logging.getLogger(__name__)

Key = tuple[int, ...]


def legendre(m: int, p: int) -> int:
    """v_p(m!) = Σ_i a_i (p^i - 1)/(p - 1) for the base-p digits a_i of m."""
    total, q = 0, p
    while q <= m:
        total += m // q
        q *= p
    return total


def digits(m: int, p: int) -> list[int]:
    out = []
    while m:
        m, r = divmod(m, p)
        out.append(r)
    return out


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DPElement:
    """An element of A^{⊗legs} truncated at u_0..u_{depth-1} in each leg."""

    p: int
    depth: int
    legs: int = 1
    terms: Mapping[Key, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", {k: c for k, c in self.terms.items() if c})

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p: int, depth: int, legs: int = 1) -> DPElement:
        return cls(p, depth, legs, {})

    @classmethod
    def one(cls, p: int, depth: int, legs: int = 1) -> DPElement:
        return cls(p, depth, legs, {(0,) * (depth * legs): 1})

    @classmethod
    def u(cls, i: int, p: int, depth: int, legs: int = 1, leg: int = 0) -> DPElement:
        """The generator u_i in the given leg."""
        if i >= depth:
            raise TruncationError(f"u_{i} lies beyond depth {depth}")
        key = [0] * (depth * legs)
        key[leg * depth + i] = 1
        return cls(p, depth, legs, {tuple(key): 1})

    # arithmetic ---------------------------------------------------------

    def _same(self, other: DPElement) -> None:
        if (self.p, self.depth, self.legs) != (other.p, other.depth, other.legs):
            raise ValueError(
                f"DP elements of shape (p, depth, legs)={self.p, self.depth, self.legs} "
                f"and {other.p, other.depth, other.legs} do not combine"
            )

    def __add__(self, other: DPElement) -> DPElement:
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return DPElement(self.p, self.depth, self.legs, out)

    def __neg__(self) -> DPElement:
        return DPElement(self.p, self.depth, self.legs, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: DPElement) -> DPElement:
        return self + (-other)

    def scale(self, c: int) -> DPElement:
        return DPElement(self.p, self.depth, self.legs, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: DPElement | int) -> DPElement:
        if isinstance(other, int):
            return self.scale(other)
        return dp_multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> DPElement:
        result = DPElement.one(self.p, self.depth, self.legs)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DPElement):
            return NotImplemented
        return (self.p, self.depth, self.legs) == (other.p, other.depth, other.legs) \
            and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.p, self.depth, self.legs, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key: Key) -> int:
        return self.terms.get(tuple(key), 0)

    # display / wire -----------------------------------------------------

    def _mono(self, key: Key) -> str:
        legs = []
        for leg in range(self.legs):
            block = key[leg * self.depth:(leg + 1) * self.depth]
            factors = [f"u{i}" if a == 1 else f"u{i}^{a}" for i, a in enumerate(block) if a]
            legs.append("*".join(factors) or "1")
        return " ⊗ ".join(legs)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            c = self.terms[key]
            mono = self._mono(key)
            parts.append(mono if c == 1 else f"{c}*({mono})" if self.legs > 1 else f"{c}*{mono}")
        return " + ".join(parts)

    def to_payload(self) -> DPElementPayload:
        return DPElementPayload(
            p=self.p, depth=self.depth, legs=self.legs,
            terms=[(list(k), str(c)) for k, c in sorted(self.terms.items())],
        )

    @classmethod
    def from_payload(cls, payload: DPElementPayload) -> DPElement:
        return cls(payload.p, payload.depth, payload.legs,
                   {tuple(k): int(c) for k, c in payload.terms})


# ---------------------------------------------------------------------------
# Products with carries
# ---------------------------------------------------------------------------

def _multiply_keys(a: Key, b: Key, p: int, depth: int, legs: int) -> tuple[Key, int]:
    """Product of two reduced monomials: reduced key and the p-power picked up by carries."""
    out = [0] * (depth * legs)
    carries = 0
    for leg in range(legs):
        base = leg * depth
        carry = 0
        for i in range(depth):
            s = a[base + i] + b[base + i] + carry
            carry, out[base + i] = divmod(s, p)
            carries += carry
        if carry:
            raise TruncationError(f"carry past u_{depth - 1}; raise the truncation depth")
    return tuple(out), p ** carries


def dp_multiply(a: DPElement, b: DPElement) -> DPElement:
    """Product in A^{⊗legs}, rewriting u_i^p = p·u_{i+1}."""
    a._same(b)
    out: dict[Key, int] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            key, factor = _multiply_keys(ka, kb, a.p, a.depth, a.legs)
            out[key] = out.get(key, 0) + ca * cb * factor
    return DPElement(a.p, a.depth, a.legs, out)


def tensor(a: DPElement, b: DPElement) -> DPElement:
    """a ⊗ b, concatenating legs."""
    if (a.p, a.depth) != (b.p, b.depth):
        raise ValueError("tensor factors need the same p and depth")
    out = {ka + kb: ca * cb for ka, ca in a.terms.items() for kb, cb in b.terms.items()}
    return DPElement(a.p, a.depth, a.legs + b.legs, out)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def dp_reduce(m: int, p: int, depth: int | None = None) -> DPElement:
    """
    x^m = p^{E(m)} · ∏ u_i^{a_i}  with m = Σ a_i p^i and E(m) = v_p(m!).
    """
    if m < 0:
        raise ValueError(f"power m={m} must be >= 0")
    ds = digits(m, p)
    depth = depth if depth is not None else max(len(ds), 1)
    if len(ds) > depth:
        raise TruncationError(f"x^{m} needs u_{len(ds) - 1}, depth is {depth}")
    key = tuple(ds) + (0,) * (depth - len(ds))
    return DPElement(p, depth, 1, {key: p ** legendre(m, p)})


@lru_cache(maxsize=256)
def dp_comult(n: int, p: int, depth: int | None = None) -> DPElement:
    """
    Δ(u_n) = Σ_j C(p^n, j) x^j ⊗ x^{p^n - j} / p^{(p^n - 1)/(p - 1)} in A ⊗ A.

    Every coefficient is checked to be an exact integer.
    """
    depth = depth if depth is not None else n + 1
    if n >= depth:
        raise TruncationError(f"Δ(u_{n}) needs depth > {n}, got {depth}")
    pn = p ** n
    e_n = legendre(pn, p)
    out: dict[Key, int] = {}
    for j in range(pn + 1):
        left, right = dp_reduce(j, p, depth), dp_reduce(pn - j, p, depth)
        (kl, cl), = left.terms.items()
        (kr, cr), = right.terms.items()
        numerator = comb(pn, j) * cl * cr
        coeff, rem = divmod(numerator, p ** e_n)
        if rem:
            raise ConsistencyError(f"Δ(u_{n}) for p={p}: non-integral coefficient at j={j}")
        key = kl + kr
        out[key] = out.get(key, 0) + coeff
    logger.debug("Δ(u_%d) for p=%d: %d terms", n, p, len(out))
    return DPElement(p, depth, 2, out)


def dp_content(e: DPElement) -> int:
    """gcd of all coefficients."""
    if e.is_zero():
        raise ValueError("content of the zero element is undefined")
    return abs(reduce(gcd, e.terms.values()))


def comultiply(e: DPElement, leg: int = 0) -> DPElement:
    """Apply Δ to one leg of e (a ring homomorphism), producing legs + 1 legs."""
    p, depth = e.p, e.depth
    out = DPElement.zero(p, depth, e.legs + 1)
    for key, c in e.terms.items():
        before = key[:leg * depth]
        block = key[leg * depth:(leg + 1) * depth]
        after = key[(leg + 1) * depth:]
        image = DPElement.one(p, depth, 2)
        for i, a in enumerate(block):
            for _ in range(a):
                image = image * dp_comult(i, p, depth)
        left = DPElement(p, depth, leg, {before: 1}) if leg else None
        right_legs = e.legs - leg - 1
        right = DPElement(p, depth, right_legs, {after: 1}) if right_legs else None
        term = image
        if left is not None:
            term = tensor(left, term)
        if right is not None:
            term = tensor(term, right)
        out = out + term.scale(c)
    return out


def primitive_part(n: int, p: int, depth: int | None = None) -> DPElement:
    """Δ(u_n) - u_n ⊗ 1 - 1 ⊗ u_n."""
    delta = dp_comult(n, p, depth)
    d = delta.depth
    return delta - DPElement.u(n, p, d, 2, 0) - DPElement.u(n, p, d, 2, 1)


def evaluate(e: DPElement, values: Iterable[Iterable[object]], ring: object) -> object:
    """
    Evaluate at ring values of (u_0, …, u_{depth-1}) per leg.

    values[leg][i] is an Element standing for u_i in that leg.
    """
    values = [list(v) for v in values]
    total = ring.zero
    for key, c in e.terms.items():
        term = ring.element(c)
        for leg in range(e.legs):
            for i, a in enumerate(key[leg * e.depth:(leg + 1) * e.depth]):
                if a:
                    term = term * values[leg][i] ** a
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def coassociativity_check(p: int, n: int) -> Report:
    """(Δ ⊗ id)Δ(u_k) = (id ⊗ Δ)Δ(u_k) for k ≤ n, symbolically."""
    tally = Tally(f"dp_coassociativity(p={p},n={n})")
    for k in range(n + 1):
        delta = dp_comult(k, p, n + 1)
        left, right = comultiply(delta, 0), comultiply(delta, 1)
        tally.check(left == right, "Δ not coassociative", k=k)
        tally.count("terms", len(left.terms))
    return tally.report()


def rewriting_confluence_check(p: int, bound: int | None = None) -> Report:
    """x^m · x^m' re-reduces to x^(m+m') for all m, m' ≤ bound (default p^3)."""
    bound = p ** 3 if bound is None else bound
    depth = len(digits(2 * bound, p))
    tally = Tally(f"dp_rewriting(p={p})")
    reduced = [dp_reduce(m, p, depth) for m in range(2 * bound + 1)]
    for m in range(bound + 1):
        for m2 in range(m, bound + 1):
            tally.check(reduced[m] * reduced[m2] == reduced[m + m2], "rewriting not confluent", m=m, m2=m2)
    return tally.report()


def not_additive_check(p: int, n: int) -> Report:
    """Δ(u_k) - u_k⊗1 - 1⊗u_k has content 1 for 1 ≤ k ≤ n: u_k is not primitive, even mod p."""
    tally = Tally(f"dp_not_additive(p={p},n={n})")
    for k in range(1, n + 1):
        content = dp_content(primitive_part(k, p))
        tally.check(content == 1, "content is not 1", k=k, content=content)
        tally.note(f"content_u{k}", content)
    return tally.report()
