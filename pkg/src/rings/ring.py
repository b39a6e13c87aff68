"""
Exact arithmetic in finite products of local rings Z/p^K[t]/(f).
Sprint: S1

Elements carry a "raw" value in canonical form:

    single factor with e = 1      an int in [0, p^K)
    single factor with e > 1      a tuple of e ints, low → high
    several factors               a tuple of the per-factor values

The raw layer is what the Witt and ghost machinery runs on; Element wraps a
raw value together with its Ring for everything user-facing.
"""

from __future__ import annotations

import itertools
import logging
import random
from functools import lru_cache
from typing import Any, Callable, Iterator, Sequence

from sympy import Poly, sympify
from sympy.core.sympify import SympifyError

from src.config.loader import load_settings
from src.errors import (
    ConsistencyError,
    DivisibilityError,
    EnumerationBoundError,
    IncompatibleOperandsError,
    NotAUnitError,
    RingSpecError,
)
from src.rings.spec import LocalSpec, RingSpec, parse_ring_spec

logger = logging.getLogger(__name__)

Raw = Any


# ---------------------------------------------------------------------------
# Per-factor arithmetic
# ---------------------------------------------------------------------------

class _FactorArith:
    """Arithmetic on one local factor; values are ints (e = 1) or e-tuples."""

    def __init__(self, spec: LocalSpec) -> None:
        self.spec = spec
        self.p = spec.p
        self.m = spec.characteristic
        self.e = spec.e
        self.scalar = spec.e == 1
        self.zero: Raw = 0 if self.scalar else (0,) * self.e
        self.one: Raw = 1 % self.m if self.scalar else (1 % self.m,) + (0,) * (self.e - 1)
        self.tail = tuple(spec.modulus[:-1])
        self.truncated = not spec.galois

    # canonical form ----------------------------------------------------

    def from_int(self, n: int) -> Raw:
        n %= self.m
        return n if self.scalar else (n,) + (0,) * (self.e - 1)

    def from_coeffs(self, coeffs: Sequence[int]) -> Raw:
        if self.scalar:
            return int(coeffs[0]) % self.m if coeffs else 0
        full = [0] * (len(coeffs) + self.e)
        for i, c in enumerate(coeffs):
            full[i] = int(c)
        return self._reduce(full)

    def coeffs(self, a: Raw) -> tuple[int, ...]:
        return (a,) if self.scalar else a

    def _reduce(self, r: list[int]) -> Raw:
        e, m = self.e, self.m
        if len(r) > e:
            if self.truncated:
                r = r[:e]
            else:
                tail = self.tail
                for d in range(len(r) - 1, e - 1, -1):
                    c = r[d]
                    if c:
                        base = d - e
                        for j in range(e):
                            if tail[j]:
                                r[base + j] -= c * tail[j]
                r = r[:e]
        return tuple(c % m for c in r)

    # ring operations ---------------------------------------------------

    def add(self, a: Raw, b: Raw) -> Raw:
        if self.scalar:
            return (a + b) % self.m
        m = self.m
        return tuple((x + y) % m for x, y in zip(a, b))

    def sub(self, a: Raw, b: Raw) -> Raw:
        if self.scalar:
            return (a - b) % self.m
        m = self.m
        return tuple((x - y) % m for x, y in zip(a, b))

    def neg(self, a: Raw) -> Raw:
        if self.scalar:
            return -a % self.m
        m = self.m
        return tuple(-x % m for x in a)

    def scale(self, a: Raw, n: int) -> Raw:
        if self.scalar:
            return a * n % self.m
        m = self.m
        return tuple(x * n % m for x in a)

    def mul(self, a: Raw, b: Raw) -> Raw:
        if self.scalar:
            return a * b % self.m
        e = self.e
        if self.truncated:
            r = [0] * e
            for i, x in enumerate(a):
                if x:
                    for j in range(e - i):
                        y = b[j]
                        if y:
                            r[i + j] += x * y
            m = self.m
            return tuple(c % m for c in r)
        r = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        r[i + j] += x * y
        return self._reduce(r)

    # local structure ---------------------------------------------------

    def in_maximal_ideal(self, a: Raw) -> bool:
        p = self.p
        if self.scalar:
            return a % p == 0
        if self.truncated:
            return a[0] % p == 0
        return all(c % p == 0 for c in a)

    def divisible_by(self, a: Raw, d: int) -> bool:
        if self.scalar:
            return a % d == 0
        return all(c % d == 0 for c in a)

    def centered_divide(self, a: Raw, d: int) -> Raw:
        """Divide each coefficient by d after a centered lift; None if not exact."""
        m, half = self.m, self.m // 2
        if self.scalar:
            c = a - m if a > half else a
            if c % d:
                return None
            return (c // d) % m
        out = []
        for c in a:
            c = c - m if c > half else c
            if c % d:
                return None
            out.append((c // d) % m)
        return tuple(out)

    def elements(self) -> Iterator[Raw]:
        if self.scalar:
            yield from range(self.m)
            return
        # constant term varies fastest
        for combo in itertools.product(range(self.m), repeat=self.e):
            yield combo[::-1]

    def random(self, rng: random.Random) -> Raw:
        if self.scalar:
            return rng.randrange(self.m)
        return tuple(rng.randrange(self.m) for _ in range(self.e))

    def format(self, a: Raw) -> str:
        if self.scalar:
            return str(a)
        terms = []
        for i, c in enumerate(a):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "t" if i == 1 else f"t^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# Ring handle
# ---------------------------------------------------------------------------

class Ring:
    """
    Handle for a finite commutative ring described by a RingSpec.

    Obtain handles through make_ring(); they are cached per spec, so two
    handles for the same spec are the same object.
    """

    def __init__(self, spec: RingSpec) -> None:
        self.spec = spec
        self.p = spec.p
        self._factors = tuple(_FactorArith(f) for f in spec.factors)
        self._single = len(self._factors) == 1
        if self._single:
            f = self._factors[0]
            self.add_raw: Callable[[Raw, Raw], Raw] = f.add
            self.sub_raw: Callable[[Raw, Raw], Raw] = f.sub
            self.mul_raw: Callable[[Raw, Raw], Raw] = f.mul
            self.neg_raw: Callable[[Raw], Raw] = f.neg
            self.scale_raw: Callable[[Raw, int], Raw] = f.scale
            self.zero_raw: Raw = f.zero
            self.one_raw: Raw = f.one
        else:
            fs = self._factors
            self.add_raw = lambda a, b: tuple(f.add(x, y) for f, x, y in zip(fs, a, b))
            self.sub_raw = lambda a, b: tuple(f.sub(x, y) for f, x, y in zip(fs, a, b))
            self.mul_raw = lambda a, b: tuple(f.mul(x, y) for f, x, y in zip(fs, a, b))
            self.neg_raw = lambda a: tuple(f.neg(x) for f, x in zip(fs, a))
            self.scale_raw = lambda a, n: tuple(f.scale(x, n) for f, x in zip(fs, a))
            self.zero_raw = tuple(f.zero for f in fs)
            self.one_raw = tuple(f.one for f in fs)

    def __repr__(self) -> str:
        return f"Ring({self.spec})"

    def __str__(self) -> str:
        return str(self.spec)

    # ------------------------------------------------------------------
    # Basic data
    # ------------------------------------------------------------------

    @property
    def cardinality(self) -> int:
        return self.spec.cardinality

    @property
    def is_char_p(self) -> bool:
        return self.spec.is_char_p

    @property
    def factor_count(self) -> int:
        return len(self._factors)

    @property
    def zero(self) -> Element:
        return Element(self, self.zero_raw)

    @property
    def one(self) -> Element:
        return Element(self, self.one_raw)

    @property
    def gen(self) -> Element:
        """The canonical generator t (zero in factors without a variable)."""
        parts = []
        for f in self._factors:
            parts.append(f.zero if f.scalar else f.from_coeffs([0, 1]))
        return Element(self, parts[0] if self._single else tuple(parts))

    def lifted(self, extra: int) -> Ring:
        """The same presentation with p-adic precision raised by extra."""
        return make_ring(self.spec.with_extra_precision(extra))

    # ------------------------------------------------------------------
    # Raw-level helpers
    # ------------------------------------------------------------------

    def from_int_raw(self, n: int) -> Raw:
        if self._single:
            return self._factors[0].from_int(n)
        return tuple(f.from_int(n) for f in self._factors)

    def pow_raw(self, a: Raw, n: int) -> Raw:
        if n < 0:
            raise ValueError("negative exponent; invert first")
        result = self.one_raw
        base = a
        mul = self.mul_raw
        while n:
            if n & 1:
                result = mul(result, base)
            n >>= 1
            if n:
                base = mul(base, base)
        return result

    def factor_raws(self, a: Raw) -> tuple[Raw, ...]:
        return (a,) if self._single else a

    def join_factor_raws(self, parts: Sequence[Raw]) -> Raw:
        return parts[0] if self._single else tuple(parts)

    def coeffs_raw(self, a: Raw) -> tuple[tuple[int, ...], ...]:
        return tuple(f.coeffs(x) for f, x in zip(self._factors, self.factor_raws(a)))

    def from_coeffs_raw(self, coeffs: Sequence[Sequence[int]]) -> Raw:
        if len(coeffs) != len(self._factors):
            raise IncompatibleOperandsError(
                f"{len(coeffs)} coefficient blocks for {len(self._factors)} factors"
            )
        return self.join_factor_raws([f.from_coeffs(c) for f, c in zip(self._factors, coeffs)])

    def divide_exact_raw(self, a: Raw, d: int) -> Raw:
        """Exact division of a by the integer d (a p-power) using centered lifts."""
        parts = []
        for f, x in zip(self._factors, self.factor_raws(a)):
            q = f.centered_divide(x, d)
            if q is None:
                raise DivisibilityError(f"{f.format(x)} is not divisible by {d} in {f.spec}")
            parts.append(q)
        return self.join_factor_raws(parts)

    def divisible_raw(self, a: Raw, d: int) -> bool:
        return all(f.divisible_by(x, d) for f, x in zip(self._factors, self.factor_raws(a)))

    def reduce_raw(self, a: Raw, source: Ring) -> Raw:
        """Reduce a raw value of a higher-precision ring of the same shape."""
        return self.from_coeffs_raw(source.coeffs_raw(a))

    def is_unit_raw(self, a: Raw) -> bool:
        return not any(f.in_maximal_ideal(x) for f, x in zip(self._factors, self.factor_raws(a)))

    def is_nilpotent_raw(self, a: Raw) -> bool:
        return all(f.in_maximal_ideal(x) for f, x in zip(self._factors, self.factor_raws(a)))

    def local_flags_raw(self, a: Raw) -> tuple[bool, ...]:
        """Per factor: True when the component lies in the maximal ideal."""
        return tuple(f.in_maximal_ideal(x) for f, x in zip(self._factors, self.factor_raws(a)))

    def inverse_raw(self, a: Raw) -> Raw:
        if not self.is_unit_raw(a):
            raise NotAUnitError(f"{self.format_raw(a)} is not a unit in {self.spec}")
        parts = []
        for f, x in zip(self._factors, self.factor_raws(a)):
            parts.append(_local_inverse(f, x))
        return self.join_factor_raws(parts)

    def format_raw(self, a: Raw) -> str:
        if self._single:
            return self._factors[0].format(a)
        return "(" + ", ".join(f.format(x) for f, x in zip(self._factors, a)) + ")"

    # ------------------------------------------------------------------
    # Element-level API
    # ------------------------------------------------------------------

    def element(self, value: Any) -> Element:
        """Coerce an int, an Element of this ring, a string or coefficient blocks."""
        if isinstance(value, Element):
            if value.ring is not self:
                raise IncompatibleOperandsError(f"element of {value.ring} used in {self}")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return Element(self, self.from_int_raw(value))
        if isinstance(value, str):
            return self.parse_element(value)
        if isinstance(value, (list, tuple)):
            blocks = value
            if self._single:
                blocks = [value]
            return Element(self, self.from_coeffs_raw([list(b) if isinstance(b, (list, tuple)) else [b]
                                                      for b in blocks]))
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def arith(self, op: str, a: Element, b: Element | None = None) -> Element:
        """Dispatch one of add, mul, neg, sub."""
        a = self.element(a)
        if op == "neg":
            return Element(self, self.neg_raw(a.raw))
        if b is None:
            raise ValueError(f"operation {op!r} needs two operands")
        b = self.element(b)
        if op == "add":
            return Element(self, self.add_raw(a.raw, b.raw))
        if op == "sub":
            return Element(self, self.sub_raw(a.raw, b.raw))
        if op == "mul":
            return Element(self, self.mul_raw(a.raw, b.raw))
        raise ValueError(f"unknown ring operation {op!r}")

    def is_unit(self, a: Element) -> bool:
        return self.is_unit_raw(self.element(a).raw)

    def is_nilpotent(self, a: Element) -> bool:
        return self.is_nilpotent_raw(self.element(a).raw)

    def inverse(self, a: Element) -> Element:
        return Element(self, self.inverse_raw(self.element(a).raw))

    def elements(self) -> Iterator[Element]:
        """Every element exactly once, deterministic order."""
        self.check_enumerable()
        if self._single:
            for x in self._factors[0].elements():
                yield Element(self, x)
            return
        for combo in itertools.product(*(list(f.elements()) for f in self._factors)):
            yield Element(self, combo)

    def random_element(self, rng: random.Random) -> Element:
        return Element(self, self.join_factor_raws([f.random(rng) for f in self._factors]))

    def check_enumerable(self, size: int | None = None) -> None:
        bound = load_settings().enumeration_bound
        size = self.cardinality if size is None else size
        if size > bound:
            raise EnumerationBoundError(
                f"{self.spec}: {size} elements exceeds enumeration bound {bound}"
            )

    def parse_element(self, text: str) -> Element:
        """
        Parse "3", "1+2*t+t^2" or "(1, 2)" for products.  Integer
        coefficients are reduced; negatives are allowed.
        """
        stripped = text.strip()
        if self._single:
            blocks = [stripped]
        else:
            if not (stripped.startswith("(") and stripped.endswith(")")):
                raise RingSpecError(f"product element must be a tuple: {text!r}", 0)
            blocks = _split_top_level(stripped[1:-1])
            if len(blocks) != len(self._factors):
                raise RingSpecError(
                    f"expected {len(self._factors)} components, got {len(blocks)}", 0
                )
        parts = []
        for f, block in zip(self._factors, blocks):
            parts.append(f.from_coeffs(_parse_poly_coeffs(block, max(text.find(block), 0))))
        return Element(self, self.join_factor_raws(parts))

    def format_element(self, a: Element) -> str:
        return self.format_raw(self.element(a).raw)


def _local_inverse(f: _FactorArith, x: Raw) -> Raw:
    # residue inverse via x^(q-2), then Newton b <- b(2 - xb)
    q = f.spec.residue_size
    b = f.one
    if q > 2:
        base, n = x, q - 2
        while n:
            if n & 1:
                b = f.mul(b, base)
            n >>= 1
            if n:
                base = f.mul(base, base)
    two = f.from_int(2)
    for _ in range(64):
        xb = f.mul(x, b)
        if xb == f.one:
            return b
        b = f.mul(b, f.sub(two, xb))
    raise ConsistencyError(f"Newton inversion did not converge in {f.spec}")


def _split_top_level(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [s.strip() for s in parts]


@lru_cache(maxsize=1024)
def _parse_poly_coeffs(text: str, position: int) -> tuple[int, ...]:
    stripped = text.strip()
    try:
        return (int(stripped, 0),)
    except ValueError:
        pass
    try:
        expr = sympify(stripped.replace("^", "**"), rational=True)
    except (SympifyError, SyntaxError, TypeError) as exc:
        raise RingSpecError(f"cannot parse element {stripped!r}", position) from exc
    symbols = sorted(expr.free_symbols, key=str)
    if len(symbols) > 1:
        raise RingSpecError(f"element {stripped!r} uses more than one variable", position)
    if not symbols:
        if not expr.is_Integer:
            raise RingSpecError(f"element {stripped!r} is not an integer", position)
        return (int(expr),)
    poly = Poly(expr, symbols[0])
    if not all(c.is_Integer for c in poly.all_coeffs()):
        raise RingSpecError(f"element {stripped!r} has non-integer coefficients", position)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

class Element:
    """An immutable ring element in canonical form."""

    __slots__ = ("ring", "raw")

    def __init__(self, ring: Ring, raw: Raw) -> None:
        self.ring = ring
        self.raw = raw

    def _coerce(self, other: Any) -> Raw:
        if isinstance(other, Element):
            if other.ring is not self.ring:
                raise IncompatibleOperandsError(f"{self.ring} vs {other.ring}")
            return other.raw
        if isinstance(other, int):
            return self.ring.from_int_raw(other)
        return NotImplemented

    def __add__(self, other: Any) -> Element:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring.add_raw(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other: Any) -> Element:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring.sub_raw(self.raw, o))

    def __rsub__(self, other: Any) -> Element:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring.sub_raw(o, self.raw))

    def __mul__(self, other: Any) -> Element:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring.mul_raw(self.raw, o))

    __rmul__ = __mul__

    def __neg__(self) -> Element:
        return Element(self.ring, self.ring.neg_raw(self.raw))

    def __pow__(self, n: int) -> Element:
        if n < 0:
            return Element(self.ring, self.ring.pow_raw(self.ring.inverse_raw(self.raw), -n))
        return Element(self.ring, self.ring.pow_raw(self.raw, n))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Element):
            return self.ring is other.ring and self.raw == other.raw
        if isinstance(other, int) and not isinstance(other, bool):
            return self.raw == self.ring.from_int_raw(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring.spec, self.raw))

    def __repr__(self) -> str:
        return f"Element({self.ring.format_raw(self.raw)} in {self.ring.spec})"

    def __str__(self) -> str:
        return self.ring.format_raw(self.raw)

    @property
    def coeffs(self) -> tuple[tuple[int, ...], ...]:
        """Per-factor coefficient tuples (length e each)."""
        return self.ring.coeffs_raw(self.raw)

    def is_unit(self) -> bool:
        return self.ring.is_unit_raw(self.raw)

    def is_nilpotent(self) -> bool:
        return self.ring.is_nilpotent_raw(self.raw)

    def inverse(self) -> Element:
        return Element(self.ring, self.ring.inverse_raw(self.raw))


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _ring_for(spec: RingSpec) -> Ring:
    logger.debug("make_ring: new handle for %s (%d elements)", spec, spec.cardinality)
    return Ring(spec)


def make_ring(spec: RingSpec | str, *, enumerable: bool = False) -> Ring:
    """
    Ring handle for a spec or spec string.

    With enumerable=True the cardinality is checked against the configured
    enumeration bound up front.
    """
    if isinstance(spec, str):
        spec = parse_ring_spec(spec)
    ring = _ring_for(spec)
    if enumerable:
        ring.check_enumerable()
    return ring


def zmod(p: int, K: int = 1, e: int = 1) -> Ring:
    """Shorthand for make_ring(Zmod(p^K)[t]/(t^e))."""
    return make_ring(RingSpec.local(p, K, e))
