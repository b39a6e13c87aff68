"""
Universal p-typical Witt polynomials.
Sprint: S2

For each prime p, length n and operation

    S   sum          S_i(x, y)    components of x + y
    P   product      P_i(x, y)    components of x * y
    N   negation     N_i(x)       components of -x
    F   Frobenius    F_i(x)       components of F(x), x of length n + 1

the integer polynomials are obtained from the ghost relations
w_i(result) = op(w_i(x), w_i(y)) by solving for the i-th component and
dividing exactly by p^i.  Each step is verified symbolically
(acc + p^i * R_i == target_i) before the family is memoized.

Families are compiled into nested Horner-style trees over the variables so
evaluation only touches the ring's raw add / mul.
"""

from __future__ import annotations

import logging
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Callable, Literal, Sequence, Union

from sympy.polys.domains import ZZ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing, ring as poly_ring

from src.config.loader import load_settings
from src.errors import ConsistencyError, SymbolicBoundError

logger = logging.getLogger(__name__)

OpTag = Literal["S", "P", "N", "F"]
Raw = Any

_ARITY = {"S": 2, "P": 2, "N": 1, "F": 1}


# ---------------------------------------------------------------------------
# Compiled evaluation
# ---------------------------------------------------------------------------

# A node is either an integer constant or (variable index, ((exponent, child), ...)).
_Node = Union[int, tuple[int, tuple[tuple[int, "_Node"], ...]]]


def _compile(terms: list[tuple[tuple[int, ...], int]], k: int, nvars: int) -> _Node:
    k_next = next((i for i in range(k, nvars) if any(m[i] for m, _ in terms)), None)
    if k_next is None:
        return sum(c for _, c in terms)
    groups: dict[int, list[tuple[tuple[int, ...], int]]] = defaultdict(list)
    for m, c in terms:
        groups[m[k_next]].append((m, c))
    return (k_next, tuple((e, _compile(g, k_next + 1, nvars)) for e, g in sorted(groups.items())))


def _evaluate(node: _Node, ring: Any, power: Callable[[int, int], Raw]) -> Raw:
    if isinstance(node, int):
        return ring.from_int_raw(node)
    k, branches = node
    add, mul, scale = ring.add_raw, ring.mul_raw, ring.scale_raw
    acc = ring.zero_raw
    for e, child in branches:
        if isinstance(child, int):
            term = scale(power(k, e), child) if e else ring.from_int_raw(child)
        else:
            term = _evaluate(child, ring, power)
            if e:
                term = mul(term, power(k, e))
        acc = add(acc, term)
    return acc


@dataclass(frozen=True)
class CompiledPoly:
    """One integer polynomial ready for evaluation on raw ring values."""

    tree: _Node
    nvars: int

    @classmethod
    def from_poly(cls, poly: PolyElement) -> CompiledPoly:
        nvars = poly.ring.ngens
        terms = [(tuple(m), int(c)) for m, c in poly.terms()]
        if not terms:
            return cls(0, nvars)
        return cls(_compile(terms, 0, nvars), nvars)

    def __call__(self, ring: Any, values: Sequence[Raw]) -> Raw:
        return _evaluate(self.tree, ring, _power_cache(ring, values))


def _power_cache(ring: Any, values: Sequence[Raw]) -> Callable[[int, int], Raw]:
    cache: dict[tuple[int, int], Raw] = {}

    def power(k: int, e: int) -> Raw:
        key = (k, e)
        hit = cache.get(key)
        if hit is None:
            hit = values[k] if e == 1 else ring.pow_raw(values[k], e)
            cache[key] = hit
        return hit

    return power


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WittPolyFamily:
    """The n universal polynomials of one operation at prime p."""

    p: int
    n: int
    op: OpTag
    ring: PolyRing
    polynomials: tuple[PolyElement, ...]
    compiled: tuple[CompiledPoly, ...] = field(repr=False, compare=False)

    @property
    def arity(self) -> int:
        return _ARITY[self.op]

    def evaluate(self, ring: Any, xs: Sequence[Raw], ys: Sequence[Raw] = ()) -> tuple[Raw, ...]:
        """Substitute raw ring values (x components, then y components)."""
        values = tuple(xs) + tuple(ys)
        power = _power_cache(ring, values)
        return tuple(_evaluate(c.tree, ring, power) for c in self.compiled)

    def __str__(self) -> str:
        lines = [f"{self.op}_{i} = {poly}" for i, poly in enumerate(self.polynomials)]
        return "\n".join(lines)


def _ghost(vars_: Sequence[PolyElement], i: int, p: int) -> PolyElement:
    return sum((p ** j * vars_[j] ** (p ** (i - j)) for j in range(i + 1)), vars_[0].ring.zero)


def _solve(p: int, n: int, targets: Sequence[PolyElement], op: str) -> list[PolyElement]:
    """Components R_0..R_{n-1} with w_i(R) == targets[i], by exact division."""
    comps: list[PolyElement] = []
    powers: list[PolyElement] = []   # powers[j] == comps[j] ** p^(i-1-j) entering step i
    for i in range(n):
        powers = [c ** p for c in powers]
        acc = sum((p ** j * pw for j, pw in enumerate(powers)), targets[i].ring.zero)
        try:
            r_i = (targets[i] - acc).exquo(targets[i].ring(p ** i))
        except ExactQuotientFailed as exc:
            raise ConsistencyError(f"{op}_{i} for p={p}: ghost relation not divisible by {p}^{i}") from exc
        if acc + p ** i * r_i != targets[i]:
            raise ConsistencyError(f"{op}_{i} for p={p} fails ghost compatibility")
        comps.append(r_i)
        powers.append(r_i)
    return comps


def _generate(p: int, n: int, op: OpTag) -> WittPolyFamily:
    if op in ("S", "P"):
        names = [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)]
    elif op == "N":
        names = [f"x{i}" for i in range(n)]
    else:
        names = [f"x{i}" for i in range(n + 1)]
    R, *gens = poly_ring(",".join(names), ZZ)
    xs = gens[: n + 1] if op == "F" else gens[:n]
    if op == "S":
        ys = gens[n:]
        targets = [_ghost(xs, i, p) + _ghost(ys, i, p) for i in range(n)]
    elif op == "P":
        ys = gens[n:]
        targets = [_ghost(xs, i, p) * _ghost(ys, i, p) for i in range(n)]
    elif op == "N":
        targets = [-_ghost(xs, i, p) for i in range(n)]
    else:
        targets = [_ghost(xs, i + 1, p) for i in range(n)]
    polys = tuple(_solve(p, n, targets, op))
    compiled = tuple(CompiledPoly.from_poly(f) for f in polys)
    logger.debug("generated %s polynomials for p=%d n=%d (%d terms)",
                 op, p, n, sum(len(f.terms()) for f in polys))
    return WittPolyFamily(p, n, op, R, polys, compiled)


# ---------------------------------------------------------------------------
# Memo cache (read-mostly; writers serialize on the lock)
# ---------------------------------------------------------------------------

_CACHE: dict[tuple[int, int, str], WittPolyFamily] = {}
_LOCK = threading.Lock()


def universal_polys(p: int, n: int, op: OpTag) -> WittPolyFamily:
    """
    Memoized universal polynomials for (p, n, op).

    Raises SymbolicBoundError when n exceeds the configured symbolic bound.
    Families already in the cache are returned without consulting the bound.
    """
    key = (p, n, op)
    family = _CACHE.get(key)
    if family is not None:
        return family
    if op not in _ARITY:
        raise ValueError(f"unknown Witt operation {op!r}")
    if n < 1:
        raise ValueError(f"length n={n} must be >= 1")
    bound = load_settings().symbolic_bound
    if n > bound:
        raise SymbolicBoundError(f"{op} polynomials of length {n} exceed symbolic bound {bound}")
    with _LOCK:
        family = _CACHE.get(key)
        if family is None:
            family = _generate(p, n, op)
            _CACHE[key] = family
    return family


def clear_cache() -> None:
    with _LOCK:
        _CACHE.clear()
