"""
Primitive Witt vectors and the contracting algorithms.
Sprint: S4

x ∈ W_n(R) is primitive when x_0 is nilpotent and x_1 is a unit (in every
local factor).  Frobenius contracts primitive vectors onto the orbit of p:
F^n(x) = p·u with u a unit, and a unit u with p·u = p satisfies F^n(u) = 1.
"""

from __future__ import annotations

import itertools
import logging
from functools import lru_cache
from typing import Optional

from src.checks.tally import Tally, exhaustive_or_sampled
from src.errors import (
    ConsistencyError,
    IncompatibleOperandsError,
    NotAUnitError,
    PrimitivityError,
    TruncationError,
)
from src.models.schemas import Report
from src.rings import Element, Ring
from src.witt import (
    WittVector,
    enumerate_vectors,
    frobenius,
    ghost,
    iterate_frobenius,
    iterate_verschiebung,
    mul_int,
    p2_over_p,
    random_vector,
    verschiebung,
)

logger = logging.getLogger(__name__)


def is_primitive(x: WittVector) -> bool:
    """x_0 nilpotent and x_1 a unit."""
    if x.n < 2:
        raise TruncationError("primitivity needs length >= 2")
    ring = x.ring
    return ring.is_nilpotent_raw(x.comps[0]) and ring.is_unit_raw(x.comps[1])


def primitive_vectors(ring: Ring, n: int, degree: int = 0) -> list[WittVector]:
    return [x for x in enumerate_vectors(ring, n, degree) if is_primitive(x)]


def p_times_one(ring: Ring, n: int, degree: int = 0) -> WittVector:
    return mul_int(ring.p, WittVector.one(ring, n)).with_degree(degree)


# ---------------------------------------------------------------------------
# p-th roots in characteristic p
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _pth_roots(ring: Ring) -> dict:
    roots: dict = {}
    for a in ring.elements():
        roots.setdefault((a ** ring.p).raw, a.raw)
    return roots


def pth_root(ring: Ring, a) -> Optional[object]:
    """Some r with r^p = a (raw values), or None."""
    return _pth_roots(ring).get(a)


# ---------------------------------------------------------------------------
# Contracting
# ---------------------------------------------------------------------------

def contract_to_p(x: WittVector) -> tuple[int, WittVector]:
    """
    (n, u) with F^n(x) = p·u and u a unit.

    n = 0 only when x_0 = 0, p = 0 in R and every tail component is a p-th
    power; otherwise n is minimal with x_0^{p^n} = 0 and u = F^{n-1}(tail).
    """
    if not is_primitive(x):
        raise PrimitivityError(f"{x} is not primitive")
    ring, p = x.ring, x.p
    tail = WittVector(ring, x.comps[1:], x.degree * p)
    if x.comps[0] == ring.zero_raw and ring.is_char_p:
        roots = [pth_root(ring, c) for c in tail.comps]
        if all(r is not None for r in roots):
            u = WittVector(ring, roots + [ring.zero_raw], x.degree)
            if mul_int(p, u) != x:
                raise ConsistencyError(f"p·F^-1(tail) != {x}")
            return 0, u
    n, power = 1, ring.pow_raw(x.comps[0], p)
    while power != ring.zero_raw:
        n += 1
        power = ring.pow_raw(power, p)
    if n >= x.n:
        raise TruncationError(f"F^{n} of a length-{x.n} vector is empty; supply a longer truncation")
    u = iterate_frobenius(tail, n - 1)
    if iterate_frobenius(x, n) != mul_int(p, u):
        raise ConsistencyError(f"F^{n}({x}) != p·{u}")
    return n, u


def unit_to_one(u: WittVector) -> int:
    """Minimal n with F^n(u) = 1, for a unit u with p·u = p."""
    if not u.is_unit():
        raise NotAUnitError(f"{u} is not a unit")
    if mul_int(u.p, u) != p_times_one(u.ring, u.n, u.degree):
        raise ValueError(f"p·{u} != p")
    for n in range(u.n):
        if iterate_frobenius(u, n).is_one():
            return n
    raise TruncationError(f"F^n({u}) never reaches 1 at length {u.n}")


def _teichmuller_witness(ring: Ring, a: WittVector, n: int) -> WittVector:
    if a.ring is ring:
        return a.truncate(n)
    spec = a.ring.spec
    if a.p != ring.p or a.ring.factor_count != 1 or spec.factors[0].e != 1 \
            or spec.nilpotency_order < ring.spec.nilpotency_order:
        raise IncompatibleOperandsError(f"witness over {a.ring} does not map to {ring}")
    return WittVector(ring, [ring.from_int_raw(int(c)) for c in a.comps[:n]])


def orbit_normalize(z: WittVector, a: Optional[WittVector] = None) -> WittVector:
    """
    The unit u with z = p·u, for z ≡ p modulo W(p^2 R).

    Writing z - p = Σ V^i[p^2 b_i], u = 1 + Σ V^i(a·[b_i]) with p·a = [p^2].
    """
    ring, p, n = z.ring, z.p, z.n
    one = WittVector.one(ring, n)
    w = z - p_times_one(ring, n)
    if not all(ring.divisible_raw(c, p * p) for c in w.comps):
        raise ValueError(f"{z} is not congruent to p modulo p^2")
    if a is None:
        a = p2_over_p(p, n, ring.spec.nilpotency_order)
    a = _teichmuller_witness(ring, a, n)
    u = one
    for i, c in enumerate(w.comps):
        if c == ring.zero_raw:
            continue
        b = Element(ring, ring.divide_exact_raw(c, p * p))
        term = a.truncate(n - i) * WittVector.teichmuller(b, n - i)
        u = u + iterate_verschiebung(term, i)
    if mul_int(p, u) != z:
        raise ConsistencyError(f"p·{u} != {z}")
    return u


# ---------------------------------------------------------------------------
# Perfect fields
# ---------------------------------------------------------------------------

def _require_finite_field(ring: Ring) -> int:
    if ring.factor_count != 1 or not ring.spec.factors[0].is_field:
        raise IncompatibleOperandsError(f"{ring} is not a finite field")
    return ring.spec.factors[0].residue_size


def perfect_normal_form(x: WittVector) -> WittVector:
    """The unit u ∈ W_{n-1}(F_q) with x = π_n(u·V(1))."""
    q = _require_finite_field(x.ring)
    if not is_primitive(x):
        raise PrimitivityError(f"{x} is not primitive")
    ring, n = x.ring, x.n
    # V(y) = u·V(1) = V(F(u)): u is the inverse Frobenius of the tail
    u = WittVector(ring, [ring.pow_raw(c, q // ring.p) for c in x.comps[1:]])
    padded = WittVector(ring, u.comps + (ring.zero_raw,))
    if padded * verschiebung(WittVector.one(ring, n - 1)) != x:
        raise ConsistencyError(f"normal form of {x} does not reproduce it")
    return u


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def contracting_check(ring: Ring, n: int) -> Report:
    """Every primitive x ∈ W_n(R) contracts to p·unit; n is recorded."""
    tally = Tally(f"contracting(n={n})")
    worst = 0
    for x in primitive_vectors(ring, n):
        try:
            k, u = contract_to_p(x)
        except TruncationError:
            tally.count("too_short")
            continue
        tally.check(u.is_unit(), "u is not a unit", x=x, u=u)
        worst = max(worst, k)
    tally.note("max_n", worst)
    return tally.report()


def unit_to_one_check(ring: Ring, n: int) -> Report:
    """Units u ∈ W_n(R) with p·u = p all reach 1 under F."""
    tally = Tally(f"unit_to_one(n={n})")
    p_one = p_times_one(ring, n)
    worst = 0
    for u in enumerate_vectors(ring, n):
        if not u.is_unit() or mul_int(ring.p, u) != p_one:
            continue
        try:
            k = unit_to_one(u)
        except TruncationError:
            tally.count("too_short")
            continue
        tally.check(k <= ring.spec.nilpotency_order, "n exceeds the nilpotency order", u=u, n=k)
        worst = max(worst, k)
    tally.note("max_n", worst)
    return tally.report()


def orbit_normalize_check(ring: Ring, n: int) -> Report:
    """Every z ≡ p mod W(p^2 R) equals p·u for a unit u."""
    tally = Tally(f"orbit_of_p(n={n})")
    p = ring.p
    small = [e.raw for e in ring.elements() if ring.divisible_raw(e.raw, p * p)]
    p_one = p_times_one(ring, n)
    a = p2_over_p(p, n, ring.spec.nilpotency_order)
    for comps in itertools.product(small, repeat=n):
        z = p_one + WittVector(ring, comps)
        u = orbit_normalize(z, a)
        tally.check(u.is_unit() and mul_int(p, u) == z, "z != p·unit", z=z)
    tally.count("ideal_size", len(small))
    return tally.report()


def frobenius_primitivity_check(ring: Ring, n: int) -> Report:
    """x ∈ W_{n+1} is primitive iff F(x) ∈ W_n is."""
    if n < 2:
        raise TruncationError("need n >= 2 so that F(x) has a first component")
    tally = Tally(f"frobenius_primitive(n={n})")
    for x in enumerate_vectors(ring, n + 1):
        tally.check(is_primitive(x) == is_primitive(frobenius(x)), "F changes primitivity", x=x)
    return tally.report()


def primitive_times_unit_check(ring: Ring, n: int) -> Report:
    tally = Tally(f"primitive_times_unit(n={n})")
    prims = primitive_vectors(ring, n)
    units = [u for u in enumerate_vectors(ring, n) if u.is_unit()]

    def everything():
        return itertools.product(prims, units)

    def one_sample(rng):
        return prims[rng.randrange(len(prims))], units[rng.randrange(len(units))]

    for x, u in exhaustive_or_sampled(len(prims) * len(units), everything, one_sample, tally=tally):
        tally.check(is_primitive(x * u), "x·u not primitive", x=x, u=u)
    return tally.report()


def divides_primitive_check(ring: Ring, n: int = 2) -> Report:
    """Over reduced F_p-algebras: β and αβ primitive forces α to be a unit."""
    if not ring.is_char_p or not all(f.is_field for f in ring.spec.factors):
        raise IncompatibleOperandsError(f"{ring} is not a reduced F_p-algebra")
    tally = Tally(f"divides_primitive(n={n})")
    vectors = list(enumerate_vectors(ring, n))
    prims = [b for b in vectors if is_primitive(b)]
    for alpha, beta in itertools.product(vectors, prims):
        if is_primitive(alpha * beta):
            tally.check(alpha.is_unit(), "α not a unit", alpha=alpha, beta=beta)
    return tally.report()


def degeneracy_check(ring: Ring, n: int) -> Report:
    """Primitive x with x_0 = 0 and w_n(x) = 0 only exist when p = 0 in R."""
    tally = Tally(f"ghost_degeneracy(n={n})")
    p_is_zero = ring.from_int_raw(ring.p) == ring.zero_raw
    hits = 0
    for x in primitive_vectors(ring, n + 1):
        if x.comps[0] != ring.zero_raw:
            continue
        if ghost(x).entries[n] == ring.zero_raw:
            hits += 1
            tally.check(p_is_zero, "w_n(x) = 0 with x_0 = 0 but p != 0", x=x)
    tally.count("degenerate", hits)
    return tally.report()


def perfect_normal_form_check(ring: Ring, n: int = 3) -> Report:
    """Each primitive x ∈ W_n(F_q) is π_n(u·V(1)) for exactly one unit u ∈ W_{n-1}."""
    _require_finite_field(ring)
    tally = Tally(f"perfect_normal_form(n={n})")
    v1 = verschiebung(WittVector.one(ring, n - 1))
    preimages: dict[WittVector, int] = {}
    for u in enumerate_vectors(ring, n - 1):
        if u.is_unit():
            image = WittVector(ring, u.comps + (ring.zero_raw,)) * v1
            preimages[image] = preimages.get(image, 0) + 1
    for x in primitive_vectors(ring, n):
        tally.check(preimages.get(x, 0) == 1, "not exactly one unit", x=x, count=preimages.get(x, 0))
        tally.check(perfect_normal_form(x).is_unit(), "normal form not a unit", x=x)
    return tally.report()


def random_primitive(ring: Ring, n: int, rng, attempts: int = 1000) -> WittVector:
    for _ in range(attempts):
        x = random_vector(ring, n, rng)
        if is_primitive(x):
            return x
    raise PrimitivityError(f"no primitive vector found in {attempts} draws over {ring}")
