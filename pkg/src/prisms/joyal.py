"""
The Joyal splitting f: A → W(A) of a δ-ring and the distinguished-element
checks built on it.
Sprint: S6

f(a) is the Witt vector with ghost components (a, φ(a), φ²(a), …), which
exists by Dwork's lemma because φ is a Frobenius lift.  It is the unique
ring map with f∘φ = F∘f and zeroth component a; for the q-de Rham prism
f(q) = [q].

Over Z/p^K component i of f(a) is only meaningful modulo p^{K-i}, so every
comparison below happens after reducing W_n to precision K - n + 1, where
all n components are exact.
"""

from __future__ import annotations

import itertools
import logging
from typing import Optional

from src.checks.tally import Tally, exhaustive_or_sampled
from src.errors import ConsistencyError, PrecisionError, TruncationError
from src.models.schemas import Report
from src.prisms.model import PrismModel
from src.rings import Element, reduction, zmod
from src.sigma.primitive import is_primitive
from src.witt import GhostSeq, WittVector, dwork_lift, frobenius, mul_int, witt_arith, witt_map

logger = logging.getLogger(__name__)


def _require_length(model: PrismModel, n: int) -> None:
    if n < 1:
        raise TruncationError(f"Witt length n={n} must be >= 1")
    if n > model.K:
        raise PrecisionError(f"Witt length n={n} exceeds the p-adic precision K={model.K}")


def ghost_orbit(model: PrismModel, a: Element, n: int) -> GhostSeq:
    """(a, φ(a), …, φ^{n-1}(a))."""
    values = [model.ring.element(a)]
    for _ in range(n - 1):
        values.append(model.phi(values[-1]))
    return GhostSeq.from_elements(model.ring, values)


def joyal_split(model: PrismModel, a: Element | int, n: int) -> WittVector:
    """
    f(a) ∈ W_n(A) over the model ring; component i is meaningful modulo
    p^{K-i}.  Raises DworkConditionError if the ghost orbit is not a ghost
    sequence.
    """
    _require_length(model, n)
    a = model.ring.element(a)
    x = dwork_lift(model.phi, ghost_orbit(model, a, n))
    if x.comps[0] != a.raw:
        raise ConsistencyError(f"zeroth component of f({a}) is {x[0]}")
    logger.debug("f(%s) = %s over %s", a, x, model.name)
    return x


def exact_model(model: PrismModel, n: int) -> PrismModel:
    """The model at the precision where W_n-values of f are exact."""
    _require_length(model, n)
    return model.lowered(n - 1) if n > 1 else model


def split_exact(model: PrismModel, a: Element | int, n: int) -> WittVector:
    """f(a) reduced to precision K - n + 1."""
    x = joyal_split(model, a, n)
    low = exact_model(model, n)
    return x if low is model else witt_map(model.reduce_to(low), x)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def joyal_split_check(model: PrismModel, n: int = 3, sample_count: Optional[int] = 50) -> Report:
    """
    f is a ring map: f(a + b) = f(a) + f(b), f(ab) = f(a)f(b), f(1) = 1;
    F(f(a)) = f(φ(a)) in W_{n-1}; for the q-de Rham prism f(q) = [q].
    """
    tally = Tally(f"joyal_split[{model.name},n={n}]")
    ring = model.ring
    low = exact_model(model, n)

    def f(a: Element) -> WittVector:
        return split_exact(model, a, n)

    tally.check(f(ring.one) == WittVector.one(low.ring, n), "f(1) != 1")
    if model.kind == "q_de_rham":
        q = model.coordinate
        expected = WittVector.teichmuller(low.coordinate, n)
        tally.check(f(q) == expected, "f(q) != [q]", f_q=f(q))
        tally.note("f(q)", f(q))

    pairs = exhaustive_or_sampled(
        ring.cardinality ** 2,
        lambda: itertools.product(ring.elements(), repeat=2),
        lambda rng: (ring.random_element(rng), ring.random_element(rng)),
        tally=tally,
        sample_count=sample_count,
    )
    for a, b in pairs:
        fa, fb = f(a), f(b)
        tally.check(f(a + b) == witt_arith("add", fa, fb), "f is not additive", a=a, b=b)
        tally.check(f(a * b) == witt_arith("mul", fa, fb), "f is not multiplicative", a=a, b=b)
        if n >= 2:
            tally.check(frobenius(fa) == f(model.phi(a)).truncate(n - 1), "F∘f != f∘φ", a=a)
    tally.note("exact_precision", low.K)
    return tally.report()


def distinguished_check(model: PrismModel, n: int = 2) -> Report:
    """
    (a) at the distinguished point f(d) becomes d(0)·1, with d(0) = p·u;
    (b) modulo p, f(d) is primitive in W_n(A/p);
    (c) q-de Rham only: f(d) = Σ_{i<p} [q^i], whose zeroth component is Φ_p(q).
    """
    if n < 2:
        raise TruncationError("distinguished_check needs n >= 2 to see primitivity")
    tally = Tally(f"distinguished[{model.name},n={n}]")
    p = model.p
    low = exact_model(model, n)
    fd = split_exact(model, model.d, n)
    tally.note("f(d)", fd)

    at_point = low.at_distinguished_point
    expected = mul_int(model.d_at_point, WittVector.one(at_point.target, n))
    got = witt_map(at_point, fd)
    tally.check(got == expected, "(a) f(d) at the distinguished point", got=got, expected=expected)
    tally.note("d(0)", model.d_at_point)

    mod_p = witt_map(reduction(low.ring, zmod(p, 1, low.M)), fd)
    tally.check(is_primitive(mod_p), "(b) f(d) mod p is not primitive", reduced=mod_p)

    if model.kind == "q_de_rham":
        q = low.coordinate
        teich = WittVector.zero(low.ring, n)
        for i in range(p):
            teich = witt_arith("add", teich, WittVector.teichmuller(q ** i, n))
        tally.check(teich[0] == low.d, "(c) zeroth component of Σ[q^i] is not Φ_p(q)", got=teich[0])
        tally.check(teich == fd, "(c) f(d) != Σ[q^i]", teich=teich, fd=fd)
    return tally.report()


def cyclotomic_tower_check(model: PrismModel, levels: int = 3) -> Report:
    """
    q-de Rham: φ^k(q) = q^{p^k}, Φ_{p^{k+1}}(q) = Φ_p(φ^k(q)), and
    q^{p^k} - 1 = (q - 1)·Π_{j<k} Φ_{p^{j+1}}(q).
    """
    if model.kind != "q_de_rham":
        raise ValueError(f"the cyclotomic tower lives on the q-de Rham prism, not {model.kind}")
    tally = Tally(f"cyclotomic_tower[{model.name},levels={levels}]")
    p, ring = model.p, model.ring
    q = model.coordinate
    phi_k_q, phi_k_d = q, model.d
    product = q - 1
    for k in range(levels + 1):
        tally.check(phi_k_q == q ** (p ** k), "φ^k(q) != q^{p^k}", k=k)
        cyclotomic = sum((q ** (i * p ** k) for i in range(1, p)), ring.one)
        tally.check(phi_k_d == cyclotomic, "φ^k(Φ_p(q)) != Φ_{p^{k+1}}(q)", k=k, got=phi_k_d)
        tally.check(product == q ** (p ** k) - 1, "q^{p^k} - 1 does not factor", k=k)
        product = product * cyclotomic
        phi_k_q, phi_k_d = model.phi(phi_k_q), model.phi(phi_k_d)
    return tally.report()
