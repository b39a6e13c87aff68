"""
Points of the economic presentation and the groups acting on them.
Sprint: S4

All line bundles are trivialized.  A rigidified point over R at truncation
n is (v_-, ζ, γ) with v_- ∈ R (degree -1), ζ ∈ W_n(R) of degree p and
γ ∈ W_n(R) of degree 0 such that [v_-^p]ζ + pγ is primitive.  Economic
points have γ = 1.

The matrix group acts through (α, w):
    ζ ↦ w^{-1}(ζ + pα),   γ ↦ w^{-1}(γ - [v_-^p]α).
Its subgroup with w = 1 - [v_-^p]α preserves γ = 1; on α that is the law
α_1 * α_2 = α_1 + α_2 - [v_-^p]α_1·α_2.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Any, Iterator, Literal, Optional, Sequence, Union

from src.checks.tally import Tally, exhaustive_or_sampled
from src.errors import (
    ConsistencyError,
    DegreeError,
    IncompatibleOperandsError,
    NotAUnitError,
    PrimitivityError,
)
from src.models.schemas import Report, SigmaPointPayload
from src.rings import Element, Ring, make_ring
from src.sigma.primitive import is_primitive
from src.witt import (
    WittVector,
    enumerate_vectors,
    frobenius,
    mul_int,
    random_vector,
    teichmuller,
    witt_invert,
)

logger = logging.getLogger(__name__)

Flavor = Literal["G", "Gmat"]
VectorLike = Union[WittVector, Sequence[Any]]


def v_power(v: Element, k: int, n: int) -> WittVector:
    """[v^k] of degree -k."""
    return teichmuller(v ** k, n, degree=-k)


def _as_vector(ring: Ring, value: VectorLike, n: Optional[int], degree: int) -> WittVector:
    if isinstance(value, WittVector):
        if value.ring is not ring:
            raise IncompatibleOperandsError(f"{value} lives over {value.ring}, not {ring}")
        if value.degree != degree:
            raise DegreeError(f"expected degree {degree}, got {value.degree}")
        return value
    vec = WittVector.from_elements(ring, value, degree)
    if n is not None and vec.n != n:
        raise IncompatibleOperandsError(f"expected length {n}, got {vec.n}")
    return vec


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaPoint:
    """(v_-, ζ, γ) with [v_-^p]ζ + pγ primitive."""

    v_minus: Element
    zeta: WittVector
    gamma: WittVector

    @property
    def ring(self) -> Ring:
        return self.zeta.ring

    @property
    def n(self) -> int:
        return self.zeta.n

    @property
    def p(self) -> int:
        return self.zeta.p

    @property
    def is_economic(self) -> bool:
        return self.gamma.is_one()

    def primitive_element(self) -> WittVector:
        """[v_-^p]ζ + pγ."""
        return v_power(self.v_minus, self.p, self.n) * self.zeta + mul_int(self.p, self.gamma)

    def to_payload(self) -> SigmaPointPayload:
        fmt = self.ring.format_raw
        return SigmaPointPayload(
            ring=str(self.ring),
            v_minus=str(self.v_minus),
            zeta=[fmt(c) for c in self.zeta.comps],
            gamma=[fmt(c) for c in self.gamma.comps],
        )

    @classmethod
    def from_payload(cls, payload: SigmaPointPayload) -> SigmaPoint:
        ring = make_ring(payload.ring)
        parse = ring.parse_element
        return make_sigma_point(
            ring,
            parse(payload.v_minus),
            [parse(c) for c in payload.zeta],
            [parse(c) for c in payload.gamma],
        )

    def __str__(self) -> str:
        return f"(v-={self.v_minus}, ζ={self.zeta}, γ={self.gamma})"


def _economic_conditions(v: Element, zeta: WittVector) -> bool:
    """v^p ζ_0 nilpotent and v^{p^2} ζ_1 + 1 invertible."""
    p = zeta.p
    z0, z1 = zeta[0], zeta[1]
    return (v ** p * z0).is_nilpotent() and (v ** (p * p) * z1 + 1).is_unit()


def _validated(v: Element, zeta: WittVector, gamma: WittVector) -> SigmaPoint:
    if zeta.n < 2:
        raise IncompatibleOperandsError("Σ' points need truncation n >= 2")
    zeta.require_shape(gamma)
    if zeta.degree != zeta.p:
        raise DegreeError(f"ζ must have degree {zeta.p}, got {zeta.degree}")
    if gamma.degree != 0:
        raise DegreeError(f"γ must have degree 0, got {gamma.degree}")
    point = SigmaPoint(v, zeta, gamma)
    primitive = is_primitive(point.primitive_element())
    if gamma.is_one() and primitive != _economic_conditions(v, zeta):
        raise ConsistencyError(f"primitivity and the economic conditions disagree at {point}")
    if not primitive:
        raise PrimitivityError(f"[v^p]ζ + pγ = {point.primitive_element()} is not primitive")
    return point


def make_sigma_point(ring: Ring, v_minus: Any, zeta: VectorLike,
                     gamma: Optional[VectorLike] = None) -> SigmaPoint:
    """Validate and build a point; γ defaults to 1."""
    v = ring.element(v_minus)
    z = _as_vector(ring, zeta, None, ring.p)
    g = WittVector.one(ring, z.n) if gamma is None else _as_vector(ring, gamma, z.n, 0)
    return _validated(v, z, g)


def de_rham_point(ring: Ring, v_minus: Any, n: int) -> SigmaPoint:
    """The ζ = 0 section."""
    return make_sigma_point(ring, v_minus, WittVector.zero(ring, n, ring.p))


def economic_points(ring: Ring, n: int) -> Iterator[SigmaPoint]:
    """Every economic point over R at truncation n."""
    for v in ring.elements():
        for zeta in enumerate_vectors(ring, n, ring.p):
            try:
                yield _validated(v, zeta, WittVector.one(ring, n))
            except PrimitivityError:
                continue


def random_economic_point(ring: Ring, n: int, rng: random.Random, attempts: int = 1000) -> SigmaPoint:
    for _ in range(attempts):
        v = ring.random_element(rng)
        zeta = random_vector(ring, n, rng, ring.p)
        try:
            return _validated(v, zeta, WittVector.one(ring, n))
        except PrimitivityError:
            continue
    raise PrimitivityError(f"no economic point found in {attempts} draws over {ring}")


def rescale(point: SigmaPoint, lam: Element) -> SigmaPoint:
    """Change of trivialization by a unit λ: v_- ↦ λ^{-1}v_-, ζ ↦ [λ^p]ζ."""
    lam = point.ring.element(lam)
    if not lam.is_unit():
        raise NotAUnitError(f"{lam} is not a unit")
    scale = teichmuller(lam ** point.p, point.n)
    return _validated(lam.inverse() * point.v_minus, scale * point.zeta, point.gamma)


def is_teichmuller_locus(point: SigmaPoint) -> bool:
    """v_-^p ζ_0 = 0 and ζ = [ζ_0]."""
    z0 = point.zeta[0]
    return (point.v_minus ** point.p * z0).raw == point.ring.zero_raw \
        and point.zeta == teichmuller(z0, point.n, degree=point.p)


def on_frobenius_divisor(point: SigmaPoint) -> bool:
    """v_-^p ζ_0 = 0."""
    return (point.v_minus ** point.p * point.zeta[0]).raw == point.ring.zero_raw


# ---------------------------------------------------------------------------
# Group elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupElem:
    """α of degree p over a fixed v_-, with w explicit (Gmat) or 1 - [v_-^p]α (G)."""

    alpha: WittVector
    v_minus: Element
    flavor: Flavor = "G"
    w_explicit: Optional[WittVector] = None

    def __post_init__(self) -> None:
        if self.alpha.degree != self.alpha.p:
            raise DegreeError(f"α must have degree {self.alpha.p}, got {self.alpha.degree}")
        if self.flavor == "Gmat":
            if self.w_explicit is None:
                raise ValueError("Gmat elements need an explicit w")
            self.alpha.require_shape(self.w_explicit)
        if not self.w.is_unit():
            raise NotAUnitError(f"w = {self.w} is not a unit")

    @property
    def w(self) -> WittVector:
        if self.flavor == "Gmat":
            return self.w_explicit
        return _g_weight(self.v_minus, self.alpha)

    @classmethod
    def identity(cls, ring: Ring, v_minus: Element, n: int) -> GroupElem:
        return cls(WittVector.zero(ring, n, ring.p), v_minus)

    @classmethod
    def mat(cls, v_minus: Element, alpha: WittVector, w: WittVector) -> GroupElem:
        return cls(alpha, v_minus, "Gmat", w)

    def as_matrix(self) -> GroupElem:
        return GroupElem(self.alpha, self.v_minus, "Gmat", self.w)

    def __str__(self) -> str:
        if self.flavor == "G":
            return f"α={self.alpha}"
        return f"(α={self.alpha}, w={self.w})"


def _g_weight(v: Element, alpha: WittVector) -> WittVector:
    """1 - [v^p]α."""
    one = WittVector.one(alpha.ring, alpha.n)
    return one - v_power(v, alpha.p, alpha.n) * alpha


def is_gf_subgroup(alpha: WittVector) -> bool:
    """α lies in the subgroup cut out by F(α) = 0."""
    return frobenius(alpha).is_zero()


def g_law(v_minus: Element, alpha1: WittVector, alpha2: WittVector) -> WittVector:
    """α_1 * α_2 = α_1 + α_2 - [v_-^p]α_1·α_2."""
    for a in (alpha1, alpha2):
        if not _g_weight(v_minus, a).is_unit():
            raise NotAUnitError(f"1 - [v^p]{a} is not a unit")
    result = alpha1 + alpha2 - v_power(v_minus, alpha1.p, alpha1.n) * alpha1 * alpha2
    if not _g_weight(v_minus, result).is_unit():
        raise ConsistencyError(f"{alpha1} * {alpha2} left the group")
    return result


def g_inverse(v_minus: Element, alpha: WittVector) -> WittVector:
    """α' with α * α' = 0: α' = -α·(1 - [v_-^p]α)^{-1}."""
    w = _g_weight(v_minus, alpha)
    if not w.is_unit():
        raise NotAUnitError(f"1 - [v^p]{alpha} is not a unit")
    return -(alpha * witt_invert(w))


def gmat_compose(first: GroupElem, second: GroupElem) -> GroupElem:
    """The element acting as `first` followed by `second`: (α_1 + w_1α_2, w_1w_2)."""
    if first.v_minus != second.v_minus:
        raise IncompatibleOperandsError("group elements over different v_-")
    if first.flavor == second.flavor == "G":
        return GroupElem(g_law(first.v_minus, first.alpha, second.alpha), first.v_minus)
    alpha = first.alpha + first.w * second.alpha
    return GroupElem.mat(first.v_minus, alpha, first.w * second.w)


def g_act(point: SigmaPoint, g: GroupElem) -> SigmaPoint:
    """ζ ↦ w^{-1}(ζ + pα), γ ↦ w^{-1}(γ - [v_-^p]α)."""
    if g.v_minus != point.v_minus:
        raise IncompatibleOperandsError(f"group element over v-={g.v_minus}, point over {point.v_minus}")
    point.zeta.require_shape(g.alpha)
    w_inv = witt_invert(g.w)
    zeta = w_inv * (point.zeta + mul_int(point.p, g.alpha))
    gamma = w_inv * (point.gamma - v_power(point.v_minus, point.p, point.n) * g.alpha)
    try:
        result = _validated(point.v_minus, zeta, gamma)
    except PrimitivityError as exc:
        raise ConsistencyError(f"action left the primitive locus: {point} by {g}") from exc
    if g.flavor == "G" and point.is_economic and not result.is_economic:
        raise ConsistencyError(f"G-action moved γ off 1: {point} by {g}")
    return result


def random_group_elem(point: SigmaPoint, rng: random.Random, flavor: Flavor = "G",
                      attempts: int = 1000) -> GroupElem:
    ring, n, p = point.ring, point.n, point.p
    for _ in range(attempts):
        alpha = random_vector(ring, n, rng, p)
        if flavor == "Gmat":
            w = random_vector(ring, n, rng)
            if w.is_unit():
                return GroupElem.mat(point.v_minus, alpha, w)
        elif _g_weight(point.v_minus, alpha).is_unit():
            return GroupElem(alpha, point.v_minus)
    raise NotAUnitError(f"no {flavor} element found in {attempts} draws over {ring}")


# ---------------------------------------------------------------------------
# Normalizing γ
# ---------------------------------------------------------------------------

def normalize_gamma(point: SigmaPoint) -> tuple[SigmaPoint, GroupElem]:
    """
    An economic point in the same orbit, and the matrix element reaching it.

    Factor by factor: where γ_0 is a unit, w = γ and α = 0; elsewhere v_- is
    a unit, w = 1 and α = [v_-^{-p}](γ - 1).
    """
    ring, n, p = point.ring, point.n, point.p
    if point.is_economic:
        return point, GroupElem.identity(ring, point.v_minus, n)
    gamma_bad = ring.local_flags_raw(point.gamma.comps[0])
    v_bad = ring.local_flags_raw(point.v_minus.raw)
    if any(g and v for g, v in zip(gamma_bad, v_bad)):
        raise ConsistencyError(f"neither γ_0 nor v_- is a unit in some factor of {ring}: {point}")
    ones, zeros = ring.factor_raws(ring.one_raw), ring.factor_raws(ring.zero_raw)
    e = Element(ring, ring.join_factor_raws([o if flag else z for flag, o, z in zip(gamma_bad, ones, zeros)]))
    e_vec, rest = teichmuller(e, n), teichmuller(1 - e, n)
    v_unit = e * point.v_minus + (1 - e)
    one = WittVector.one(ring, n)
    alpha = e_vec * teichmuller(v_unit.inverse() ** p, n, degree=p) * (point.gamma - one)
    w = e_vec + rest * point.gamma
    g = GroupElem.mat(point.v_minus, alpha, w)
    result = g_act(point, g)
    if not result.is_economic:
        raise ConsistencyError(f"normalization of {point} produced γ = {result.gamma}")
    logger.debug("normalized γ=%s over %s", point.gamma, ring)
    return result, g


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def group_law_check(ring: Ring, n: int) -> Report:
    """Identity, inverses and associativity of * on all of W_n(R), for every v_-."""
    tally = Tally(f"g_law(n={n})")
    p = ring.p
    vectors = list(enumerate_vectors(ring, n, p))
    zero = WittVector.zero(ring, n, p)
    for v in ring.elements():
        valid = [a for a in vectors if _g_weight(v, a).is_unit()]
        for a in valid:
            tally.check(g_law(v, a, zero) == a, "0 is not neutral", v=v, a=a)
            tally.check(g_law(v, a, g_inverse(v, a)) == zero, "inverse fails", v=v, a=a)
        for a, b, c in itertools.product(valid, repeat=3):
            left = g_law(v, g_law(v, a, b), c)
            right = g_law(v, a, g_law(v, b, c))
            tally.check(left == right, "not associative", v=v, a=a, b=b, c=c)
        if v.raw == ring.zero_raw:
            for a, b in itertools.product(valid, repeat=2):
                tally.check(g_law(v, a, b) == a + b, "v_- = 0 law is not addition", a=a, b=b)
    return tally.report()


def _g_elements(ring: Ring, v: Element, n: int) -> list[GroupElem]:
    return [GroupElem(a, v) for a in enumerate_vectors(ring, n, ring.p) if _g_weight(v, a).is_unit()]


def _gmat_elements(ring: Ring, v: Element, n: int) -> list[GroupElem]:
    units = [w for w in enumerate_vectors(ring, n) if w.is_unit()]
    return [GroupElem.mat(v, a, w) for a in enumerate_vectors(ring, n, ring.p) for w in units]


def _gmat_inverse(g: GroupElem) -> GroupElem:
    w_inv = witt_invert(g.w)
    return GroupElem.mat(g.v_minus, -(w_inv * g.alpha), w_inv)


def action_check(ring: Ring, n: int, samples: Optional[int] = None, seed: Optional[int] = None) -> Report:
    """
    Identity, composition, orbit preservation and γ-normalization.

    With `samples` set, draws that many random points and elements. Otherwise
    every economic point is paired with every two G elements over its v_-, and
    with every Gmat element and its inverse; the pair domain falls back to
    seeded sampling past the enumeration bound.
    """
    tally = Tally(f"g_action(n={n})", seed=seed)
    if samples is not None:
        _sampled_action(tally, ring, n, samples)
        return tally.report()

    points = list(economic_points(ring, n))
    g_elems = {v.raw: _g_elements(ring, v, n) for v in ring.elements()}
    mats = {v.raw: _gmat_elements(ring, v, n) for v in ring.elements()}

    for point in points:
        tally.check(g_act(point, GroupElem.identity(ring, point.v_minus, n)) == point,
                    "identity moves the point", point=point)
        for m in mats[point.v_minus.raw]:
            moved = g_act(point, m)
            inverse = _gmat_inverse(m)
            unit = gmat_compose(m, inverse)
            tally.check(unit.alpha.is_zero() and unit.w.is_one(), "Gmat inverse", g=m)
            tally.check(g_act(moved, inverse) == point, "inverse does not undo the action", point=point, g=m)
            back, witness = normalize_gamma(moved)
            tally.check(back.is_economic and g_act(moved, witness) == back, "γ normalization", point=moved)
        for g in g_elems[point.v_minus.raw]:
            tally.check(g_act(point, g) == g_act(point, g.as_matrix()), "G and Gmat forms disagree",
                        point=point, g=g)

    size = sum(len(g_elems[pt.v_minus.raw]) ** 2 for pt in points)

    def everything():
        for pt in points:
            for g1, g2 in itertools.product(g_elems[pt.v_minus.raw], repeat=2):
                yield pt, g1, g2

    def one_sample(rng):
        pt = points[rng.randrange(len(points))]
        elems = g_elems[pt.v_minus.raw]
        return pt, elems[rng.randrange(len(elems))], elems[rng.randrange(len(elems))]

    for point, g1, g2 in exhaustive_or_sampled(size, everything, one_sample, tally=tally):
        once = g_act(g_act(point, g1), g2)
        tally.check(once == g_act(point, gmat_compose(g1, g2)), "action not compatible with composition",
                    point=point, g1=g1, g2=g2)
    tally.count("points", len(points))
    return tally.report()


def _sampled_action(tally: Tally, ring: Ring, n: int, samples: int) -> None:
    tally.note("mode", "sampled")
    rng = random.Random(tally.seed)
    for _ in range(samples):
        point = random_economic_point(ring, n, rng)
        ident = GroupElem.identity(ring, point.v_minus, n)
        tally.check(g_act(point, ident) == point, "identity moves the point", point=point)
        for flavor in ("G", "Gmat"):
            g1 = random_group_elem(point, rng, flavor)
            g2 = random_group_elem(point, rng, flavor)
            once = g_act(g_act(point, g1), g2)
            tally.check(once == g_act(point, gmat_compose(g1, g2)), "action not compatible with composition",
                        point=point, g1=g1, g2=g2)
            moved = g_act(point, g1.as_matrix() if flavor == "G" else g1)
            back, witness = normalize_gamma(moved)
            tally.check(back.is_economic and g_act(moved, witness) == back, "γ normalization", point=moved)


def orbit_primitivity_check(ring: Ring, n: int) -> Report:
    """Every matrix element keeps [v_-^p]ζ + pγ primitive (exhaustive when small)."""
    tally = Tally(f"orbit_primitivity(n={n})")
    points = list(economic_points(ring, n))
    units = [w for w in enumerate_vectors(ring, n) if w.is_unit()]
    alphas = list(enumerate_vectors(ring, n, ring.p))
    size = len(points) * len(units) * len(alphas)

    def everything():
        return itertools.product(points, alphas, units)

    def one_sample(rng):
        return points[rng.randrange(len(points))], alphas[rng.randrange(len(alphas))], \
            units[rng.randrange(len(units))]

    for point, alpha, w in exhaustive_or_sampled(size, everything, one_sample, tally=tally):
        g = GroupElem.mat(point.v_minus, alpha, w)
        try:
            moved = g_act(point, g)
        except ConsistencyError as exc:
            tally.fail(str(exc), point=point, g=g)
            continue
        tally.check(is_primitive(moved.primitive_element()), "orbit left W_prim", point=point, g=g)
    tally.count("points", len(points))
    return tally.report()


def rescale_check(ring: Ring, n: int) -> Report:
    """Re-trivializing fixes [v_-^p]ζ + pγ."""
    tally = Tally(f"rescale(n={n})")
    units = [u for u in ring.elements() if u.is_unit()]
    for point in economic_points(ring, n):
        for lam in units:
            moved = rescale(point, lam)
            tally.check(moved.primitive_element() == point.primitive_element(),
                        "rescaling changed the primitive element", point=point, lam=lam)
    return tally.report()
