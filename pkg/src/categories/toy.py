"""
Toy models over a finite field F_q.
Sprint: S5

C(F_q) = {(v_+, v_-) : v_+ v_- = 0}, the coordinate cross. An arrow
(v_+, v_-) → (ṽ_+, ṽ_-) is λ ∈ F_q with ṽ_+ = λ v_+ and v_- = λ ṽ_-; this
is the category toy_S_prime. Gluing the points (0, a) to (a^{-1}, 0)
with degree-1 isomorphisms gives the coequalizer instance toy_instance,
and gamma_double_prime is its explicit graded form:
    degree 0   the λ-arrows,
    degree -1  one arrow from each point with v_+ ≠ 0 to each point with v_- ≠ 0,
    degree n>0 one arrow between any two points,
    degree <-1 nothing.
"""

from __future__ import annotations

import itertools
import logging
from functools import lru_cache

from src.categories.coeq import CoeqInstance, coeq_bruteforce
from src.categories.fincat import Arrow, FinCategory, Functor, GradedCategory
from src.checks.tally import Tally
from src.errors import CategoryError, IncompatibleOperandsError
from src.models.schemas import Report
from src.rings import Element, Ring, make_ring

logger = logging.getLogger(__name__)

MAX_Q = 9

Point = tuple[Element, Element]


def toy_field(q: int) -> Ring:
    if q > MAX_Q:
        raise IncompatibleOperandsError(f"toy models are tabulated for q <= {MAX_Q}, got {q}")
    field = make_ring(f"GF({q})")
    if field.cardinality != q:
        raise IncompatibleOperandsError(f"GF({q}) did not produce a field with {q} elements")
    return field


def cross_points(field: Ring) -> list[Point]:
    return [(a, b) for a, b in itertools.product(field.elements(), repeat=2) if a * b == 0]


def point_label(point: Point) -> str:
    return f"({point[0]},{point[1]})"


def _lambda_id(x: Point, y: Point, lam: Element) -> str:
    return f"{point_label(x)}>{point_label(y)}:{lam}"


def _lambdas(field: Ring, x: Point, y: Point) -> list[Element]:
    return [lam for lam in field.elements() if y[0] == lam * x[0] and x[1] == lam * y[1]]


@lru_cache(maxsize=None)
def toy_S_prime(q: int) -> FinCategory:
    """The category of λ-arrows on C(F_q); 2q - 1 objects."""
    field = toy_field(q)
    points = cross_points(field)
    arrows: list[Arrow] = []
    scalar: dict[str, tuple[Point, Point, Element]] = {}
    for x, y in itertools.product(points, repeat=2):
        for lam in _lambdas(field, x, y):
            aid = _lambda_id(x, y, lam)
            arrows.append(Arrow(aid, point_label(x), point_label(y)))
            scalar[aid] = (x, y, lam)

    table: dict[tuple[str, str], str] = {}
    for f, (x, y, lam) in scalar.items():
        for g, (y2, z, mu) in scalar.items():
            if y2 == y:
                table[(g, f)] = _lambda_id(x, z, mu * lam)
    identities = {point_label(x): _lambda_id(x, x, field.one) for x in points}
    cat = FinCategory([point_label(x) for x in points], arrows, table, identities, name=f"S'(F_{q})")
    logger.debug("toy_S_prime(%d): %r", q, cat)
    return cat


@lru_cache(maxsize=None)
def toy_instance(q: int) -> CoeqInstance:
    """
    D = the points (0, a), a ≠ 0; j_- their inclusion; j_+ (0, a) ↦ (a^{-1}, 0).
    Φ sends (v_+, v_-) to (0, v_-) when v_- ≠ 0 and to (0, 1) otherwise.
    Over F_2 this is the pair of points ν_± : Spec F_2 ⇉ S'.
    """
    field = toy_field(q)
    C = toy_S_prime(q)
    minus = [(field.zero, a) for a in field.elements() if a != 0]
    D = C.full_subcategory([point_label(x) for x in minus], name=f"C_-(F_{q})")

    def plus(x: Point) -> Point:
        return (x[1].inverse(), field.zero)

    j_minus = Functor(D, C, {o: o for o in D.objects}, {a: a for a in D.arrows}, name="j_-")
    plus_arrows = {}
    for x, y in itertools.product(minus, repeat=2):
        lam, = _lambdas(field, x, y)
        plus_arrows[_lambda_id(x, y, lam)] = _lambda_id(plus(x), plus(y), lam)
    j_plus = Functor(D, C, {point_label(x): point_label(plus(x)) for x in minus}, plus_arrows, name="j_+")

    def phi_point(x: Point) -> Point:
        return (field.zero, x[1]) if x[1] != 0 else (field.zero, field.one)

    points = cross_points(field)
    phi_objects = {point_label(x): point_label(phi_point(x)) for x in points}
    phi_arrows = {}
    for x, y in itertools.product(points, repeat=2):
        lams = _lambdas(field, x, y)
        if not lams:
            continue
        image, = D.homs(phi_objects[point_label(x)], phi_objects[point_label(y)])
        for lam in lams:
            phi_arrows[_lambda_id(x, y, lam)] = image
    phi = Functor(C, D, phi_objects, phi_arrows, name="Φ")
    unit = {point_label(x): _lambda_id(x, phi_point(x), field.one if x[1] != 0 else field.zero)
            for x in points}
    return CoeqInstance(C, D, j_plus, j_minus, phi, unit, name=f"S''(F_{q})")


@lru_cache(maxsize=None)
def gamma_double_prime(q: int, top: int = 3) -> GradedCategory:
    """Γ'' on C(F_q) in degrees -1..top."""
    if top < 0:
        raise CategoryError(f"top degree must be >= 0, got {top}")
    field = toy_field(q)
    S = toy_S_prime(q)
    points = cross_points(field)
    by_label = {point_label(x): x for x in points}

    def graded_id(x: str, y: str, n: int) -> str:
        return f"{x}>{y}:<{n}>"

    arrows = list(S.arrows.values())
    for x, y in itertools.product(points, repeat=2):
        lx, ly = point_label(x), point_label(y)
        for n in range(1, top + 1):
            arrows.append(Arrow(graded_id(lx, ly, n), lx, ly, n))
        if x[0] != 0 and y[1] != 0:
            arrows.append(Arrow(graded_id(lx, ly, -1), lx, ly, -1))

    by_src: dict[str, list[Arrow]] = {}
    for a in arrows:
        by_src.setdefault(a.src, []).append(a)

    table: dict[tuple[str, str], str] = {}
    for f in arrows:
        for g in by_src.get(f.dst, ()):
            n = f.degree + g.degree
            if n > top:
                continue
            if f.degree == 0 and g.degree == 0:
                table[(g.id, f.id)] = S.compose(g.id, f.id)
                continue
            x, z = by_label[f.src], by_label[g.dst]
            if n == 0:
                lams = _lambdas(field, x, z)
                if len(lams) != 1:
                    raise CategoryError(f"{g.id} ∘ {f.id}: {len(lams)} degree-0 candidates")
                table[(g.id, f.id)] = _lambda_id(x, z, lams[0])
            elif n == -1:
                if x[0] == 0 or z[1] == 0:
                    raise CategoryError(f"{g.id} ∘ {f.id} lands outside C_+ × C_-")
                table[(g.id, f.id)] = graded_id(f.src, g.dst, -1)
            else:
                table[(g.id, f.id)] = graded_id(f.src, g.dst, n)

    return GradedCategory(S.objects, arrows, table, dict(S.identities), window=(-1, top),
                          name=f"Gamma''(F_{q})")


def gamma_double_prime_check(q: int, top: int = 3) -> Report:
    """
    Γ''(F_q) is a graded category: composites exist, are unique and add
    degrees; nothing lives below degree -1.  Over F_2 its hom-sets match the
    brute-force coequalizer of toy_instance(2).
    """
    tally = Tally(f"gamma_double_prime(q={q})")
    try:
        cat = gamma_double_prime(q, top)
    except CategoryError as exc:
        tally.fail(str(exc))
        return tally.report()

    tally.check(all(a.degree >= -1 for a in cat.arrows.values()), "an arrow below degree -1")
    for f, g in cat.composable_pairs():
        fa, ga = cat.arrow(f), cat.arrow(g)
        n = fa.degree + ga.degree
        if n > top:
            continue
        h = cat.try_compose(g, f)
        if not tally.check(h is not None, "composite missing", f=f, g=g):
            continue
        tally.check(h in cat.homs(fa.src, ga.dst, n), "composite has the wrong source, target or degree",
                    f=f, g=g, h=h)
        tally.count("composites")

    if q == 2:
        brute = coeq_bruteforce(toy_instance(2), (-1, top)).hom_counts()
        tally.check(brute == cat.hom_counts(), "hom-set sizes differ from the brute-force coequalizer")
    tally.note("objects", len(cat.objects))
    tally.note("arrows", len(cat.arrows))
    return tally.report()
