"""
The nodal-curve picture of the coequalizer at F_q-points.
Sprint: S5

Two independent models are compared with the isomorphism classes of Γ''(F_q):

  (a) C(F_q) → P^1(F_q) with 0 glued to ∞, (v_+, 0) ↦ v_+ and (0, v_-) ↦ 1/v_-,
      modulo the scaling action of F_q^×;
  (b) collections x_i ∈ P^1(F_q) indexed by a Z-torsor with
        (i)  x_i = 0 or x_{i+1} = ∞ for every i,
        (ii) some x_i ≠ 0 and some x_j ≠ ∞,
      up to shift and scaling. A window of the torsor is enumerated with
      x = 0 to its left and x = ∞ to its right; (v_+, v_-) gives
      ..., 0, 0, v_+, 1/v_-, ∞, ∞, ...
"""

from __future__ import annotations

import itertools
import logging
from typing import Optional

from src.categories.fincat import underlying_groupoid_classes
from src.categories.toy import cross_points, gamma_double_prime, point_label, toy_field
from src.checks.tally import Tally
from src.models.schemas import Report
from src.rings import Element, Ring

logger = logging.getLogger(__name__)

# A point of P^1: an affine coordinate, or None for ∞.
P1Point = Optional[Element]
NODE = "node"


def p1_points(field: Ring) -> list[P1Point]:
    return [*field.elements(), None]


def _p1_label(x: P1Point) -> str:
    return "∞" if x is None else str(x)


def _scale(lam: Element, x: P1Point) -> P1Point:
    return None if x is None else lam * x


def _orbit_key(field: Ring, x: P1Point) -> str:
    units = [lam for lam in field.elements() if lam.is_unit()]
    return min(_p1_label(_scale(lam, x)) for lam in units)


def nodal_image(point: tuple[Element, Element]) -> P1Point | str:
    v_plus, v_minus = point
    if v_plus == 0 and v_minus == 0:
        return NODE
    if v_minus == 0:
        return v_plus
    return v_minus.inverse()


def _glued_orbit(field: Ring, image: P1Point | str) -> str:
    if image == NODE or image is None or image == 0:
        return NODE
    return _orbit_key(field, image)


def _follows(a: P1Point, b: P1Point) -> bool:
    """Condition (i) on consecutive entries."""
    return (a is not None and a == 0) or b is None


def is_admissible(xs: tuple[P1Point, ...]) -> bool:
    """Condition (i) inside the window; the 0 / ∞ padding supplies (ii)."""
    return all(_follows(a, b) for a, b in zip(xs, xs[1:]))


def admissible_windows(field: Ring, length: int) -> list[tuple[P1Point, ...]]:
    windows: list[tuple[P1Point, ...]] = [()]
    for _ in range(length):
        windows = [w + (x,) for w in windows for x in p1_points(field) if not w or _follows(w[-1], x)]
    return windows


def collection_class(field: Ring, xs: tuple[P1Point, ...]) -> str:
    """Shift- and scaling-invariant: the orbit of the first entry that is not 0."""
    for x in xs:
        if x is None or x != 0:
            return "∞" if x is None else _orbit_key(field, x)
    return "∞"


def point_collection(field: Ring, point: tuple[Element, Element], length: int) -> tuple[P1Point, ...]:
    v_plus, v_minus = point
    x1: P1Point = None if v_minus == 0 else v_minus.inverse()
    return (field.zero, v_plus, x1) + (None,) * (length - 3)


def nodal_model_check(q: int, window: int = 5) -> Report:
    """
    (a) iso classes of Γ''(F_q) are the scaling orbits of the glued P^1,
    (b) admissible collections in a window give the same classes, the
        window is saturated (widening by 2 adds none), and each point of C
        lands in the class of its iso class.
    """
    tally = Tally(f"nodal_model(q={q})")
    field = toy_field(q)
    points = cross_points(field)
    iso_classes = set(underlying_groupoid_classes(gamma_double_prime(q, top=1)))
    tally.note("iso_classes", len(iso_classes))

    glued_points = {NODE} | {_p1_label(x) for x in p1_points(field) if x is not None and x != 0}
    tally.check(len(glued_points) == q, "P^1 with 0 ~ ∞ should have q points", points=len(glued_points))
    by_orbit: dict[str, set[str]] = {}
    for pt in points:
        by_orbit.setdefault(_glued_orbit(field, nodal_image(pt)), set()).add(point_label(pt))
    tally.check({frozenset(s) for s in by_orbit.values()} == iso_classes,
                "(a) scaling orbits on the nodal curve differ from the iso classes",
                orbits=sorted(by_orbit))

    windows = admissible_windows(field, window)
    classes = {collection_class(field, w) for w in windows}
    wider = {collection_class(field, w) for w in admissible_windows(field, window + 2)}
    tally.check(classes == wider, "(b) window is not saturated", window=window,
                classes=sorted(classes), wider=sorted(wider))
    tally.check(len(classes) == len(iso_classes), "(b) collection classes vs iso classes",
                collections=len(classes), iso=len(iso_classes))
    tally.count("admissible_windows", len(windows))

    by_collection: dict[str, set[str]] = {}
    for pt in points:
        xs = point_collection(field, pt, window)
        tally.check(is_admissible(xs), "(b) a point of C gives an inadmissible collection", point=point_label(pt))
        by_collection.setdefault(collection_class(field, xs), set()).add(point_label(pt))
    tally.check({frozenset(s) for s in by_collection.values()} == iso_classes,
                "(b) collection classes do not match iso classes on C(F_q)")
    return tally.report()
