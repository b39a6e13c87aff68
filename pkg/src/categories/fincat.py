"""
Finite categories, graded categories and functors between them.
Sprint: S5

Arrows are labelled by string ids and carry (src, dst, degree). The
composition table maps (g, f) to g ∘ f, i.e. f first. Everything is
validated once on construction and treated as immutable afterwards.
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

from src.errors import CategoryError
from src.models.schemas import ArrowPayload, CategoryPayload

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    dst: str
    degree: int = 0

    def to_payload(self) -> ArrowPayload:
        return ArrowPayload(id=self.id, src=self.src, dst=self.dst, degree=self.degree)


class FinCategory:
    """
    A finite category, every arrow in degree 0.

    Composition must be total on composable pairs; associativity and the
    identity laws are checked over every composable triple.
    """

    def __init__(
        self,
        objects: Iterable[str],
        arrows: Iterable[Arrow],
        composition: Mapping[tuple[str, str], str],
        identities: Mapping[str, str],
        *,
        name: str = "",
    ) -> None:
        self.name = name
        self.objects: tuple[str, ...] = tuple(objects)
        self._object_set = frozenset(self.objects)
        self.arrows: dict[str, Arrow] = {}
        for a in arrows:
            if a.id in self.arrows:
                raise CategoryError(f"{name}: duplicate arrow id {a.id!r}")
            self.arrows[a.id] = a
        self.composition: dict[tuple[str, str], str] = dict(composition)
        self.identities: dict[str, str] = dict(identities)
        self._out: dict[str, list[str]] = defaultdict(list)
        self._homs: dict[tuple[str, str, int], list[str]] = defaultdict(list)
        for a in self.arrows.values():
            self._out[a.src].append(a.id)
            self._homs[(a.src, a.dst, a.degree)].append(a.id)
        self._identity_ids = frozenset(self.identities.values())
        self._validate()

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name or '?'}: {len(self.objects)} objects, {len(self.arrows)} arrows)"

    def __contains__(self, obj: str) -> bool:
        return obj in self._object_set

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self.arrows[arrow_id]
        except KeyError:
            raise CategoryError(f"{self.name}: no arrow {arrow_id!r}") from None

    def identity(self, obj: str) -> str:
        return self.identities[obj]

    def is_identity(self, arrow_id: str) -> bool:
        return arrow_id in self._identity_ids

    def homs(self, src: str, dst: str, degree: int = 0) -> list[str]:
        return list(self._homs.get((src, dst, degree), ()))

    def outgoing(self, src: str) -> list[str]:
        return list(self._out.get(src, ()))

    def compose(self, g: str, f: str) -> str:
        """g ∘ f."""
        try:
            return self.composition[(g, f)]
        except KeyError:
            fa, ga = self.arrow(f), self.arrow(g)
            if fa.dst != ga.src:
                raise CategoryError(f"{self.name}: {g} ∘ {f} is not composable") from None
            raise CategoryError(f"{self.name}: {g} ∘ {f} is not tabulated") from None

    def try_compose(self, g: str, f: str) -> Optional[str]:
        return self.composition.get((g, f))

    def is_iso(self, f: str) -> bool:
        return self.inverse(f) is not None

    def inverse(self, f: str) -> Optional[str]:
        a = self.arrow(f)
        for g in self.homs(a.dst, a.src, -a.degree):
            if (self.try_compose(g, f) == self.identities[a.src]
                    and self.try_compose(f, g) == self.identities[a.dst]):
                return g
        return None

    def isomorphic(self, x: str, y: str) -> bool:
        if x == y:
            return True
        return any(self.is_iso(f) for f in self.homs(x, y, 0))

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        """(f, g) with dst f = src g."""
        for f in self.arrows.values():
            for g in self._out.get(f.dst, ()):
                yield f.id, g

    def full_subcategory(self, objects: Iterable[str], name: str = "") -> FinCategory:
        keep = set(objects)
        arrows = [a for a in self.arrows.values() if a.src in keep and a.dst in keep]
        ids = {a.id for a in arrows}
        table = {k: v for k, v in self.composition.items() if k[0] in ids and k[1] in ids}
        return FinCategory([o for o in self.objects if o in keep], arrows, table,
                           {o: self.identities[o] for o in self.objects if o in keep},
                           name=name or f"{self.name}|sub")

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------

    def _requires(self, f: Arrow, g: Arrow) -> bool:
        return True

    def _check_arrow_degrees(self) -> None:
        bad = [a.id for a in self.arrows.values() if a.degree != 0]
        if bad:
            raise CategoryError(f"{self.name}: ungraded category has arrows of nonzero degree: {bad[:5]}")

    def _validate(self) -> None:
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            raise CategoryError(f"{self.name}: duplicate objects")
        for a in self.arrows.values():
            if a.src not in objs or a.dst not in objs:
                raise CategoryError(f"{self.name}: arrow {a.id} has an endpoint outside the object set")
        self._check_arrow_degrees()
        for obj in self.objects:
            ident = self.identities.get(obj)
            if ident is None or ident not in self.arrows:
                raise CategoryError(f"{self.name}: object {obj} has no identity")
            a = self.arrows[ident]
            if a.src != obj or a.dst != obj or a.degree != 0:
                raise CategoryError(f"{self.name}: identity of {obj} is {a}")

        for (g, f), h in self.composition.items():
            fa, ga, ha = self.arrow(f), self.arrow(g), self.arrow(h)
            if fa.dst != ga.src:
                raise CategoryError(f"{self.name}: table composes non-composable {g} ∘ {f}")
            if (ha.src, ha.dst) != (fa.src, ga.dst) or ha.degree != fa.degree + ga.degree:
                raise CategoryError(f"{self.name}: {g} ∘ {f} = {h} has the wrong endpoints or degree")

        for f, g in self.composable_pairs():
            fa, ga = self.arrows[f], self.arrows[g]
            if (g, f) not in self.composition and self._requires(fa, ga):
                raise CategoryError(f"{self.name}: {g} ∘ {f} is missing from the table")

        for a in self.arrows.values():
            if self.try_compose(a.id, self.identities[a.src]) != a.id:
                raise CategoryError(f"{self.name}: {a.id} ∘ id != {a.id}")
            if self.try_compose(self.identities[a.dst], a.id) != a.id:
                raise CategoryError(f"{self.name}: id ∘ {a.id} != {a.id}")

        triples = 0
        for f, g in self.composable_pairs():
            gf = self.try_compose(g, f)
            for h in self._out.get(self.arrows[g].dst, ()):
                hg = self.try_compose(h, g)
                if gf is None or hg is None:
                    continue
                left = self.try_compose(h, gf)
                right = self.try_compose(hg, f)
                if left is None or right is None:
                    continue
                triples += 1
                if left != right:
                    raise CategoryError(f"{self.name}: ({h} ∘ {g}) ∘ {f} != {h} ∘ ({g} ∘ {f})")
        logger.debug("%r validated (%d associativity triples)", self, triples)

    # ------------------------------------------------------------------
    # Serialization
    # ------------------------------------------------------------------

    def to_payload(self) -> CategoryPayload:
        return CategoryPayload(
            objects=list(self.objects),
            arrows=[a.to_payload() for a in self.arrows.values()],
            composition=[[f, g, h] for (g, f), h in sorted(self.composition.items())],
        )

    @classmethod
    def from_payload(cls, payload: CategoryPayload, name: str = "") -> FinCategory:
        arrows = [Arrow(a.id, a.src, a.dst, a.degree) for a in payload.arrows]
        table = {(g, f): h for f, g, h in payload.composition}
        identities = _infer_identities(payload.objects, arrows, table)
        return cls(payload.objects, arrows, table, identities, name=name)


class GradedCategory(FinCategory):
    """
    A category whose arrows carry integer degrees, materialized in a
    degree window [lo, hi]. Composites landing outside the window are not
    tabulated; with partial=True composites may also be missing inside it.
    """

    def __init__(
        self,
        objects: Iterable[str],
        arrows: Iterable[Arrow],
        composition: Mapping[tuple[str, str], str],
        identities: Mapping[str, str],
        *,
        window: tuple[int, int],
        partial: bool = False,
        name: str = "",
    ) -> None:
        lo, hi = window
        if lo > 0 or hi < 0:
            raise CategoryError(f"degree window {window} must contain 0")
        self.window = (lo, hi)
        self.partial = partial
        super().__init__(objects, arrows, composition, identities, name=name)

    def _check_arrow_degrees(self) -> None:
        lo, hi = self.window
        bad = [a.id for a in self.arrows.values() if not lo <= a.degree <= hi]
        if bad:
            raise CategoryError(f"{self.name}: arrows outside the window {self.window}: {bad[:5]}")

    def _requires(self, f: Arrow, g: Arrow) -> bool:
        lo, hi = self.window
        return not self.partial and lo <= f.degree + g.degree <= hi

    def degrees(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def hom_counts(self) -> dict[tuple[str, str, int], int]:
        """Every (src, dst, degree) in the window, zero counts included."""
        return {
            (x, y, n): len(self.homs(x, y, n))
            for x, y in itertools.product(self.objects, repeat=2)
            for n in self.degrees()
        }

    @classmethod
    def from_payload(cls, payload: CategoryPayload, name: str = "") -> GradedCategory:
        arrows = [Arrow(a.id, a.src, a.dst, a.degree) for a in payload.arrows]
        table = {(g, f): h for f, g, h in payload.composition}
        degrees = [a.degree for a in arrows] or [0]
        return cls(payload.objects, arrows, table, _infer_identities(payload.objects, arrows, table),
                   window=(min(0, *degrees), max(0, *degrees)), partial=True, name=name)


def _infer_identities(objects: Iterable[str], arrows: list[Arrow],
                      table: Mapping[tuple[str, str], str]) -> dict[str, str]:
    found: dict[str, str] = {}
    for obj in objects:
        for a in arrows:
            if a.src != obj or a.dst != obj or a.degree != 0:
                continue
            left_unit = all(table.get((b.id, a.id), b.id) == b.id for b in arrows if b.src == obj)
            right_unit = all(table.get((a.id, b.id), b.id) == b.id for b in arrows if b.dst == obj)
            if left_unit and right_unit:
                found[obj] = a.id
                break
        else:
            raise CategoryError(f"no identity arrow found for object {obj}")
    return found


# ---------------------------------------------------------------------------
# Functors
# ---------------------------------------------------------------------------

class Functor:
    """Object and arrow maps between two finite categories, checked on construction."""

    def __init__(self, source: FinCategory, target: FinCategory,
                 objects: Mapping[str, str], arrows: Mapping[str, str], *, name: str = "") -> None:
        self.source = source
        self.target = target
        self.objects = dict(objects)
        self.arrows = dict(arrows)
        self.name = name
        self._validate()

    def __repr__(self) -> str:
        return f"Functor({self.name or '?'}: {self.source.name} → {self.target.name})"

    def __call__(self, obj: str) -> str:
        return self.objects[obj]

    def on_arrow(self, arrow_id: str) -> str:
        return self.arrows[arrow_id]

    def _validate(self) -> None:
        S, T = self.source, self.target
        targets = set(T.objects)
        for obj in S.objects:
            if self.objects.get(obj) not in targets:
                raise CategoryError(f"{self.name}: object {obj} is not mapped into {T.name}")
        for a in S.arrows.values():
            image = self.arrows.get(a.id)
            if image is None:
                raise CategoryError(f"{self.name}: arrow {a.id} is not mapped")
            b = T.arrow(image)
            if (b.src, b.dst) != (self.objects[a.src], self.objects[a.dst]) or b.degree != a.degree:
                raise CategoryError(f"{self.name}: {a.id} ↦ {image} does not respect endpoints")
        for obj in S.objects:
            if self.arrows[S.identity(obj)] != T.identity(self.objects[obj]):
                raise CategoryError(f"{self.name}: identity of {obj} is not preserved")
        for (g, f), h in S.composition.items():
            image = T.try_compose(self.arrows[g], self.arrows[f])
            if image is not None and image != self.arrows[h]:
                raise CategoryError(f"{self.name}: F({g} ∘ {f}) != F({g}) ∘ F({f})")

    def then(self, other: Functor, name: str = "") -> Functor:
        """other ∘ self."""
        return Functor(
            self.source, other.target,
            {o: other.objects[x] for o, x in self.objects.items()},
            {a: other.arrows[x] for a, x in self.arrows.items()},
            name=name or f"{other.name}∘{self.name}",
        )

    def power(self, m: int) -> Functor:
        """The m-fold iterate of an endofunctor."""
        if self.source is not self.target:
            raise CategoryError(f"{self.name} is not an endofunctor")
        result = identity_functor(self.source)
        for _ in range(m):
            result = result.then(self)
        return result

    def is_fully_faithful(self) -> bool:
        S, T = self.source, self.target
        for x, y in itertools.product(S.objects, repeat=2):
            images = [self.arrows[a] for a in S.homs(x, y)]
            if len(set(images)) != len(images):
                return False
            if set(images) != set(T.homs(self.objects[x], self.objects[y])):
                return False
        return True

    def is_left_fibration(self) -> bool:
        """Each arrow out of F(d) lifts to exactly one arrow out of d."""
        S, T = self.source, self.target
        for d in S.objects:
            lifts: dict[str, int] = defaultdict(int)
            for a in S.outgoing(d):
                lifts[self.arrows[a]] += 1
            for b in T.outgoing(self.objects[d]):
                if lifts.get(b, 0) != 1:
                    return False
        return True

    def essential_image(self) -> set[str]:
        hit = set(self.objects.values())
        return {y for y in self.target.objects if any(self.target.isomorphic(x, y) for x in hit)}


def identity_functor(cat: FinCategory) -> Functor:
    return Functor(cat, cat, {o: o for o in cat.objects}, {a: a for a in cat.arrows}, name="id")


def inclusion(sub: FinCategory, cat: FinCategory, name: str = "") -> Functor:
    return Functor(sub, cat, {o: o for o in sub.objects}, {a: a for a in sub.arrows}, name=name or "incl")


def is_left_adjoint(phi: Functor, j: Functor, unit: Mapping[str, str]) -> bool:
    """
    Φ ⊣ j with unit η: for every c and d, g ↦ j(g) ∘ η_c is a bijection
    Mor_D(Φc, d) → Mor_C(c, jd).
    """
    C, D = phi.source, phi.target
    for c in C.objects:
        eta = unit.get(c)
        if eta is None:
            return False
        a = C.arrow(eta)
        if a.src != c or a.dst != j(phi(c)):
            return False
        for d in D.objects:
            images = [C.compose(j.on_arrow(g), eta) for g in D.homs(phi(c), d)]
            if len(set(images)) != len(images) or set(images) != set(C.homs(c, j(d))):
                return False
    return True


def underlying_groupoid_classes(cat: FinCategory) -> list[frozenset[str]]:
    """Isomorphism classes of objects, through invertible arrows of any degree."""
    parent = {o: o for o in cat.objects}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in cat.arrows.values():
        if a.src != a.dst and find(a.src) != find(a.dst) and cat.is_iso(a.id):
            parent[find(a.src)] = find(a.dst)
    classes: dict[str, set[str]] = defaultdict(set)
    for o in cat.objects:
        classes[find(o)].add(o)
    return sorted((frozenset(c) for c in classes.values()), key=lambda s: sorted(s))
