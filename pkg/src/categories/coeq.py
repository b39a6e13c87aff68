"""
Graded coequalizers of j_-, j_+ : D ⇉ C.
Sprint: S5

Coeq(j_-, j_+) has the objects of C, the C-arrows in degree 0, and an
isomorphism f_d : j_-(d) → j_+(d) of degree 1 for every d ∈ D, subject to
    f_{d'} ∘ j_-(φ) = j_+(φ) ∘ f_d        (φ : d → d').

Two computations are provided:

  * coeq_bruteforce: enumerate normal words in C-arrows and f_d^{±1} up to
    a bound on the number of f-generators, identify them under the
    relations with a union-find, and grow the bound until the class counts
    stop changing.
  * coeq_closed_form: when j_- is a fully faithful left fibration with a
    left adjoint Φ, j_+ is fully faithful and C_+ ∩ C_- = ∅,
        Mor^n(c1, c2) = Mor_C(Φ_+^n c1, c2)              n ≥ 0
                      = Mor_C(c1, j_+ j_-^{-1} c2)        n = -1, c2 ∈ C_-
                      = ∅                                 otherwise,
    with Φ_+ = j_+ ∘ Φ.

Words are (src, items) with items in application order (first applied
first); an item is ("c", arrow id), ("f", d) or ("g", d) for f_d^{-1}.
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Optional

from src.categories.fincat import (
    Arrow,
    FinCategory,
    Functor,
    GradedCategory,
    is_left_adjoint,
    underlying_groupoid_classes,
)
from src.categories.lax import lax_quotient
from src.checks.tally import Tally
from src.config.loader import load_settings
from src.errors import CategoryError, CoeqAssumptionError, SaturationError
from src.models.schemas import Report

logger = logging.getLogger(__name__)

Item = tuple[str, str]
Word = tuple[str, tuple[Item, ...]]


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CoeqInstance:
    C: FinCategory
    D: FinCategory
    j_plus: Functor
    j_minus: Functor
    Phi: Optional[Functor] = None
    unit: Mapping[str, str] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self) -> None:
        for label, functor in (("j_+", self.j_plus), ("j_-", self.j_minus)):
            if functor.source is not self.D or functor.target is not self.C:
                raise CategoryError(f"{label} must be a functor D → C")
        if self.Phi is not None and (self.Phi.source is not self.C or self.Phi.target is not self.D):
            raise CategoryError("Φ must be a functor C → D")

    @cached_property
    def minus_image(self) -> frozenset[str]:
        return frozenset(self.j_minus.essential_image())

    @cached_property
    def plus_image(self) -> frozenset[str]:
        return frozenset(self.j_plus.essential_image())

    @cached_property
    def assumption_failure(self) -> Optional[str]:
        """None when the closed form applies, else the first violated assumption."""
        if self.Phi is None or not self.unit:
            return "no left adjoint of j_- supplied"
        if not self.j_minus.is_fully_faithful():
            return "j_- is not fully faithful"
        if not self.j_minus.is_left_fibration():
            return "j_- is not a left fibration"
        if not is_left_adjoint(self.Phi, self.j_minus, self.unit):
            return "Φ with the given unit is not left adjoint to j_-"
        overlap = self.minus_image & self.plus_image
        if overlap:
            return f"C_+ and C_- meet in {sorted(overlap)}"
        if not self.j_plus.is_fully_faithful():
            return "j_+ is not fully faithful"
        return None

    def validate(self) -> None:
        failure = self.assumption_failure
        if failure is not None:
            raise CoeqAssumptionError(f"{self.name}: {failure}")

    @cached_property
    def phi_plus(self) -> Functor:
        self.validate()
        return self.Phi.then(self.j_plus, name="Φ_+")

    def minus_preimage(self, c: str) -> Optional[tuple[str, str]]:
        """(d, ι) with ι : j_-(d) → c an isomorphism, or None when c ∉ C_-."""
        for d in self.D.objects:
            source = self.j_minus(d)
            if source == c:
                return d, self.C.identity(c)
            for iota in self.C.homs(source, c):
                if self.C.is_iso(iota):
                    return d, iota
        return None


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------

def format_word(word: Word) -> str:
    src, items = word
    if not items:
        return f"id@{src}"
    parts = []
    for kind, label in items:
        if kind == "c":
            parts.append(label)
        elif kind == "f":
            parts.append(f"f[{label}]")
        else:
            parts.append(f"f[{label}]^-1")
    return " · ".join(parts)


def word_degree(word: Word) -> int:
    return sum(1 if k == "f" else -1 if k == "g" else 0 for k, _ in word[1])


def _token_count(word: Word) -> int:
    return sum(1 for k, _ in word[1] if k != "c")


class WordClosure:
    """
    Every normal word with at most max_tokens f-generators, partitioned
    into classes by the coequalizer relations.
    """

    def __init__(self, inst: CoeqInstance, max_tokens: int) -> None:
        self.inst = inst
        self.max_tokens = max_tokens
        C, D = inst.C, inst.D
        self._tokens_at: dict[str, list[tuple[Item, str]]] = defaultdict(list)
        for d in D.objects:
            self._tokens_at[inst.j_minus(d)].append((("f", d), inst.j_plus(d)))
            self._tokens_at[inst.j_plus(d)].append((("g", d), inst.j_minus(d)))
        self._steps: dict[str, list[str]] = {
            c: [a for a in C.outgoing(c) if not C.is_identity(a)] for c in C.objects
        }
        # u ↦ [(v, φ)] with u = j(φ) ∘ v, and u ↦ [(φ, w)] with u = w ∘ j(φ), for j = j_-, j_+
        self._after: dict[str, dict[str, list[tuple[str, str]]]] = {"-": defaultdict(list), "+": defaultdict(list)}
        self._before: dict[str, dict[str, list[tuple[str, str]]]] = {"-": defaultdict(list), "+": defaultdict(list)}
        self._factorizations()

        self.words: list[Word] = list(self._normal_words())
        self._index = {w: i for i, w in enumerate(self.words)}
        self._parent = list(range(len(self.words)))
        self._relate()
        logger.debug("word closure (%s, %d tokens): %d words", inst.name, max_tokens, len(self.words))

    # -- generation ----------------------------------------------------

    def _factorizations(self) -> None:
        C, D = self.inst.C, self.inst.D
        for sign, functor in (("-", self.inst.j_minus), ("+", self.inst.j_plus)):
            after, before = self._after[sign], self._before[sign]
            for phi in D.arrows.values():
                image = functor.on_arrow(phi.id)
                head, tail = functor(phi.src), functor(phi.dst)
                for x in C.objects:
                    for v in C.homs(x, head):
                        after[C.compose(image, v)].append((v, phi.id))
                    for w in C.homs(tail, x):
                        before[C.compose(w, image)].append((phi.id, w))

    def _normal_words(self) -> Iterator[Word]:
        C = self.inst.C

        def grow(src: str, items: tuple[Item, ...], at: str, open_token: Optional[Item],
                 used: int) -> Iterator[Word]:
            yield src, items
            if used == self.max_tokens:
                return
            for token, nxt in self._tokens_at.get(at, ()):
                if open_token is not None and open_token[1] == token[1] and open_token[0] != token[0]:
                    continue
                yield from grow(src, items + (token,), nxt, token, used + 1)
                for a in self._steps[nxt]:
                    yield from grow(src, items + (token, ("c", a)), C.arrow(a).dst, None, used + 1)

        for x in C.objects:
            yield from grow(x, (), x, None, 0)
            for a in self._steps[x]:
                yield from grow(x, (("c", a),), C.arrow(a).dst, None, 0)

    def normalize(self, src: str, items: tuple[Item, ...] | list[Item]) -> Word:
        """Merge adjacent C-arrows, drop identities, cancel f_d f_d^{-1} pairs."""
        C = self.inst.C
        stack: list[Item] = []
        for item in items:
            kind, label = item
            if kind == "c":
                if C.is_identity(label):
                    continue
                if stack and stack[-1][0] == "c":
                    merged = C.compose(label, stack.pop()[1])
                    if not C.is_identity(merged):
                        stack.append(("c", merged))
                    continue
                stack.append(item)
                continue
            top = stack[-1] if stack else None
            if top is not None and top[0] != "c" and top[1] == label and top[0] != kind:
                stack.pop()
                continue
            stack.append(item)
        return src, tuple(stack)

    # -- relations -----------------------------------------------------

    def _rewrites(self, word: Word) -> Iterator[Word]:
        """
        Every instance of j_-(φ)·f_{d'} = f_d·j_+(φ) and of
        f_d^{-1}·j_-(φ) = j_+(φ)·f_{d'}^{-1} (φ : d → d', application order)
        at a token of the word, read in both directions. The C-arrow next to
        the token (an identity when absent) is split through j_±(φ) in every
        possible way.
        """
        inst = self.inst
        C, D, jm, jp = inst.C, inst.D, inst.j_minus, inst.j_plus
        src, items = word
        for i, (kind, d) in enumerate(items):
            if kind == "c":
                continue
            if i > 0 and items[i - 1][0] == "c":
                before_u, start = items[i - 1][1], i - 1
            else:
                before_u, start = None, i
            if i + 1 < len(items) and items[i + 1][0] == "c":
                after_u, end = items[i + 1][1], i + 2
            else:
                after_u, end = None, i + 1
            head, tail = items[:start], items[end:]
            if kind == "f":
                u = before_u or C.identity(jm(d))
                for v, phi in self._after["-"].get(u, ()):
                    arrow = D.arrow(phi)
                    if arrow.dst == d:
                        yield self.normalize(src, head + (("c", v), ("f", arrow.src), ("c", jp.on_arrow(phi)))
                                             + items[i + 1:end] + tail)
                u = after_u or C.identity(jp(d))
                for phi, w in self._before["+"].get(u, ()):
                    arrow = D.arrow(phi)
                    if arrow.src == d:
                        yield self.normalize(src, items[:i] + (("c", jm.on_arrow(phi)), ("f", arrow.dst), ("c", w)) + tail)
            else:
                u = after_u or C.identity(jm(d))
                for phi, w in self._before["-"].get(u, ()):
                    arrow = D.arrow(phi)
                    if arrow.src == d:
                        yield self.normalize(src, items[:i] + (("c", jp.on_arrow(phi)), ("g", arrow.dst), ("c", w)) + tail)
                u = before_u or C.identity(jp(d))
                for v, phi in self._after["+"].get(u, ()):
                    arrow = D.arrow(phi)
                    if arrow.dst == d:
                        yield self.normalize(src, head + (("c", v), ("g", arrow.src), ("c", jm.on_arrow(phi)))
                                             + items[i + 1:end] + tail)

    def _find(self, i: int) -> int:
        parent = self._parent
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def _relate(self) -> None:
        for i, word in enumerate(self.words):
            for other in self._rewrites(word):
                j = self._index.get(other)
                if j is None:
                    raise CategoryError(f"rewrite left the normal words: {format_word(other)}")
                a, b = self._find(i), self._find(j)
                if a != b:
                    self._parent[max(a, b)] = min(a, b)

    # -- queries -------------------------------------------------------

    def target(self, word: Word) -> str:
        src, items = word
        at = src
        for kind, label in items:
            if kind == "c":
                at = self.inst.C.arrow(label).dst
            elif kind == "f":
                at = self.inst.j_plus(label)
            else:
                at = self.inst.j_minus(label)
        return at

    def find(self, word: Word) -> Optional[int]:
        """Class of a word (normalized first), None past the token bound."""
        i = self._index.get(self.normalize(*word))
        return None if i is None else self._find(i)

    @cached_property
    def _classes(self) -> dict[tuple[str, str, int], list[int]]:
        grouped: dict[tuple[str, str, int], set[int]] = defaultdict(set)
        for i, word in enumerate(self.words):
            grouped[(word[0], self.target(word), word_degree(word))].add(self._find(i))
        return {k: sorted(v) for k, v in grouped.items()}

    def classes(self, c1: str, c2: str, n: int) -> list[int]:
        return list(self._classes.get((c1, c2, n), ()))

    def counts(self, window: tuple[int, int]) -> dict[tuple[str, str, int], int]:
        lo, hi = window
        objs = self.inst.C.objects
        return {
            (x, y, n): len(self._classes.get((x, y, n), ()))
            for x, y in itertools.product(objs, repeat=2)
            for n in range(lo, hi + 1)
        }

    def category(self, window: tuple[int, int]) -> GradedCategory:
        lo, hi = window
        reps: dict[int, Word] = {}
        for i, word in enumerate(self.words):
            root = self._find(i)
            best = reps.get(root)
            key = (_token_count(word), len(word[1]), format_word(word))
            if best is None or key < (_token_count(best), len(best[1]), format_word(best)):
                reps[root] = word
        arrows: dict[int, Arrow] = {}
        for root, word in reps.items():
            n = word_degree(word)
            if lo <= n <= hi:
                arrows[root] = Arrow(format_word(word), word[0], self.target(word), n)
        by_src: dict[str, list[int]] = defaultdict(list)
        for root, a in arrows.items():
            by_src[a.src].append(root)
        table: dict[tuple[str, str], str] = {}
        for r1, a in arrows.items():
            for r2 in by_src.get(a.dst, ()):
                b = arrows[r2]
                if not lo <= a.degree + b.degree <= hi:
                    continue
                composite = self.find((a.src, reps[r1][1] + reps[r2][1]))
                if composite is not None and composite in arrows:
                    table[(b.id, a.id)] = arrows[composite].id
        identities = {c: arrows[self.find((c, ()))].id for c in self.inst.C.objects}
        return GradedCategory(self.inst.C.objects, arrows.values(), table, identities,
                              window=window, partial=True, name=f"Coeq({self.inst.name})")


def saturate(inst: CoeqInstance, window: tuple[int, int] = (-1, 3), *,
             max_tokens: Optional[int] = None) -> WordClosure:
    """Grow the token bound by 2 until the class counts in the window stop changing."""
    lo, hi = window
    if lo > 0 or hi < 0:
        raise CategoryError(f"degree window {window} must contain 0")
    limit = load_settings().coeq_max_tokens if max_tokens is None else max_tokens
    bound = max(hi, -lo) + 1
    current = WordClosure(inst, bound)
    while bound + 2 <= limit:
        wider = WordClosure(inst, bound + 2)
        if wider.counts(window) == current.counts(window):
            logger.info("%s: word classes saturated at %d tokens (%d words)",
                        inst.name, bound, len(wider.words))
            return wider
        current, bound = wider, bound + 2
    raise SaturationError(
        f"{inst.name}: class counts in degrees {window} still change at {bound} tokens (limit {limit})"
    )


def coeq_bruteforce(inst: CoeqInstance, window: tuple[int, int] = (-1, 3), *,
                    max_tokens: Optional[int] = None) -> GradedCategory:
    return saturate(inst, window, max_tokens=max_tokens).category(window)


# ---------------------------------------------------------------------------
# Closed form
# ---------------------------------------------------------------------------

def coeq_closed_form(inst: CoeqInstance, c1: str, c2: str, n: int) -> list[str]:
    """Mor^n(c1, c2) as a set of C-arrows."""
    inst.validate()
    if n < -1:
        return []
    if n == -1:
        found = inst.minus_preimage(c2)
        if found is None:
            return []
        d, _ = found
        return inst.C.homs(c1, inst.j_plus(d))
    return inst.C.homs(inst.phi_plus.power(n)(c1), c2)


def canonical_degree_one(inst: CoeqInstance, c: str) -> Word:
    """c → j_-Φ(c) (the unit) followed by f_{Φc}, landing on Φ_+(c)."""
    inst.validate()
    return c, (("c", inst.unit[c]), ("f", inst.Phi(c)))


def closed_form_word(inst: CoeqInstance, c1: str, c2: str, n: int, u: str) -> Word:
    """The word representing the C-arrow u under the closed-form bijection."""
    inst.validate()
    if n == -1:
        found = inst.minus_preimage(c2)
        if found is None:
            raise CategoryError(f"{c2} is not in C_-")
        d, iota = found
        return c1, (("c", u), ("g", d), ("c", iota))
    items: list[Item] = []
    c = c1
    for _ in range(n):
        items.extend(canonical_degree_one(inst, c)[1])
        c = inst.phi_plus(c)
    items.append(("c", u))
    return c1, tuple(items)


def coeq_groupoid_classes(inst: CoeqInstance) -> list[frozenset[str]]:
    """Objects of C modulo isomorphism and j_-(d) ~ j_+(d)."""
    C = inst.C
    parent = {o: o for o in C.objects}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pairs = [(x, y) for x, y in itertools.combinations(C.objects, 2) if C.isomorphic(x, y)]
    pairs += [(inst.j_minus(d), inst.j_plus(d)) for d in inst.D.objects]
    for x, y in pairs:
        parent[find(x)] = find(y)
    classes: dict[str, set[str]] = defaultdict(set)
    for o in C.objects:
        classes[find(o)].add(o)
    return sorted((frozenset(c) for c in classes.values()), key=lambda s: sorted(s))


# ---------------------------------------------------------------------------
# Lax colimits
# ---------------------------------------------------------------------------

def lax_colimit_instance(A: FinCategory, B: FinCategory, psi: Functor, j_plus: Functor,
                         name: str = "") -> CoeqInstance:
    """
    C = left-lax colimit of Ψ : A → B (objects A ⊔ B, Mor(a, b) = Mor_B(Ψa, b),
    nothing from B to A), with j_- the inclusion of B, Φ = Ψ ⊔ id_B its left
    adjoint, and j_+ : B → A ⊂ C.
    """
    if set(A.objects) & set(B.objects) or set(A.arrows) & set(B.arrows):
        raise CategoryError("A and B must have disjoint objects and arrow ids")
    if psi.source is not A or psi.target is not B or j_plus.source is not B or j_plus.target is not A:
        raise CategoryError("expected Ψ : A → B and j_+ : B → A")

    def cross(a: str, h: str) -> str:
        return f"{a}=>{h}"

    arrows = list(A.arrows.values()) + list(B.arrows.values())
    cross_arrows: dict[str, tuple[str, str]] = {}
    for a in A.objects:
        for b in B.objects:
            for h in B.homs(psi(a), b):
                arrows.append(Arrow(cross(a, h), a, b))
                cross_arrows[cross(a, h)] = (a, h)

    table = dict(A.composition) | dict(B.composition)
    for cid, (a, h) in cross_arrows.items():
        for beta in B.outgoing(B.arrow(h).dst):
            table[(beta, cid)] = cross(a, B.compose(beta, h))
        for alpha in A.arrows.values():
            if alpha.dst == a:
                table[(cid, alpha.id)] = cross(alpha.src, B.compose(h, psi.on_arrow(alpha.id)))

    C = FinCategory(A.objects + B.objects, arrows, table, dict(A.identities) | dict(B.identities),
                    name=f"{A.name}→{B.name}")
    j_minus = Functor(B, C, {b: b for b in B.objects}, {x: x for x in B.arrows}, name="j_-")
    j_plus_c = Functor(B, C, j_plus.objects, j_plus.arrows, name="j_+")
    phi_arrows = {x: psi.on_arrow(x) for x in A.arrows} | {x: x for x in B.arrows}
    phi_arrows |= {cid: h for cid, (_, h) in cross_arrows.items()}
    phi = Functor(C, B, psi.objects | {b: b for b in B.objects}, phi_arrows, name="Φ")
    unit = {a: cross(a, B.identity(psi(a))) for a in A.objects} | {b: B.identity(b) for b in B.objects}
    return CoeqInstance(C, B, j_plus_c, j_minus, phi, unit, name=name or f"lax({psi.name})")


# ---------------------------------------------------------------------------
# Cross-check
# ---------------------------------------------------------------------------

def coeq_crosscheck(inst: CoeqInstance, window: tuple[int, int] = (-1, 3), *,
                    max_tokens: Optional[int] = None) -> Report:
    """
    Brute force against the closed form on every hom-set of the window,
    the lax quotient of C ∖ C_- inside the coequalizer, and isomorphism
    classes against the coequalizer of underlying groupoids.
    """
    tally = Tally(f"coeq_crosscheck({inst.name})")
    inst.validate()
    closure = saturate(inst, window, max_tokens=max_tokens)
    tally.note("tokens", closure.max_tokens)
    tally.note("words", len(closure.words))
    C = inst.C
    lo, hi = window

    for c1, c2 in itertools.product(C.objects, repeat=2):
        for n in range(lo, hi + 1):
            expected = coeq_closed_form(inst, c1, c2, n)
            classes = closure.classes(c1, c2, n)
            ok = tally.check(len(expected) == len(classes), "hom-set sizes differ",
                             c1=c1, c2=c2, n=n, closed_form=len(expected), brute_force=len(classes))
            if not ok or not expected:
                continue
            images = {closure.find(closed_form_word(inst, c1, c2, n, u)) for u in expected}
            tally.check(images == set(classes), "closed form does not hit every class",
                        c1=c1, c2=c2, n=n)
            tally.count("morphisms", len(expected))

    outside = [c for c in C.objects if c not in inst.minus_image]
    sub = C.full_subcategory(outside, name=f"{C.name}∖C_-")
    phi_plus = inst.phi_plus
    restricted = Functor(sub, sub, {c: phi_plus(c) for c in outside},
                         {a: phi_plus.on_arrow(a) for a in sub.arrows}, name="Φ_+")
    lax = lax_quotient(sub, restricted, max(hi, 0))
    for c1, c2 in itertools.product(outside, repeat=2):
        for n in range(0, hi + 1):
            tally.check(len(lax.homs(c1, c2, n)) == len(closure.classes(c1, c2, n)),
                        "lax quotient of C ∖ C_- is not full in the coequalizer", c1=c1, c2=c2, n=n)

    iso_classes = underlying_groupoid_classes(closure.category(window))
    expected_classes = coeq_groupoid_classes(inst)
    tally.check(iso_classes == expected_classes, "isomorphism classes differ from the groupoid coequalizer",
                coequalizer=[sorted(c) for c in iso_classes], groupoids=[sorted(c) for c in expected_classes])
    tally.note("iso_classes", len(iso_classes))
    return tally.report()
