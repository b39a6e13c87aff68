"""
Left-lax quotients of a finite category by an endofunctor.
Sprint: S5

Mor^m(c, c') = Mor_C(Φ^m c, c'), and f ∈ Mor^m(c, c'), g ∈ Mor^n(c', c'')
compose to g ∘ Φ^n(f) ∈ Mor^{m+n}(c, c''). Degree-0 arrows keep their
C ids, so the degree-0 part is C itself.
"""

from __future__ import annotations

import logging

from src.categories.fincat import Arrow, FinCategory, Functor, GradedCategory
from src.errors import CategoryError

logger = logging.getLogger(__name__)


def _lax_id(f: str, m: int, src: str) -> str:
    return f if m == 0 else f"{f}^{m}@{src}"


def lax_quotient(C: FinCategory, phi: Functor, N: int) -> GradedCategory:
    """The lax quotient C_Φ in degrees 0..N."""
    if N < 0:
        raise CategoryError(f"degree bound must be >= 0, got {N}")
    if phi.source is not C or phi.target is not C:
        raise CategoryError(f"{phi!r} is not an endofunctor of {C.name}")

    powers = [phi.power(m) for m in range(N + 1)]
    arrows: list[Arrow] = []
    underlying: dict[str, tuple[int, str]] = {}
    for c in C.objects:
        for m, power in enumerate(powers):
            for target in C.objects:
                for f in C.homs(power(c), target):
                    lax_id = _lax_id(f, m, c)
                    arrows.append(Arrow(lax_id, c, target, m))
                    underlying[lax_id] = (m, f)

    by_src: dict[str, list[Arrow]] = {}
    for a in arrows:
        by_src.setdefault(a.src, []).append(a)

    table: dict[tuple[str, str], str] = {}
    for fa in arrows:
        m, f = underlying[fa.id]
        for ga in by_src.get(fa.dst, ()):
            n, g = underlying[ga.id]
            if m + n > N:
                continue
            h = C.compose(g, powers[n].on_arrow(f))
            table[(ga.id, fa.id)] = _lax_id(h, m + n, fa.src)

    name = f"{C.name}_{phi.name or 'Φ'}"
    result = GradedCategory(C.objects, arrows, table, dict(C.identities), window=(0, N), name=name)
    logger.debug("lax quotient %r", result)
    return result
