"""
Ring homomorphisms between finite rings: reductions, Frobenius lifts,
specializations and factor projections.
Sprint: S1

Every hom is determined by where t goes (per factor) plus how integer
coefficients reduce.  Construction validates the hom on the generator and on
a deterministic batch of sampled element pairs.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Literal, Sequence

from src.errors import HomomorphismError, IncompatibleOperandsError
from src.rings.ring import Element, Raw, Ring, make_ring
from src.rings.spec import RingSpec

logger = logging.getLogger(__name__)

HomKind = Literal["reduction", "frobenius_lift", "specialization", "factor_projection", "substitution"]

# Sampled pairs used to validate a hom at construction
_VALIDATION_PAIRS = 48
_VALIDATION_SEED = 0xD15C


@dataclass(frozen=True, eq=False)
class RingHom:
    """
    A ring homomorphism source → target.

    images[i] is the raw image of t from source factor i in the target ring
    (None when that factor has no variable); factor_map[i] is the source
    factor feeding target factor j, or, for a product source, which factor
    is read.
    """

    source: Ring
    target: Ring
    kind: HomKind
    images: tuple[Raw | None, ...]
    factor_index: int | None = None
    label: str = ""

    # ------------------------------------------------------------------
    # Application
    # ------------------------------------------------------------------

    def apply_raw(self, a: Raw) -> Raw:
        src, tgt = self.source, self.target
        coeff_blocks = src.coeffs_raw(a)
        if self.factor_index is not None:
            coeff_blocks = (coeff_blocks[self.factor_index],)
            images = (self.images[self.factor_index],)
        else:
            images = self.images
        if len(coeff_blocks) == 1 and tgt.factor_count > 1:
            # broadcast a single source factor diagonally
            coeff_blocks = coeff_blocks * tgt.factor_count
            images = images * tgt.factor_count
        result = tgt.zero_raw
        for j, (block, image) in enumerate(zip(coeff_blocks, images)):
            value = _horner(tgt, block, image)
            if tgt.factor_count > 1 and len(coeff_blocks) > 1:
                # only keep target factor j
                value = _mask_factor(tgt, value, j)
            result = tgt.add_raw(result, value)
        return result

    def __call__(self, a: Element | int) -> Element:
        return self.apply(a)

    def apply(self, a: Element | int) -> Element:
        a = self.source.element(a)
        return Element(self.target, self.apply_raw(a.raw))

    def compose(self, first: RingHom) -> RingHom:
        """self ∘ first, materialised as a substitution hom."""
        if first.target is not self.source:
            raise IncompatibleOperandsError(
                f"cannot compose {first.target} → … with {self.source} → …"
            )
        images = []
        gen_blocks = first.source.coeffs_raw(first.source.gen.raw)
        for i, block in enumerate(gen_blocks):
            if len(block) == 1:
                images.append(None)
                continue
            # image of t_i under first, then under self
            unit = [[0] * len(b) for b in gen_blocks]
            unit[i] = list(block)
            t_i = first.source.from_coeffs_raw(unit)
            images.append(self.apply_raw(first.apply_raw(t_i)))
        return _build(first.source, self.target, "substitution", tuple(images),
                      label=f"{self.label}∘{first.label}", validate=False)


def _horner(tgt: Ring, block: Sequence[int], image: Raw | None) -> Raw:
    if image is None or len(block) == 1:
        return tgt.from_int_raw(block[0])
    acc = tgt.zero_raw
    for c in reversed(block):
        acc = tgt.add_raw(tgt.mul_raw(acc, image), tgt.from_int_raw(c))
    return acc


def _mask_factor(tgt: Ring, value: Raw, j: int) -> Raw:
    parts = list(tgt.factor_raws(value))
    zero_parts = tgt.factor_raws(tgt.zero_raw)
    return tgt.join_factor_raws([parts[k] if k == j else zero_parts[k] for k in range(len(parts))])


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _validate(hom: RingHom) -> None:
    src, tgt = hom.source, hom.target
    if hom.apply_raw(src.one_raw) != tgt.one_raw:
        raise HomomorphismError(f"{hom.label}: 1 does not map to 1")
    rng = random.Random(_VALIDATION_SEED)
    if src.cardinality <= _VALIDATION_PAIRS:
        pool = [e.raw for e in src.elements()]
        pairs = [(a, b) for a in pool for b in pool]
    else:
        pairs = [(src.random_element(rng).raw, src.random_element(rng).raw)
                 for _ in range(_VALIDATION_PAIRS)]
    for a, b in pairs:
        fa, fb = hom.apply_raw(a), hom.apply_raw(b)
        if hom.apply_raw(src.add_raw(a, b)) != tgt.add_raw(fa, fb):
            raise HomomorphismError(
                f"{hom.label}: not additive at ({src.format_raw(a)}, {src.format_raw(b)})"
            )
        if hom.apply_raw(src.mul_raw(a, b)) != tgt.mul_raw(fa, fb):
            raise HomomorphismError(
                f"{hom.label}: not multiplicative at ({src.format_raw(a)}, {src.format_raw(b)})"
            )


def _check_relation(src: Ring, tgt: Ring, images: Sequence[Raw | None], label: str) -> None:
    """The image of t must satisfy the defining relation of its factor."""
    for i, (spec, image) in enumerate(zip(src.spec.factors, images)):
        if image is None:
            continue
        value = _horner(tgt, spec.modulus, image)
        if tgt.factor_count > 1 and tgt.factor_count == src.factor_count:
            value = _mask_factor(tgt, value, i)
        if value != tgt.zero_raw:
            raise HomomorphismError(f"{label}: image of t does not satisfy the relation of {spec}")


def _check_coefficients(src: Ring, tgt: Ring, label: str) -> None:
    """p^K_source must vanish in the target."""
    for spec in src.spec.factors:
        if tgt.from_int_raw(spec.characteristic) != tgt.zero_raw:
            raise HomomorphismError(f"{label}: {spec.characteristic} is not zero in {tgt.spec}")


def _build(source: Ring, target: Ring, kind: HomKind, images: tuple[Raw | None, ...], *,
           factor_index: int | None = None, label: str = "", validate: bool = True) -> RingHom:
    hom = RingHom(source, target, kind, images, factor_index, label or kind)
    if validate:
        _validate(hom)
    logger.debug("ring hom %s: %s → %s", hom.label, source.spec, target.spec)
    return hom


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def reduction(source: Ring, target: Ring | RingSpec | str) -> RingHom:
    """Coefficient reduction Z/p^K → Z/p^K' (K' ≤ K), same presentation otherwise."""
    if not isinstance(target, Ring):
        target = make_ring(target)
    if len(source.spec.factors) != len(target.spec.factors):
        raise HomomorphismError("reduction needs matching factor counts")
    for s, t in zip(source.spec.factors, target.spec.factors):
        if (s.p, s.e, s.galois) != (t.p, t.e, t.galois) or t.K > s.K:
            raise HomomorphismError(f"{t} is not a reduction of {s}")
    images = []
    for i, spec in enumerate(source.spec.factors):
        if spec.e == 1:
            images.append(None)
        else:
            blocks = [[0] * f.e for f in target.spec.factors]
            blocks[i][1] = 1
            images.append(target.from_coeffs_raw(blocks))
    return _build(source, target, "reduction", tuple(images), label=f"reduce→{target.spec}")


def frobenius_lift(ring: Ring, image: Element | Sequence[Element | None] | None = None,
                   label: str = "φ") -> RingHom:
    """
    Endomorphism t ↦ image with image ≡ t^p mod p.

    For rings without a variable the only lift is the identity (image None).
    For products pass one image per factor (None for factors without t).
    """
    if image is None or isinstance(image, Element):
        images_in = [image] * ring.factor_count if ring.factor_count == 1 else [image]
        if ring.factor_count > 1 and image is not None:
            raise HomomorphismError("product rings need one image per factor")
        if image is None:
            images_in = [None] * ring.factor_count
    else:
        images_in = list(image)
    images: list[Raw | None] = []
    for spec, img in zip(ring.spec.factors, images_in):
        if spec.e == 1:
            images.append(None)
            continue
        if img is None:
            raise HomomorphismError(f"{label}: factor {spec} needs an image of t")
        images.append(ring.element(img).raw)
    if ring.factor_count > 1:
        # images are per factor; keep only their own factor's component
        images = [None if img is None else _mask_factor(ring, img, i) for i, img in enumerate(images)]
    _check_relation(ring, ring, images, label)
    # mod-p Frobenius condition on the generator: φ(t) - t^p ≡ 0 mod p
    p = ring.p
    for i, (spec, img) in enumerate(zip(ring.spec.factors, images)):
        if img is None:
            continue
        blocks = [[0] * f.e for f in ring.spec.factors]
        blocks[i][1] = 1
        t_i = ring.from_coeffs_raw(blocks)
        diff = ring.sub_raw(img, ring.pow_raw(t_i, p))
        if not ring.divisible_raw(diff, p):
            raise HomomorphismError(f"{label}: φ(t) ≢ t^p mod p in {spec}")
    hom = _build(ring, ring, "frobenius_lift", tuple(images), label=label)
    _check_frobenius_on_samples(hom)
    return hom


def _check_frobenius_on_samples(hom: RingHom) -> None:
    ring, p = hom.source, hom.source.p
    rng = random.Random(_VALIDATION_SEED + 1)
    if ring.cardinality <= _VALIDATION_PAIRS:
        pool = [e.raw for e in ring.elements()]
    else:
        pool = [ring.random_element(rng).raw for _ in range(_VALIDATION_PAIRS)]
    for a in pool:
        diff = ring.sub_raw(hom.apply_raw(a), ring.pow_raw(a, p))
        if not ring.divisible_raw(diff, p):
            raise HomomorphismError(f"{hom.label}: φ(a) ≢ a^p mod p at a={ring.format_raw(a)}")


def specialization(source: Ring, target: Ring | RingSpec | str, value: Element | int,
                   label: str = "") -> RingHom:
    """t ↦ value for a single-factor source; coefficients reduce into the target."""
    if not isinstance(target, Ring):
        target = make_ring(target)
    if source.factor_count != 1:
        raise HomomorphismError("specialization is defined on single-factor rings")
    value_raw = target.element(value).raw
    images = (None if source.spec.factors[0].e == 1 else value_raw,)
    _check_coefficients(source, target, label or "specialization")
    _check_relation(source, target, images, label or "specialization")
    return _build(source, target, "specialization", images,
                  label=label or f"t↦{target.format_raw(value_raw)}")


def factor_projection(source: Ring, index: int) -> RingHom:
    """Projection of a product ring onto factor index."""
    if not 0 <= index < source.factor_count:
        raise HomomorphismError(f"factor index {index} out of range")
    target = make_ring(RingSpec((source.spec.factors[index],)))
    images = []
    for i, spec in enumerate(source.spec.factors):
        images.append(None if spec.e == 1 or i != index else target.gen.raw)
    return _build(source, target, "factor_projection", tuple(images),
                  factor_index=index, label=f"pr{index}")


def substitution(ring: Ring, image: Element, label: str = "") -> RingHom:
    """Endomorphism t ↦ image of a single-factor ring (no Frobenius condition)."""
    if ring.factor_count != 1:
        raise HomomorphismError("substitution is defined on single-factor rings")
    images = (None if ring.spec.factors[0].e == 1 else ring.element(image).raw,)
    _check_relation(ring, ring, images, label or "substitution")
    return _build(ring, ring, "substitution", images, label=label or "substitution")


def residue_field_map(ring: Ring) -> RingHom:
    """Single-factor local ring → its residue field (t ↦ 0, reduce mod p)."""
    spec = ring.spec.factors[0]
    if ring.factor_count != 1:
        raise HomomorphismError("residue map is defined on single-factor rings")
    if spec.galois:
        return reduction(ring, RingSpec((spec.with_precision(1),)))
    return specialization(ring, RingSpec.local(spec.p), 0, label="residue")


def apply_hom(hom: RingHom, a: Element | int) -> Element:
    """Image of a under hom."""
    return hom.apply(a)
