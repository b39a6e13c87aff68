"""
Sprint 1: Ring Layer Tests

Tests the finite base rings and their homomorphisms:
  - spec grammar (parse + str round trip, error positions)
  - exact arithmetic in canonical form
  - unit / nilpotent predicates against exhaustive search
  - enumeration order and the enumeration bound
  - reduction, Frobenius lift and specialization homs

Run:  PYTHONPATH=. .venv/Scripts/pytest tests/test_rings.py -v
"""

from __future__ import annotations

import itertools

import pytest

from src.errors import (
    EnumerationBoundError,
    HomomorphismError,
    IncompatibleOperandsError,
    NotAUnitError,
    RingSpecError,
)
from src.rings import (
    frobenius_lift,
    make_ring,
    parse_ring_spec,
    reduction,
    residue_field_map,
    specialization,
    zmod,
)

SMALL_RINGS = [
    "Zmod(2)",
    "Zmod(2^2)",
    "Zmod(3^2)",
    "Zmod(3)[t]/(t^2)",
    "Zmod(2)[t]/(t^2)",
    "Zmod(2) x Zmod(2^2)",
    "GF(2^2)",
    "Zmod(2)[t]/(t^3)",
]

MEDIUM_RINGS = [
    "Zmod(3^4)",
    "Zmod(3)[t]/(t^4)",
    "Zmod(2^2)[t]/(t^2)",
    "GF(3^2)",
]


# ---------------------------------------------------------------------------
# Spec grammar
# ---------------------------------------------------------------------------


class TestRingSpecGrammar:

    def test_zmod_prime_power(self):
        spec = parse_ring_spec("Zmod(2^2)")
        assert (spec.p, spec.cardinality) == (2, 4)

    def test_truncated_polynomial_ring(self):
        spec = parse_ring_spec("Zmod(3)[t]/(t^2)")
        assert spec.cardinality == 9
        assert spec.factors[0].e == 2

    def test_product_ring(self):
        spec = parse_ring_spec("Zmod(2) x Zmod(2^2)")
        assert len(spec.factors) == 2
        assert spec.cardinality == 8

    def test_shorthands(self):
        assert parse_ring_spec("F_2") == parse_ring_spec("Zmod(2)")
        assert parse_ring_spec("Z/9") == parse_ring_spec("Zmod(3^2)")
        assert parse_ring_spec("Zmod(8)") == parse_ring_spec("Zmod(2^3)")

    def test_other_variable_name_is_stored_as_t(self):
        assert parse_ring_spec("Zmod(2^3)[q]/(q^4)") == parse_ring_spec("Zmod(2^3)[t]/(t^4)")

    @pytest.mark.parametrize("text", SMALL_RINGS + MEDIUM_RINGS)
    def test_str_parses_back(self, text):
        spec = parse_ring_spec(text)
        assert parse_ring_spec(str(spec)) == spec

    def test_non_prime_rejected(self):
        with pytest.raises(RingSpecError):
            parse_ring_spec("Zmod(4^2)")

    def test_non_prime_power_rejected(self):
        with pytest.raises(RingSpecError):
            parse_ring_spec("Zmod(6)")

    def test_mixed_primes_rejected(self):
        with pytest.raises(RingSpecError):
            parse_ring_spec("Zmod(2) x Zmod(3)")

    def test_error_reports_position(self):
        with pytest.raises(RingSpecError) as info:
            parse_ring_spec("Zmod(2) x Bogus(3)")
        assert info.value.position == 10

    def test_empty_rejected(self):
        with pytest.raises(RingSpecError):
            parse_ring_spec("   ")


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------


class TestArithmetic:

    def test_add_in_z4(self):
        R = zmod(2, 2)
        assert R.arith("add", R.element(3), R.element(3)) == 2

    def test_t_squared_vanishes(self):
        R = make_ring("Zmod(2)[t]/(t^2)")
        assert R.gen * R.gen == R.zero

    def test_neg_in_z9(self):
        R = zmod(3, 2)
        assert R.arith("neg", R.element(4)) == 5

    def test_coefficients_canonical(self):
        R = make_ring("Zmod(3^2)[t]/(t^2)")
        a = R.parse_element("-1-t")
        assert a.coeffs == ((8, 8),)

    def test_gf4_generator_relation(self):
        R = make_ring("GF(2^2)")
        t = R.gen
        assert t * t == t + 1
        assert t ** 3 == R.one

    def test_mismatched_rings_rejected(self):
        with pytest.raises(IncompatibleOperandsError):
            zmod(2, 2).one + zmod(2, 3).one

    def test_product_element_parse(self):
        R = make_ring("F_2 x Z/4")
        a = R.parse_element("(1, 2)")
        assert R.format_element(a) == "(1, 2)"

    @pytest.mark.parametrize("text", SMALL_RINGS)
    def test_ring_axioms_exhaustive(self, text):
        R = make_ring(text)
        els = list(R.elements())
        for a, b in itertools.product(els, repeat=2):
            assert a + b == b + a
            assert a * b == b * a
        for a, b, c in itertools.product(els, repeat=3):
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c), f"associativity at {a}, {b}, {c}"
            assert a * (b + c) == a * b + a * c

    @pytest.mark.parametrize("text", MEDIUM_RINGS)
    def test_ring_axioms_pairs(self, text):
        R = make_ring(text)
        els = list(R.elements())
        for a, b in itertools.product(els, repeat=2):
            assert a * b == b * a
            assert (a - b) + b == a
            assert a * (b + R.one) == a * b + a


# ---------------------------------------------------------------------------
# Units and nilpotents
# ---------------------------------------------------------------------------


class TestUnitsAndNilpotents:

    def test_examples(self):
        R = zmod(2, 2)
        assert R.is_unit(R.element(3))
        assert R.is_nilpotent(R.element(2))
        S = make_ring("Zmod(3)[t]/(t^2)")
        assert S.is_unit(S.parse_element("1+t"))
        P = make_ring("F_2 x Z/4")
        assert not P.is_unit(P.parse_element("(1, 2)"))

    @pytest.mark.parametrize("text", SMALL_RINGS + MEDIUM_RINGS)
    def test_is_unit_matches_search(self, text):
        R = make_ring(text)
        els = list(R.elements())
        for a in els:
            found = any(a * b == R.one for b in els)
            assert R.is_unit(a) == found, f"{a} in {text}"

    @pytest.mark.parametrize("text", SMALL_RINGS + MEDIUM_RINGS)
    def test_is_nilpotent_matches_powers(self, text):
        R = make_ring(text)
        for a in R.elements():
            nil = (a ** R.cardinality) == R.zero
            assert R.is_nilpotent(a) == nil, f"{a} in {text}"

    def test_inverse_of_non_unit_raises(self):
        R = zmod(2, 3)
        with pytest.raises(NotAUnitError):
            R.inverse(R.element(6))

    def test_inverse_in_galois_ring(self):
        R = make_ring("GR(2^2,2)")
        for a in R.elements():
            if a.is_unit():
                assert a * a.inverse() == R.one


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


class TestEnumeration:

    def test_f2(self):
        assert [str(a) for a in zmod(2).elements()] == ["0", "1"]

    def test_z4(self):
        assert [str(a) for a in zmod(2, 2).elements()] == ["0", "1", "2", "3"]

    def test_f2_t2_has_four_distinct(self):
        els = list(make_ring("Zmod(2)[t]/(t^2)").elements())
        assert len(els) == 4 == len(set(els))

    def test_deterministic(self):
        R = make_ring("F_2 x Z/4")
        assert list(R.elements()) == list(R.elements())

    def test_bound_exceeded(self, monkeypatch):
        monkeypatch.setenv("WITTFORGE_ENUMERATION_BOUND", "10")
        with pytest.raises(EnumerationBoundError):
            list(zmod(3, 3).elements())

    def test_make_ring_enumerable_checks_bound(self, monkeypatch):
        monkeypatch.setenv("WITTFORGE_ENUMERATION_BOUND", "100")
        with pytest.raises(EnumerationBoundError):
            make_ring("Zmod(2^8)", enumerable=True)

    def test_handles_are_cached(self):
        assert make_ring("Z/9") is zmod(3, 2)


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------


class TestRingHoms:

    @pytest.fixture(scope="class")
    def q_ring(self):
        # Z/8[q]/((q-1)^4) written in t = q - 1
        return make_ring("Zmod(2^3)[t]/(t^4)")

    def test_frobenius_squares_q(self, q_ring):
        t = q_ring.gen
        phi = frobenius_lift(q_ring, 2 * t + t * t)
        q = 1 + t
        assert phi(q) == q * q

    def test_frobenius_is_multiplicative(self, q_ring):
        t = q_ring.gen
        phi = frobenius_lift(q_ring, 2 * t + t * t)
        a, b = 3 + t, 1 + 5 * t * t
        assert phi(a * b) == phi(a) * phi(b)
        assert phi(a + b) == phi(a) + phi(b)

    def test_non_frobenius_image_rejected(self, q_ring):
        with pytest.raises(HomomorphismError):
            frobenius_lift(q_ring, q_ring.gen)

    def test_specialization_of_cyclotomic(self, q_ring):
        ev = specialization(q_ring, "Zmod(2^3)", 0)
        phi_2 = 2 + q_ring.gen      # 1 + q
        assert ev(phi_2) == 2

    def test_specialization_must_respect_relation(self):
        R = make_ring("Zmod(2)[t]/(t^2)")
        with pytest.raises(HomomorphismError):
            specialization(R, "Zmod(2)", 1)

    def test_reduction(self):
        hom = reduction(zmod(2, 3), "Zmod(2)")
        assert hom(5) == 1

    def test_reduction_preserves_operations(self):
        src = make_ring("Zmod(3^2)[t]/(t^2)")
        hom = reduction(src, "Zmod(3)[t]/(t^2)")
        for a, b in itertools.product(list(src.elements())[:20], repeat=2):
            assert hom(a * b) == hom(a) * hom(b)
            assert hom(a + b) == hom(a) + hom(b)

    def test_reduction_cannot_raise_precision(self):
        with pytest.raises(HomomorphismError):
            reduction(zmod(2, 1), "Zmod(2^2)")

    def test_residue_field_map(self):
        R = make_ring("Zmod(3^2)[t]/(t^3)")
        res = residue_field_map(R)
        assert res(R.parse_element("4+t")) == 1
