"""
Sprint 3: Divided Powers and Frobenius Kernel Tests

Tests:
  - dp_reduce / dp_multiply / dp_comult worked examples and content
  - coassociativity and rewriting confluence, symbolically
  - Ker F points, the mod-p unit splitting, annihilators, quasi-ideals
  - divided-power coordinates of Ker F points (sign convention)

Run:  PYTHONPATH=. .venv/Scripts/pytest tests/test_sharp.py -v
"""

from __future__ import annotations

import pytest

from src.errors import IncompatibleOperandsError, PrimitivityError, TruncationError
from src.rings import make_ring, zmod
from src.sharp import (
    DPElement,
    SharpPoint,
    annihilator_check,
    coassociativity_check,
    divided_power_coordinates_check,
    dp_comult,
    dp_content,
    dp_reduce,
    joyal_sign,
    joyal_to_divided_power,
    module_action_check,
    not_additive_check,
    primitive_part,
    quasi_ideal_check,
    rewriting_confluence_check,
    sharp_points,
    unit_product_identity_check,
    unit_splitting,
    unit_splitting_check,
)
from src.sharp.joyal import joyal_polys
from src.witt import WittVector, frobenius, universal_polys


def W(ring, *values):
    return WittVector.from_elements(ring, values)


def u(i, p, depth, legs=1, leg=0):
    return DPElement.u(i, p, depth, legs, leg)


# ---------------------------------------------------------------------------
# Symbolic divided-power algebra
# ---------------------------------------------------------------------------


class TestDividedPowers:

    def test_x_squared_is_2u1(self):
        assert dp_reduce(2, 2) == u(1, 2, 2).scale(2)

    def test_x_is_u0(self):
        e = dp_reduce(1, 5)
        assert e == u(0, 5, 1)
        assert dp_content(e) == 1

    def test_x_to_the_fourth_at_3(self):
        assert dp_reduce(4, 3) == (u(0, 3, 2) * u(1, 3, 2)).scale(3)

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            dp_reduce(-1, 2)

    def test_depth_too_small(self):
        with pytest.raises(TruncationError):
            dp_reduce(8, 2, depth=3)

    def test_multiply_carries(self):
        assert u(0, 2, 2) * u(0, 2, 2) == u(1, 2, 2).scale(2)
        assert u(0, 3, 2) ** 3 == u(1, 3, 2).scale(3)

    def test_multiply_past_depth(self):
        with pytest.raises(TruncationError):
            u(1, 2, 2) * u(1, 2, 2)

    def test_no_zero_coefficients_stored(self):
        e = u(0, 2, 2) - u(0, 2, 2)
        assert e.is_zero()
        assert str(e) == "0"

    def test_content(self):
        assert dp_content(u(1, 2, 2).scale(2)) == 2
        with pytest.raises(ValueError):
            dp_content(DPElement.zero(2, 2))

    def test_payload_shape(self):
        payload = dp_reduce(3, 2).to_payload()
        assert payload.terms == [([1, 1], "2")]
        assert DPElement.from_payload(payload) == dp_reduce(3, 2)


class TestComultiplication:

    def test_u0_is_primitive(self):
        assert dp_comult(0, 3) == u(0, 3, 1, 2, 0) + u(0, 3, 1, 2, 1)

    def test_u1_at_2(self):
        expected = u(1, 2, 2, 2, 0) + u(1, 2, 2, 2, 1) + u(0, 2, 2, 2, 0) * u(0, 2, 2, 2, 1)
        assert dp_comult(1, 2) == expected

    def test_u2_at_2_mixed_coefficient(self):
        delta = dp_comult(2, 2)
        assert delta.coefficient((1, 0, 0, 1, 1, 0)) == 1

    def test_depth_must_exceed_index(self):
        with pytest.raises(TruncationError):
            dp_comult(2, 2, 2)

    @pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
    def test_primitive_part_has_content_one(self, p, n):
        assert dp_content(primitive_part(n, p)) == 1

    @pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2)])
    def test_coassociative(self, p, n):
        report = coassociativity_check(p, n)
        assert report.status == "pass", report.counterexamples

    @pytest.mark.parametrize("p", [2, 3])
    def test_rewriting_confluent(self, p):
        report = rewriting_confluence_check(p)
        assert report.status == "pass", report.counterexamples
        assert report.counts["checked"] == (p ** 3 + 1) * (p ** 3 + 2) // 2

    def test_not_additive_report(self):
        report = not_additive_check(3, 2)
        assert report.passed
        assert report.witness["content_u2"] == "1"


# ---------------------------------------------------------------------------
# Ker F
# ---------------------------------------------------------------------------


class TestSharpPoints:

    def test_F2_length_two(self):
        F2 = zmod(2)
        points = sharp_points(F2, 1)
        assert sorted(str(pt) for pt in points) == ["(0, 0)", "(0, 1)"]

    def test_Z4_length_two(self):
        R = zmod(2, 2)
        points = sharp_points(R, 1)
        assert len(points) == 4
        assert all(pt.d.raw % 2 == 0 for pt in points)

    def test_zero_is_a_point(self):
        R = make_ring("Zmod(3)[t]/(t^2)")
        assert SharpPoint(WittVector.zero(R, 3)) in sharp_points(R, 2)

    def test_rejects_non_kernel_vector(self):
        with pytest.raises(PrimitivityError):
            SharpPoint(W(zmod(2), 1, 0))

    def test_group_and_module(self):
        R = zmod(2, 2)
        points = sharp_points(R, 2)
        a, b = points[1], points[-1]
        assert (a + b).x == a.x + b.x
        w = W(R, 3, 1, 2)
        assert frobenius(a.act(w).x).is_zero()

    @pytest.mark.parametrize("spec,n", [("Zmod(2)", 2), ("Zmod(2^2)", 1), ("Zmod(3)[t]/(t^2)", 1)])
    def test_action_factors_through_W_mod_VW(self, spec, n):
        report = module_action_check(make_ring(spec), n)
        assert report.passed, report.counterexamples


class TestUnitSplitting:

    def test_zero_and_one(self):
        R = make_ring("Zmod(2)[t]/(t^2)")
        zero = SharpPoint(WittVector.zero(R, 2))
        assert unit_splitting(zero, R.one) == WittVector.one(R, 3)

    def test_lands_in_kernel(self):
        R = make_ring("Zmod(2)[t]/(t^2)")
        c = 1 + R.gen
        for pt in sharp_points(R, 1):
            assert frobenius(unit_splitting(pt, c)).is_one(), f"x={pt}"

    def test_requires_root_of_unity(self):
        R = zmod(3)
        with pytest.raises(PrimitivityError):
            unit_splitting(SharpPoint(WittVector.zero(R, 2)), R.element(2))

    def test_requires_char_p(self):
        R = zmod(2, 2)
        with pytest.raises(IncompatibleOperandsError):
            unit_splitting(SharpPoint(WittVector.zero(R, 2)), R.one)

    def test_product_identity_W3_F2(self):
        report = unit_product_identity_check(zmod(2), 3)
        assert report.passed, report.counterexamples
        assert report.counts["checked"] == 16

    def test_product_identity_F3_t(self):
        report = unit_product_identity_check(make_ring("Zmod(3)[t]/(t^2)"), 3)
        assert report.passed, report.counterexamples

    def test_splitting_injective_and_multiplicative(self):
        report = unit_splitting_check(make_ring("Zmod(2)[t]/(t^2)"), 1)
        assert report.passed, report.counterexamples
        assert report.witness["mu_p"] == "2"


class TestAnnihilatorsAndQuasiIdeals:

    def test_annihilator_F2(self):
        report = annihilator_check(zmod(2), 3)
        assert report.passed, report.counterexamples

    def test_annihilator_Z4(self):
        report = annihilator_check(zmod(2, 2), 2)
        assert report.passed, report.counterexamples

    def test_quasi_ideal_kernel(self):
        report = quasi_ideal_check("sharp", zmod(2), 3)
        assert report.passed, report.counterexamples

    def test_quasi_ideal_unknown(self):
        with pytest.raises(ValueError):
            quasi_ideal_check("bogus", zmod(2), 2)


# ---------------------------------------------------------------------------
# Divided-power coordinates
# ---------------------------------------------------------------------------


class TestJoyalCoordinates:

    def test_signs(self):
        assert [joyal_sign(2, k) for k in range(4)] == [1, -1, -1, -1]
        assert [joyal_sign(3, k) for k in range(4)] == [1, -1, 1, -1]

    def test_first_coordinate_is_x1(self):
        x0, x1 = universal_polys(2, 1, "F").ring.gens
        assert joyal_polys(2, 1) == (x0, x1)

    @pytest.mark.parametrize("p", [2, 3])
    def test_tower_is_integral(self, p):
        ys = joyal_polys(p, 2)
        gens = universal_polys(p, 2, "F").ring.gens
        assert len(ys) == 3
        assert ys[:2] == (gens[0], gens[1])
        assert ys[2] != 0

    def test_u1_is_minus_x1_at_2(self):
        R = zmod(2, 2)
        pt = SharpPoint(W(R, 2, 2))
        assert joyal_to_divided_power(pt) == (R.element(2), R.element(2))

    @pytest.mark.parametrize("spec,n", [
        ("Zmod(2^3)", 2),
        ("Zmod(2)[t]/(t^2)", 2),
        ("Zmod(3^2)", 1),
        ("Zmod(3)[t]/(t^2)", 1),
    ])
    def test_coordinates_satisfy_relations_and_coproduct(self, spec, n):
        report = divided_power_coordinates_check(make_ring(spec), n)
        assert report.passed, report.counterexamples
