"""
Sprint 4: Economic Presentation Tests

Tests:
  - SigmaPoint validation and the economic conditions
  - the group laws, actions, γ-normalization and rescaling
  - module points, ξ and transport
  - F', j_-, j_+ and locus tags
  - the characteristic-p identity suite

Run:  PYTHONPATH=. .venv/Scripts/pytest tests/test_sigma.py -v
"""

from __future__ import annotations

import pytest

from src.errors import (
    DegreeError,
    IncompatibleOperandsError,
    NotAUnitError,
    PrimitivityError,
)
from src.rings import make_ring, zmod
from src.sharp import quasi_ideal_check
from src.sigma import (
    GroupElem,
    SigmaPoint,
    action_check,
    char_p_identity_suite,
    classify_factors,
    classify_locus,
    de_rham_point,
    economic_points,
    f_prime,
    f_prime_check,
    g_act,
    g_inverse,
    g_law,
    group_law_check,
    is_gf_subgroup,
    is_teichmuller_locus,
    j_minus,
    j_plus_data,
    j_plus_law_check,
    locus_check,
    make_sigma_point,
    module_identity_check,
    module_points,
    normalize_gamma,
    orbit_primitivity_check,
    rescale,
    rescale_check,
    transport_check,
    xi,
)
from src.sigma.charp import affine_action
from src.witt import WittVector, teichmuller, verschiebung


def W(ring, *values, degree=0):
    return WittVector.from_elements(ring, values, degree)


@pytest.fixture(scope="module")
def Z4():
    return zmod(2, 2)


@pytest.fixture(scope="module")
def F2():
    return zmod(2)


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


class TestSigmaPoints:

    def test_v_zero_always_valid(self, Z4):
        point = make_sigma_point(Z4, 0, [1, 3])
        assert point.is_economic
        assert point.zeta.degree == 2

    def test_j_minus_is_valid(self, Z4):
        point = j_minus(W(Z4, 2, 1))
        assert point.v_minus == 1
        assert f_prime(point) == W(Z4, 2, 1)

    def test_teichmuller_one_invalid_over_Z4(self, Z4):
        with pytest.raises(PrimitivityError):
            make_sigma_point(Z4, 1, [1, 0])

    def test_degree_checked(self, Z4):
        with pytest.raises(DegreeError):
            make_sigma_point(Z4, 0, W(Z4, 1, 0))

    def test_length_two_needed(self, Z4):
        with pytest.raises(IncompatibleOperandsError):
            make_sigma_point(Z4, 0, [1])

    def test_de_rham_section(self, Z4):
        point = de_rham_point(Z4, 1, 2)
        assert point.zeta.is_zero()
        assert classify_locus(point) == {"SigmaMinus"}

    def test_payload(self, Z4):
        point = make_sigma_point(Z4, 2, [0, 1])
        payload = point.to_payload()
        assert payload.v_minus == "2"
        assert payload.zeta == ["0", "1"]
        assert payload.gamma == ["1", "0"]
        assert SigmaPoint.from_payload(payload) == point

    def test_teichmuller_locus(self, F2):
        assert is_teichmuller_locus(make_sigma_point(F2, 1, [0, 0]))
        assert is_teichmuller_locus(make_sigma_point(F2, 0, [1, 0]))
        assert not is_teichmuller_locus(make_sigma_point(F2, 0, [0, 1]))


# ---------------------------------------------------------------------------
# Groups and actions
# ---------------------------------------------------------------------------


class TestGroupLaw:

    def test_zero_is_neutral(self, Z4):
        v = Z4.element(2)
        a = W(Z4, 1, 3, degree=2)
        assert g_law(v, a, WittVector.zero(Z4, 2, 2)) == a

    def test_v_zero_is_addition(self, Z4):
        a, b = W(Z4, 1, 3, degree=2), W(Z4, 2, 1, degree=2)
        assert g_law(Z4.zero, a, b) == a + b

    def test_inverse(self, Z4):
        v = Z4.element(2)
        a = W(Z4, 3, 1, degree=2)
        assert g_law(v, a, g_inverse(v, a)).is_zero()

    def test_non_unit_rejected(self, F2):
        with pytest.raises(NotAUnitError):
            GroupElem(W(F2, 1, 0, degree=2), F2.one)

    @pytest.mark.parametrize("ring", [zmod(2), zmod(3), zmod(2, 2)])
    def test_exhaustive_laws(self, ring):
        report = group_law_check(ring, 2)
        assert report.passed, report.counterexamples

    def test_gf_subgroup(self, F2):
        assert is_gf_subgroup(W(F2, 0, 0, 1, degree=2))
        assert not is_gf_subgroup(W(F2, 0, 1, 0, degree=2))


class TestActions:

    def test_identity(self, Z4):
        point = make_sigma_point(Z4, 2, [1, 3])
        assert g_act(point, GroupElem.identity(Z4, point.v_minus, 2)) == point

    def test_G_keeps_economic(self, Z4):
        point = make_sigma_point(Z4, 2, [1, 3])
        moved = g_act(point, GroupElem(W(Z4, 3, 2, degree=2), point.v_minus))
        assert moved.is_economic

    def test_v_mismatch(self, Z4):
        point = make_sigma_point(Z4, 2, [1, 3])
        with pytest.raises(IncompatibleOperandsError):
            g_act(point, GroupElem.identity(Z4, Z4.zero, 2))

    @pytest.mark.parametrize("ring", [zmod(2, 2), make_ring("Zmod(2)[t]/(t^2)"), zmod(3)])
    def test_composition_and_normalization(self, ring):
        report = action_check(ring, 2, samples=25)
        assert report.passed, report.counterexamples

    def test_action_enumerates_small_rings(self, F2):
        report = action_check(F2, 2)
        assert report.passed, report.counterexamples
        assert report.witness["mode"] == "exhaustive"
        assert report.counts["points"] == len(list(economic_points(F2, 2)))

    def test_orbit_stays_primitive(self, F2):
        report = orbit_primitivity_check(F2, 2)
        assert report.passed, report.counterexamples

    @pytest.mark.parametrize("ring", [zmod(3), zmod(2, 2)])
    def test_rescaling_fixes_primitive_element(self, ring):
        report = rescale_check(ring, 2)
        assert report.passed, report.counterexamples

    def test_rescale_moves_v(self):
        F3 = zmod(3)
        point = make_sigma_point(F3, 1, [0, 1])
        moved = rescale(point, F3.element(2))
        assert moved.v_minus == 2
        assert moved.primitive_element() == point.primitive_element()

    def test_rescale_needs_unit(self, Z4):
        with pytest.raises(NotAUnitError):
            rescale(make_sigma_point(Z4, 0, [0, 0]), Z4.element(2))


class TestNormalizeGamma:

    def test_economic_identity_witness(self, Z4):
        point = make_sigma_point(Z4, 2, [1, 3])
        result, g = normalize_gamma(point)
        assert result == point
        assert g.alpha.is_zero()

    def test_gamma_unit(self, Z4):
        point = make_sigma_point(Z4, 0, [0, 0], [3, 0])
        result, g = normalize_gamma(point)
        assert result.is_economic
        assert g.w == point.gamma
        assert g.alpha.is_zero()

    def test_v_unit_gamma_nilpotent(self, Z4):
        point = make_sigma_point(Z4, 1, [0, 1], [2, 1])
        result, g = normalize_gamma(point)
        assert result.is_economic
        assert g_act(point, g) == result


# ---------------------------------------------------------------------------
# Module points
# ---------------------------------------------------------------------------


class TestModulePoints:

    def test_zero_qualifies(self, F2):
        point = make_sigma_point(F2, 0, [1, 1])
        zero = [m for m in module_points(point) if m.x.is_zero() and m.y.is_zero()]
        assert len(zero) == 1
        assert xi(zero[0]).is_zero()

    def test_free_on_sigma_minus(self, F2):
        point = j_minus(W(F2, 0, 1))
        assert len(module_points(point)) == 8

    @pytest.mark.parametrize("ring", [zmod(2), zmod(2, 2)])
    def test_identity_and_linearity(self, ring):
        report = module_identity_check(ring, 2)
        assert report.passed, report.counterexamples

    def test_quasi_ideal(self, F2):
        report = quasi_ideal_check("sigma", F2, 2)
        assert report.passed, report.counterexamples

    def test_transport_and_rescale_fix_xi(self, Z4):
        report = transport_check(Z4, 2, samples=10)
        assert report.passed, report.counterexamples


# ---------------------------------------------------------------------------
# F', j_± and loci
# ---------------------------------------------------------------------------


class TestMorphisms:

    def test_f_prime_v_zero(self, Z4):
        point = make_sigma_point(Z4, 0, [1, 1])
        assert f_prime(point) == 2 * WittVector.one(Z4, 2)

    def test_f_prime_needs_economic(self, Z4):
        with pytest.raises(IncompatibleOperandsError):
            f_prime(make_sigma_point(Z4, 0, [0, 0], [3, 0]))

    def test_j_minus_rejects_non_primitive(self, Z4):
        with pytest.raises(PrimitivityError):
            j_minus(W(Z4, 1, 1))

    def test_j_plus_hodge_tate_point(self, F2):
        point = make_sigma_point(F2, 0, [1, 0])
        expected = verschiebung(WittVector.one(F2, 2)).with_degree(-1)
        assert j_plus_data(point) == expected

    def test_j_plus_needs_unit(self, F2):
        with pytest.raises(NotAUnitError):
            j_plus_data(make_sigma_point(F2, 0, [0, 1]))

    @pytest.mark.parametrize("ring", [zmod(2, 2), make_ring("Zmod(3)[t]/(t^2)")])
    def test_f_prime_check(self, ring):
        report = f_prime_check(ring, 2, samples=20)
        assert report.passed, report.counterexamples

    @pytest.mark.parametrize("ring", [zmod(2, 2), zmod(3, 2)])
    def test_j_plus_law(self, ring):
        report = j_plus_law_check(ring, 2, samples=20)
        assert report.passed, report.counterexamples


class TestLoci:

    def test_sigma_plus(self, F2):
        tags = classify_locus(make_sigma_point(F2, 0, [1, 0]))
        assert "SigmaPlus" in tags and "SigmaMinus" not in tags

    def test_origin_in_char_p(self, F2):
        tags = classify_locus(make_sigma_point(F2, 0, [0, 0]))
        assert tags == {"DeltaPrime0", "Yminus", "Yplus"}

    def test_no_Y_tags_over_Z4(self, Z4):
        tags = classify_locus(make_sigma_point(Z4, 0, [0, 0]))
        assert tags == {"DeltaPrime0"}

    def test_product_ring_intersection(self):
        R = make_ring("Zmod(2) x Zmod(2^2)")
        point = make_sigma_point(R, R.parse_element("(1, 0)"), WittVector.zero(R, 2, 2))
        assert classify_factors(point) == [frozenset({"SigmaMinus", "Yplus"}), frozenset({"DeltaPrime0"})]
        assert classify_locus(point) == frozenset()

    @pytest.mark.parametrize("ring", [zmod(2, 2), zmod(2), make_ring("Zmod(2) x Zmod(2)")])
    def test_never_both_signs(self, ring):
        report = locus_check(ring, 2)
        assert report.passed, report.counterexamples


# ---------------------------------------------------------------------------
# Characteristic p
# ---------------------------------------------------------------------------


class TestCharP:

    def test_gf_element_fixes_zeta0(self, F2):
        alpha = W(F2, 0, 0, 1, degree=2)
        left, right = affine_action(F2.zero, F2.one, alpha)
        assert left == right == teichmuller(F2.one, 3, degree=2)

    def test_exhaustive_F2(self, F2):
        report = char_p_identity_suite(F2, 3)
        assert report.passed, report.counterexamples
        assert report.witness["mode"] == "exhaustive"

    def test_F3_t(self):
        report = char_p_identity_suite(make_ring("Zmod(3)[t]/(t^2)"), 2, samples=40)
        assert report.passed, report.counterexamples

    def test_requires_char_p(self, Z4):
        with pytest.raises(IncompatibleOperandsError):
            char_p_identity_suite(Z4, 2)
