"""
Sprint 4: Primitive Witt Vector Tests

Tests:
  - is_primitive on worked examples
  - contract_to_p: n = 0 branch, minimal n, truncation errors
  - unit_to_one and the orbit of p
  - perfect-field normal form, divisibility and degeneracy checks

Run:  PYTHONPATH=. .venv/Scripts/pytest tests/test_primitive.py -v
"""

from __future__ import annotations

import pytest

from src.errors import IncompatibleOperandsError, NotAUnitError, PrimitivityError, TruncationError
from src.rings import make_ring, zmod
from src.sigma import (
    contract_to_p,
    contracting_check,
    degeneracy_check,
    divides_primitive_check,
    frobenius_primitivity_check,
    is_primitive,
    orbit_normalize,
    orbit_normalize_check,
    perfect_normal_form,
    perfect_normal_form_check,
    primitive_times_unit_check,
    unit_to_one,
    unit_to_one_check,
)
from src.sigma.primitive import p_times_one
from src.witt import WittVector, frobenius, iterate_frobenius, mul_int, teichmuller, verschiebung


def W(ring, *values):
    return WittVector.from_elements(ring, values)


@pytest.fixture(scope="module")
def Z4():
    return zmod(2, 2)


@pytest.fixture(scope="module")
def Z8():
    return zmod(2, 3)


@pytest.fixture(scope="module")
def F2():
    return zmod(2)


# ---------------------------------------------------------------------------
# Primitivity
# ---------------------------------------------------------------------------


class TestIsPrimitive:

    def test_two_one_zero_over_Z4(self, Z4):
        assert is_primitive(W(Z4, 2, 1, 0))

    def test_unit_zeroth_component(self, Z4):
        assert not is_primitive(W(Z4, 1, 1))

    def test_p_is_primitive(self, Z8):
        assert is_primitive(p_times_one(Z8, 3))

    def test_V1_over_F2(self, F2):
        assert is_primitive(W(F2, 0, 1))

    def test_length_one_rejected(self, Z4):
        with pytest.raises(TruncationError):
            is_primitive(W(Z4, 2))

    @pytest.mark.parametrize("spec,n", [("Zmod(2^2)", 2), ("Zmod(2)[t]/(t^2)", 2), ("Zmod(3)", 2)])
    def test_frobenius_detects_primitivity(self, spec, n):
        report = frobenius_primitivity_check(make_ring(spec), n)
        assert report.passed, report.counterexamples

    def test_primitive_times_unit(self, Z4):
        report = primitive_times_unit_check(Z4, 2)
        assert report.passed, report.counterexamples


# ---------------------------------------------------------------------------
# Contracting
# ---------------------------------------------------------------------------


class TestContractToP:

    def test_Z4(self, Z4):
        x = W(Z4, 2, 1)
        n, u = contract_to_p(x)
        assert n == 1
        assert u.is_unit()
        assert frobenius(x) == mul_int(2, u)

    def test_Z8_minimal_n(self, Z8):
        x = W(Z8, 2, 1, 0)
        n, u = contract_to_p(x)
        assert n == 2, f"2^(2^{n}) should be the first vanishing power"
        assert iterate_frobenius(x, n) == mul_int(2, u)

    def test_zero_branch_over_F2(self, F2):
        x = W(F2, 0, 1)
        n, u = contract_to_p(x)
        assert n == 0
        assert u == WittVector.one(F2, 2)
        assert mul_int(2, u) == x

    def test_truncation_too_short(self, Z8):
        with pytest.raises(TruncationError):
            contract_to_p(W(Z8, 2, 1))

    def test_not_primitive(self, Z4):
        with pytest.raises(PrimitivityError):
            contract_to_p(W(Z4, 1, 1))

    def test_contracting_check_Z8(self, Z8):
        report = contracting_check(Z8, 4)
        assert report.passed, report.counterexamples
        assert report.witness["max_n"] == "2"


class TestUnitToOne:

    def test_one(self, Z4):
        assert unit_to_one(WittVector.one(Z4, 3)) == 0

    def test_precondition(self, Z4):
        with pytest.raises(ValueError):
            unit_to_one(W(Z4, 1, 1))

    def test_non_unit(self, Z4):
        with pytest.raises(NotAUnitError):
            unit_to_one(W(Z4, 2, 1))

    @pytest.mark.parametrize("ring,n", [(zmod(2, 2), 3), (zmod(2), 3), (zmod(3, 2), 2)])
    def test_bound_by_nilpotency_order(self, ring, n):
        report = unit_to_one_check(ring, n)
        assert report.passed, report.counterexamples


class TestOrbitOfP:

    def test_p_itself(self, Z8):
        assert orbit_normalize(p_times_one(Z8, 3)) == WittVector.one(Z8, 3)

    def test_p_plus_teichmuller_four(self, Z8):
        z = p_times_one(Z8, 3) + teichmuller(Z8.element(4), 3)
        u = orbit_normalize(z)
        assert u.is_unit()
        assert mul_int(2, u) == z

    def test_p_plus_V_four(self, Z8):
        z = p_times_one(Z8, 3) + verschiebung(teichmuller(Z8.element(4), 2))
        assert mul_int(2, orbit_normalize(z)) == z

    def test_not_congruent(self, Z8):
        with pytest.raises(ValueError):
            orbit_normalize(WittVector.one(Z8, 3))

    @pytest.mark.parametrize("ring,n", [(zmod(2, 3), 3), (zmod(3, 3), 2), (zmod(2, 4), 2)])
    def test_exhaustive(self, ring, n):
        report = orbit_normalize_check(ring, n)
        assert report.passed, report.counterexamples


# ---------------------------------------------------------------------------
# Perfect fields and reduced rings
# ---------------------------------------------------------------------------


class TestPerfectAndReduced:

    def test_V1_normal_form(self, F2):
        assert perfect_normal_form(W(F2, 0, 1, 0)) == WittVector.one(F2, 2)

    def test_requires_field(self, Z4):
        with pytest.raises(IncompatibleOperandsError):
            perfect_normal_form(W(Z4, 2, 1, 0))

    @pytest.mark.parametrize("spec", ["Zmod(2)", "Zmod(3)", "GF(2^2)"])
    def test_unique_unit(self, spec):
        report = perfect_normal_form_check(make_ring(spec), 3)
        assert report.passed, report.counterexamples

    @pytest.mark.parametrize("spec", ["Zmod(2)", "Zmod(2) x Zmod(2)", "GF(2^2)"])
    def test_divides_primitive(self, spec):
        report = divides_primitive_check(make_ring(spec), 2)
        assert report.passed, report.counterexamples

    def test_divides_primitive_needs_reduced(self):
        with pytest.raises(IncompatibleOperandsError):
            divides_primitive_check(make_ring("Zmod(2)[t]/(t^2)"))

    @pytest.mark.parametrize("ring,n", [(zmod(2), 2), (zmod(2, 2), 2), (zmod(3, 2), 1)])
    def test_degeneracy_forces_char_p(self, ring, n):
        report = degeneracy_check(ring, n)
        assert report.passed, report.counterexamples
