"""
Sprint 6: Prism Tests

Tests:
  - the three prism models and their Frobenius lifts
  - δ and the δ-ring laws on the q-de Rham model
  - the Joyal splitting and the distinguished-element checks
  - Lubin–Tate / economic consistency and the Teichmüller action
  - q^n for p-adic n

Run:  PYTHONPATH=. .venv/Scripts/pytest tests/test_prisms.py -v
"""

from __future__ import annotations

import pytest

from src.errors import IncompatibleOperandsError, NotAUnitError, PrecisionError
from src.prisms import (
    cyclotomic_tower_check,
    delta,
    delta_laws_check,
    distinguished_check,
    economic_consistency,
    joyal_split,
    joyal_split_check,
    lubin_tate_teichmuller_check,
    make_prism,
    q_power,
    q_power_action_check,
    q_power_loss,
    teichmuller_roots,
)
from src.witt import WittVector


@pytest.fixture(scope="module")
def qdr2():
    return make_prism("q_de_rham", 2, 5, 4)


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------


class TestMakePrism:

    def test_q_de_rham_p2(self, qdr2):
        q = qdr2.coordinate
        assert qdr2.d == q + 1
        assert qdr2.phi(q) == q ** 2

    def test_q_de_rham_p3_cyclotomic(self):
        model = make_prism("q_de_rham", 3, 3, 4)
        q = model.coordinate
        assert model.d == 1 + q + q ** 2
        assert model.phi(q) == q ** 3

    def test_lubin_tate(self):
        model = make_prism("lubin_tate", 2, 4, 4, 1)
        x = model.coordinate
        assert model.phi(x) == x ** 2 + x * 2
        assert model.d == x + 2
        assert model.d_at_point == 2

    def test_economic(self):
        model = make_prism("economic", 3, 4, 6, 1)
        y = model.coordinate
        assert model.phi(y) == y * (y + 3) ** 2
        assert model.d == y + 3

    def test_invalid_u(self):
        with pytest.raises(NotAUnitError):
            make_prism("lubin_tate", 3, 4, 4, 6)

    def test_needs_a_variable(self):
        with pytest.raises(PrecisionError):
            make_prism("q_de_rham", 2, 4, 1)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            make_prism("crystalline", 2)


# ---------------------------------------------------------------------------
# δ
# ---------------------------------------------------------------------------


class TestDelta:

    def test_delta_of_q_vanishes(self, qdr2):
        assert delta(qdr2, qdr2.coordinate) == 0

    def test_delta_of_q_minus_one(self, qdr2):
        lowered = qdr2.lowered(1)
        assert delta(qdr2, qdr2.coordinate - 1) == lowered.coordinate - 1

    def test_delta_of_p(self, qdr2):
        assert delta(qdr2, 2) == -1

    def test_precision_drops_by_one(self, qdr2):
        assert delta(qdr2, 3).ring is qdr2.lowered(1).ring
        assert qdr2.lowered(1).K == 4

    def test_no_room_at_K1(self):
        with pytest.raises(PrecisionError):
            delta(make_prism("q_de_rham", 2, 1, 4), 1)

    def test_laws_on_q_de_rham(self, qdr2):
        report = delta_laws_check(qdr2, sample_count=200)
        assert report.passed, report.counterexamples
        assert report.witness["delta_precision"] == "4"

    def test_laws_on_lubin_tate(self):
        report = delta_laws_check(make_prism("lubin_tate", 3, 3, 4, 4), sample_count=50)
        assert report.passed, report.counterexamples


# ---------------------------------------------------------------------------
# Joyal splitting
# ---------------------------------------------------------------------------


class TestJoyalSplit:

    def test_q_goes_to_teichmuller(self):
        model = make_prism("q_de_rham", 2, 4, 4)
        q = model.coordinate
        assert joyal_split(model, q, 3) == WittVector.teichmuller(q, 3)

    def test_one_goes_to_one(self):
        model = make_prism("q_de_rham", 3, 3, 3)
        assert joyal_split(model, 1, 3) == WittVector.one(model.ring, 3)

    def test_zeroth_component(self, qdr2):
        a = qdr2.coordinate + 1
        assert joyal_split(qdr2, a, 2)[0] == a

    def test_length_bounded_by_precision(self):
        with pytest.raises(PrecisionError):
            joyal_split(make_prism("q_de_rham", 2, 2, 4), 1, 3)

    @pytest.mark.parametrize("kind,p,u", [("q_de_rham", 2, None), ("lubin_tate", 3, 1)])
    def test_ring_homomorphism(self, kind, p, u):
        report = joyal_split_check(make_prism(kind, p, 4, 4, u), n=3, sample_count=15)
        assert report.passed, report.counterexamples


class TestDistinguished:

    @pytest.mark.parametrize("p", [2, 3])
    def test_q_de_rham(self, p):
        report = distinguished_check(make_prism("q_de_rham", p, 4, 4), n=2)
        assert report.passed, report.counterexamples

    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("shift", [0, 1])
    def test_lubin_tate(self, p, shift):
        u = 1 + shift * p
        report = distinguished_check(make_prism("lubin_tate", p, 4, 4, u), n=2)
        assert report.passed, report.counterexamples
        assert report.witness["d(0)"] == str(p * u)

    def test_economic(self):
        report = distinguished_check(make_prism("economic", 3, 4, 4, 1), n=2)
        assert report.passed, report.counterexamples

    def test_cyclotomic_tower(self):
        report = cyclotomic_tower_check(make_prism("q_de_rham", 2, 4, 8), levels=3)
        assert report.passed, report.counterexamples

    def test_tower_needs_q_de_rham(self):
        with pytest.raises(ValueError):
            cyclotomic_tower_check(make_prism("lubin_tate", 2, 4, 4, 1))


# ---------------------------------------------------------------------------
# Lubin–Tate and economic
# ---------------------------------------------------------------------------


class TestLubinTate:

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_economic_consistency(self, p):
        report = economic_consistency(p, 1)
        assert report.passed, report.counterexamples

    def test_economic_consistency_twisted(self):
        report = economic_consistency(3, 4, K=4, e=10)
        assert report.passed, report.counterexamples

    def test_teichmuller_roots(self):
        assert teichmuller_roots(3, 2) == [1, 8]
        assert teichmuller_roots(5, 1) == [1, 2, 3, 4]

    @pytest.mark.parametrize("p", [2, 3])
    def test_teichmuller_action(self, p):
        report = lubin_tate_teichmuller_check(make_prism("lubin_tate", p, 3, 5, 1))
        assert report.passed, report.counterexamples


# ---------------------------------------------------------------------------
# q^n
# ---------------------------------------------------------------------------


class TestQPower:

    def test_loss(self):
        assert q_power_loss(2, 3) == 1
        assert q_power_loss(3, 3) == 0
        assert q_power_loss(2, 5) == 3

    def test_square(self, qdr2):
        low = qdr2.lowered(1)
        q = low.coordinate
        assert q_power(2, qdr2) == q * q

    def test_inverse(self):
        model = make_prism("q_de_rham", 2, 5, 3)
        q = model.lowered(1).coordinate
        assert q_power(-1, model) * q == 1

    def test_one_plus_p(self):
        model = make_prism("q_de_rham", 3, 3, 3)
        q = model.coordinate
        assert q_power(4, model) == q * model.phi(q)

    def test_not_enough_precision(self):
        with pytest.raises(PrecisionError):
            q_power(3, make_prism("q_de_rham", 2, 2, 5))

    def test_requested_precision_too_high(self, qdr2):
        with pytest.raises(PrecisionError):
            q_power(3, qdr2, precision=5)

    def test_only_on_q_de_rham(self):
        with pytest.raises(IncompatibleOperandsError):
            q_power(2, make_prism("lubin_tate", 2, 4, 4, 1))

    def test_group_action(self, qdr2):
        report = q_power_action_check(qdr2, sample_count=20)
        assert report.passed, report.counterexamples
