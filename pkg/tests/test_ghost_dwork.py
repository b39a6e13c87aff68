"""
Sprint 2: Ghost Map and Dwork Lifting Tests

Tests:
  - ghost components of worked examples
  - ghost_lift with centered exact division and precision bookkeeping
  - dwork_lift: congruence validation, [p^2]/p, q-de Rham Teichmüller lift

Run:  PYTHONPATH=. .venv/Scripts/pytest tests/test_ghost_dwork.py -v
"""

from __future__ import annotations

import random

import pytest

from src.errors import DivisibilityError, DworkConditionError, PrecisionError
from src.rings import frobenius_lift, make_ring, zmod
from src.witt import (
    GhostSeq,
    WittVector,
    dwork_condition_p2,
    dwork_lift,
    ghost,
    ghost_lift,
    lifted_precisions,
    mul_int,
    p2_over_p,
    random_vector,
    teichmuller,
    verschiebung,
)


def W(ring, *values):
    return WittVector.from_elements(ring, values)


def G(ring, *values, precisions=None):
    return GhostSeq.from_elements(ring, values, precisions)


# ---------------------------------------------------------------------------
# Ghost components
# ---------------------------------------------------------------------------


class TestGhost:

    def test_ghost_of_one(self):
        R = zmod(3, 2)
        assert ghost(W(R, 1, 0)).elements == (R.element(1), R.element(1))

    def test_ghost_of_V1(self):
        R = zmod(3, 2)
        g = ghost(verschiebung(WittVector.one(R, 1)))
        assert [str(w) for w in g.elements] == ["0", "3"]

    def test_ghost_of_p(self):
        R = zmod(2, 4)
        g = ghost(mul_int(2, WittVector.one(R, 3)))
        assert [str(w) for w in g.elements] == ["2", "2", "2"]

    def test_ghost_is_additive_and_multiplicative(self):
        R = zmod(3, 3)
        rng = random.Random(11)
        for _ in range(30):
            x, y = random_vector(R, 3, rng), random_vector(R, 3, rng)
            gx, gy = ghost(x).entries, ghost(y).entries
            assert ghost(x + y).entries == tuple(R.add_raw(a, b) for a, b in zip(gx, gy))
            assert ghost(x * y).entries == tuple(R.mul_raw(a, b) for a, b in zip(gx, gy))

    def test_precisions_must_not_increase(self):
        with pytest.raises(ValueError):
            G(zmod(2, 4), 1, 1, precisions=(2, 3))


# ---------------------------------------------------------------------------
# ghost_lift
# ---------------------------------------------------------------------------


class TestGhostLift:

    def test_centered_division(self):
        R = zmod(2, 4)
        assert ghost_lift(G(R, 2, 2)) == W(R, 2, 15)

    def test_constant_sequence(self):
        R = zmod(2, 3)
        assert ghost_lift(G(R, 1, 1, 1)) == W(R, 1, 0, 0)

    def test_verschiebung_of_one(self):
        R = zmod(3, 3)
        assert ghost_lift(G(R, 0, 3)) == W(R, 0, 1)

    def test_not_a_ghost_sequence(self):
        with pytest.raises(DivisibilityError):
            ghost_lift(G(zmod(2, 3), 1, 2))

    def test_precision_deducted(self):
        g = G(zmod(3, 3), 1, 1, 1)
        assert lifted_precisions(g) == (3, 2, 1)

    def test_precision_exhausted(self):
        R = zmod(2, 2)
        with pytest.raises(PrecisionError):
            ghost_lift(G(R, 1, 1, 1))

    def test_round_trip_at_tracked_precision(self):
        R = zmod(3, 4)
        rng = random.Random(0xD15C)
        for _ in range(50):
            x = random_vector(R, 3, rng)
            g = ghost(x)
            lift = ghost_lift(g)
            assert ghost(lift).agrees(g), f"x={x}"
            for i, prec in enumerate(lifted_precisions(g)):
                diff = R.sub_raw(lift.comps[i], x.comps[i])
                assert R.divisible_raw(diff, 3 ** prec), f"component {i} of {x}"

    def test_partial_precision_entries(self):
        R = zmod(2, 5)
        # last entry only known mod 2^4
        lift = ghost_lift(G(R, 2, 2, 18, precisions=(5, 5, 4)))
        assert lift.comps[:2] == (2, 31)


# ---------------------------------------------------------------------------
# Dwork lifting
# ---------------------------------------------------------------------------


class TestDworkLift:

    def test_p2_over_p_ghost_sequence(self):
        R = zmod(2, 9)
        a = dwork_lift(frobenius_lift(R), G(R, 2, 8, 128))
        assert a == W(R, 2, 2, 26)
        assert mul_int(2, a) == teichmuller(R.element(4), 3)

    @pytest.mark.parametrize("p,n", [(2, 3), (3, 3), (5, 2)])
    def test_p_times_a_is_teichmuller_p_squared(self, p, n):
        a = p2_over_p(p, n, 4)
        assert mul_int(p, a) == WittVector.teichmuller(p * p, n, ring=a.ring)

    def test_constant_p_is_p_times_one(self):
        # computed with headroom, compared after reduction
        p, n, K = 3, 3, 3
        lifted = zmod(p, K + n)
        x = dwork_lift(frobenius_lift(lifted), G(lifted, p, p, p))
        R = zmod(p, K)
        reduced = WittVector(R, tuple(R.reduce_raw(c, lifted) for c in x.comps))
        assert reduced == mul_int(p, WittVector.one(R, n))

    def test_violation_detected(self):
        R = zmod(2, 2)
        with pytest.raises(DworkConditionError):
            dwork_lift(frobenius_lift(R), G(R, 1, 2))

    def test_q_de_rham_teichmuller(self):
        R = make_ring("Zmod(2^3)[t]/(t^4)")
        t = R.gen
        phi = frobenius_lift(R, 2 * t + t * t)
        q = 1 + t
        g = G(R, q, q ** 2, q ** 4)
        assert dwork_lift(phi, g) == teichmuller(q, 3)

    def test_constant_q_is_not_dwork(self):
        R = make_ring("Zmod(2^3)[t]/(t^4)")
        t = R.gen
        phi = frobenius_lift(R, 2 * t + t * t)
        q = 1 + t
        with pytest.raises(DworkConditionError):
            dwork_lift(phi, G(R, q, q))

    def test_dwork_condition_report(self):
        report = dwork_condition_p2(2, 3)
        assert report.status == "pass"
        assert "a" in report.witness
