"""
Sprint 5: Toy Model Tests

Tests:
  - the λ-category on the coordinate cross over F_q
  - the graded category Γ'' and its agreement with the brute-force coequalizer
  - the nodal-curve and admissible-collection models

Run:  PYTHONPATH=. .venv/Scripts/pytest tests/test_toy.py -v
"""

from __future__ import annotations

import pytest

from src.categories import (
    admissible_windows,
    coeq_bruteforce,
    gamma_double_prime,
    gamma_double_prime_check,
    nodal_model_check,
    toy_instance,
    toy_S_prime,
)
from src.categories.toy import toy_field
from src.errors import IncompatibleOperandsError, RingSpecError


class TestSPrime:

    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_object_count(self, q):
        assert len(toy_S_prime(q).objects) == 2 * q - 1

    def test_initial_and_final_over_F2(self):
        cat = toy_S_prime(2)
        for obj in cat.objects:
            assert len(cat.homs("(1,0)", obj)) == 1, f"(1,0) → {obj}"
            assert len(cat.homs(obj, "(0,1)")) == 1, f"{obj} → (0,1)"

    def test_origin_endomorphisms(self):
        assert len(toy_S_prime(3).homs("(0,0)", "(0,0)")) == 3

    def test_lambda_rule(self):
        cat = toy_S_prime(3)
        assert cat.compose("(2,0)>(0,0):0", "(1,0)>(2,0):2") == "(1,0)>(0,0):0"
        assert cat.compose("(0,2)>(0,1):2", "(0,1)>(0,2):2") == "(0,1)>(0,1):1"

    def test_q_too_large(self):
        with pytest.raises(IncompatibleOperandsError):
            toy_field(11)

    def test_not_a_prime_power(self):
        with pytest.raises(RingSpecError):
            toy_field(6)


class TestGammaDoublePrime:

    @pytest.fixture(scope="class")
    def gamma3(self):
        return gamma_double_prime(3)

    def test_degree_minus_one(self, gamma3):
        assert len(gamma3.homs("(1,0)", "(0,1)", -1)) == 1
        assert len(gamma3.homs("(2,0)", "(0,2)", -1)) == 1
        assert gamma3.homs("(0,1)", "(1,0)", -1) == []
        assert gamma3.homs("(0,0)", "(0,1)", -1) == []

    def test_positive_degrees_are_complete(self, gamma3):
        for x in gamma3.objects:
            for y in gamma3.objects:
                assert [len(gamma3.homs(x, y, n)) for n in (1, 2, 3)] == [1, 1, 1]

    def test_window_starts_at_minus_one(self, gamma3):
        assert gamma3.window == (-1, 3)
        assert min(a.degree for a in gamma3.arrows.values()) == -1

    def test_degree_one_then_minus_one(self, gamma3):
        f = "(0,1)>(1,0):<1>"
        g = "(1,0)>(0,1):<-1>"
        assert gamma3.compose(g, f) == gamma3.identity("(0,1)")
        assert gamma3.compose(f, g) == gamma3.identity("(1,0)")

    def test_matches_bruteforce_over_F2(self):
        expected = gamma_double_prime(2).hom_counts()
        assert coeq_bruteforce(toy_instance(2)).hom_counts() == expected

    @pytest.mark.parametrize("q", [2, 3])
    def test_axiom_check(self, q):
        report = gamma_double_prime_check(q)
        assert report.passed, report.counterexamples
        assert report.counts["composites"] > 0


class TestNodalModel:

    def test_window_count_over_F2(self):
        assert len(admissible_windows(toy_field(2), 3)) == 7

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_models_agree(self, q):
        report = nodal_model_check(q)
        assert report.passed, report.counterexamples
        assert report.witness["iso_classes"] == "2"
