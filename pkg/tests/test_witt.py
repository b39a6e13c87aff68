"""
Sprint 2: Witt Vector Arithmetic Tests

Tests W_n(R) arithmetic:
  - worked examples for add / mul / F / V / Teichmüller / inversion / k·x
  - universal polynomials (shape, bound, memoization)
  - strategy equivalence (polynomial vs ghost transport)
  - structural identities: FV = p, VF = p in char p, projection formula
  - degree bookkeeping and the π_n ∘ F^m homomorphism check

Run:  PYTHONPATH=. .venv/Scripts/pytest tests/test_witt.py -v
"""

from __future__ import annotations

import itertools
import random

import pytest

from src.errors import (
    ConsistencyError,
    DegreeError,
    IncompatibleOperandsError,
    NotAUnitError,
    SymbolicBoundError,
)
from src.rings import make_ring, zmod
from src.witt import (
    WittVector,
    check_pi_F_hom,
    check_teichmuller_homs,
    enumerate_vectors,
    frobenius,
    ghost,
    iterate_verschiebung,
    mul_int,
    random_vector,
    ring_laws_check,
    strategy_equivalence_check,
    structural_identities_check,
    teichmuller,
    teichmuller_expansion,
    unit_criterion_check,
    universal_polys,
    use_strategy,
    verschiebung,
    witt_arith,
    witt_frobenius_perfect,
    witt_invert,
)


def W(ring, *values, degree=0):
    return WittVector.from_elements(ring, values, degree)


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def F2():
    return zmod(2)


@pytest.fixture(scope="module")
def F3():
    return zmod(3)


@pytest.fixture(scope="module")
def Z4():
    return zmod(2, 2)


@pytest.fixture(scope="module")
def Z9():
    return zmod(3, 2)


# ---------------------------------------------------------------------------
# Worked examples
# ---------------------------------------------------------------------------


class TestWittArith:

    def test_one_plus_one_in_w2_z9(self, Z9):
        one = WittVector.one(Z9, 2)
        assert witt_arith("add", one, one) == W(Z9, 2, 7)

    def test_zero_is_additive_identity(self, F2):
        zero = WittVector.zero(F2, 3)
        for x in enumerate_vectors(F2, 3):
            assert witt_arith("add", x, zero) == x

    def test_teichmuller_product(self, Z4):
        t3 = teichmuller(Z4.element(3), 2)
        assert witt_arith("mul", t3, t3) == W(Z4, 1, 0)

    def test_negation_is_additive_inverse(self, F2, Z9):
        for ring, n in ((F2, 3), (Z9, 2)):
            zero = WittVector.zero(ring, n)
            for x in enumerate_vectors(ring, n):
                assert x + (-x) == zero, f"{x} in W_{n}({ring})"

    def test_sub(self, Z9):
        x, y = W(Z9, 4, 5), W(Z9, 7, 1)
        assert (x - y) + y == x

    def test_operators_match_witt_arith(self, Z4):
        x, y = W(Z4, 1, 2), W(Z4, 3, 3)
        assert x * y == witt_arith("mul", x, y)
        assert x + y == witt_arith("add", x, y)

    def test_ring_mismatch(self, Z4, Z9):
        with pytest.raises(IncompatibleOperandsError):
            witt_arith("add", W(Z4, 1, 0), W(Z9, 1, 0))

    def test_length_mismatch(self, Z4):
        with pytest.raises(IncompatibleOperandsError):
            witt_arith("mul", W(Z4, 1, 0), W(Z4, 1, 0, 0))

    def test_ring_axioms_w2_f3(self, F3):
        vs = list(enumerate_vectors(F3, 2))
        rng = random.Random(7)
        for _ in range(200):
            x, y, z = (rng.choice(vs) for _ in range(3))
            assert (x + y) + z == x + (y + z)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z


class TestFrobeniusVerschiebung:

    def test_frobenius_w2_z4(self, Z4):
        assert frobenius(W(Z4, 0, 1)) == W(Z4, 2)

    def test_frobenius_of_teichmuller(self, Z9):
        for a in Z9.elements():
            assert frobenius(teichmuller(a, 3)) == teichmuller(a ** 3, 2)

    def test_char_p_frobenius_is_componentwise(self, F2):
        for x in enumerate_vectors(F2, 3):
            assert frobenius(x) == WittVector(F2, (x.comps[0] ** 2 % 2, x.comps[1] ** 2 % 2))

    def test_frobenius_needs_length_two(self, F2):
        with pytest.raises(IncompatibleOperandsError):
            frobenius(W(F2, 1))

    def test_verschiebung_of_one(self, F2):
        assert verschiebung(WittVector.one(F2, 1)) == W(F2, 0, 1)

    def test_FV_is_p(self, Z4):
        for x in enumerate_vectors(Z4, 2):
            assert frobenius(verschiebung(x)) == mul_int(2, x), f"x={x}"

    def test_VF_is_p_in_char_p(self, F2):
        for x in enumerate_vectors(F2, 3):
            assert verschiebung(frobenius(x)) == mul_int(2, x), f"x={x}"

    @pytest.mark.parametrize("spec,n", [("Zmod(2)", 3), ("Zmod(2^2)", 2)])
    def test_projection_formula(self, spec, n):
        R = make_ring(spec)
        for x in enumerate_vectors(R, n - 1):
            for y in enumerate_vectors(R, n):
                lhs = verschiebung(x) * y
                rhs = verschiebung(x * frobenius(y))
                assert lhs == rhs, f"x={x} y={y}"

    def test_power_of_verschiebung(self, F2):
        for x in enumerate_vectors(F2, 2):
            vx = verschiebung(x)
            assert vx * vx == mul_int(2, verschiebung(x * x))

    def test_frobenius_perfect_keeps_length(self, F2):
        x = W(F2, 1, 0, 1)
        assert witt_frobenius_perfect(x) == x

    def test_frobenius_perfect_needs_char_p(self, Z4):
        with pytest.raises(IncompatibleOperandsError):
            witt_frobenius_perfect(W(Z4, 1, 1))


class TestTeichmuller:

    def test_teichmuller_components(self):
        R = zmod(2, 3)
        assert teichmuller(R.element(2), 3) == W(R, 2, 0, 0)

    def test_multiplicative_over_z9(self, Z9):
        for a, b in itertools.product(list(Z9.elements()), repeat=2):
            assert teichmuller(a, 2) * teichmuller(b, 2) == teichmuller(a * b, 2)

    def test_ghost_of_teichmuller(self):
        R = make_ring("Zmod(2^3)[t]/(t^4)")
        q = 1 + R.gen
        g = ghost(teichmuller(q, 3))
        assert g.elements == (q, q ** 2, q ** 4)

    def test_expansion_in_char_p(self, F2):
        for lams in itertools.product(list(F2.elements()), repeat=3):
            lhs = teichmuller_expansion(list(lams))
            rhs = WittVector.zero(F2, 3)
            for i, lam in enumerate(lams):
                rhs = rhs + iterate_verschiebung(teichmuller(lam ** (2 ** i), 3 - i), i)
            assert lhs == rhs, f"digits {lams}"

    def test_teichmuller_hom_check(self):
        gf9 = make_ring("GF(3^2)")
        squared = check_teichmuller_homs(2, 2, gf9)
        assert squared.status == "pass"
        assert squared.witness["pi1_additive"] == "False"
        cubed = check_teichmuller_homs(2, 3, gf9)
        assert cubed.status == "pass"
        assert cubed.witness["pi1_additive"] == "True"


class TestInversionAndMultiples:

    def test_invert_w2_z4(self, Z4):
        x = W(Z4, 3, 1)
        y = witt_invert(x)
        assert x * y == WittVector.one(Z4, 2)
        inverses = [z for z in enumerate_vectors(Z4, 2) if x * z == WittVector.one(Z4, 2)]
        assert inverses == [y]

    def test_invert_teichmuller(self, Z9):
        for a in Z9.elements():
            if a.is_unit():
                assert witt_invert(teichmuller(a, 3)) == teichmuller(a.inverse(), 3)

    def test_one_plus_v_is_invertible(self, F2):
        one = WittVector.one(F2, 3)
        for z in enumerate_vectors(F2, 2):
            x = one + verschiebung(z)
            assert x * witt_invert(x) == one

    def test_non_unit_raises(self, Z4):
        with pytest.raises(NotAUnitError):
            witt_invert(W(Z4, 2, 1))

    def test_unit_criterion_exhaustive(self, Z4):
        vs = list(enumerate_vectors(Z4, 2))
        one = WittVector.one(Z4, 2)
        for x in vs:
            has_inverse = any(x * y == one for y in vs)
            assert has_inverse == x.is_unit(), f"x={x}"

    def test_inverse_negates_degree(self, Z9):
        x = W(Z9, 2, 1, degree=3)
        assert witt_invert(x).degree == -3

    def test_two_times_one(self, F2):
        assert mul_int(2, WittVector.one(F2, 2)) == W(F2, 0, 1)

    def test_zero_times(self, Z9):
        x = W(Z9, 4, 4)
        assert mul_int(0, x) == WittVector.zero(Z9, 2)

    def test_p_times_is_VF_over_f3(self, F3):
        for x in enumerate_vectors(F3, 2):
            assert mul_int(3, x) == verschiebung(frobenius(x))

    def test_negative_multiple(self, Z9):
        x = W(Z9, 4, 1)
        assert mul_int(-2, x) + mul_int(2, x) == WittVector.zero(Z9, 2)


# ---------------------------------------------------------------------------
# Degrees
# ---------------------------------------------------------------------------


class TestDegrees:

    def test_mul_adds_degrees(self, Z9):
        assert (W(Z9, 1, 1, degree=2) * W(Z9, 2, 0, degree=-1)).degree == 1

    def test_add_requires_equal_degrees(self, Z9):
        with pytest.raises(IncompatibleOperandsError):
            W(Z9, 1, 1, degree=1) + W(Z9, 1, 1)

    def test_frobenius_multiplies_degree(self, Z9):
        assert frobenius(W(Z9, 1, 1, degree=2)).degree == 6

    def test_verschiebung_divides_degree(self, Z9):
        assert verschiebung(W(Z9, 1, degree=3)).degree == 1

    def test_verschiebung_rejects_bad_degree(self, Z4):
        with pytest.raises(DegreeError):
            verschiebung(W(Z4, 1, degree=1))


# ---------------------------------------------------------------------------
# Universal polynomials
# ---------------------------------------------------------------------------


class TestUniversalPolys:

    def test_s0(self):
        fam = universal_polys(2, 2, "S")
        x0, x1, y0, y1 = fam.ring.gens
        assert fam.polynomials[0] == x0 + y0

    def test_s1_for_p2(self):
        fam = universal_polys(2, 2, "S")
        x0, x1, y0, y1 = fam.ring.gens
        # over Z the carry term enters with a minus sign
        assert fam.polynomials[1] == x1 + y1 - x0 * y0

    @pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
    def test_sum_family_builds(self, p, n):
        fam = universal_polys(p, n, "S")
        gens = fam.ring.gens
        xs, ys = gens[:n], gens[n:]
        carry = (xs[0] ** p + ys[0] ** p - (xs[0] + ys[0]) ** p).exquo(fam.ring(p))
        assert fam.polynomials[1] == xs[1] + ys[1] + carry
        if p == 2:
            assert fam.polynomials[1] == xs[1] + ys[1] - xs[0] * ys[0]

        def w(v, i):
            return sum(p ** j * v[j] ** (p ** (i - j)) for j in range(i + 1))

        for i in range(n):
            assert w(fam.polynomials, i) == w(xs, i) + w(ys, i)

    def test_f0(self):
        for p in (2, 3, 5):
            fam = universal_polys(p, 1, "F")
            x0, x1 = fam.ring.gens
            assert fam.polynomials[0] == x0 ** p + p * x1

    def test_negation_p2_is_not_componentwise(self):
        fam = universal_polys(2, 2, "N")
        x0, x1 = fam.ring.gens
        assert fam.polynomials[1] != -x1

    def test_memoized(self):
        assert universal_polys(3, 2, "P") is universal_polys(3, 2, "P")

    def test_symbolic_bound(self):
        with pytest.raises(SymbolicBoundError):
            universal_polys(2, 9, "S")


# ---------------------------------------------------------------------------
# Strategies
# ---------------------------------------------------------------------------


class TestStrategies:

    @pytest.mark.parametrize("spec,n", [("Zmod(2)", 3), ("Zmod(3)", 2), ("Zmod(2^2)", 2)])
    def test_differential_exhaustive(self, spec, n):
        R = make_ring(spec)
        vs = list(enumerate_vectors(R, n))
        with use_strategy("differential"):
            for x, y in itertools.product(vs, repeat=2):
                witt_arith("add", x, y)
                witt_arith("mul", x, y)
            for x in vs:
                witt_arith("neg", x)
                frobenius(x)

    def test_differential_sampled_w4(self):
        R = make_ring("Zmod(3^4)[t]/(t^3)")
        rng = random.Random(0xD15C)
        with use_strategy("differential"):
            for _ in range(40):
                x, y = random_vector(R, 4, rng), random_vector(R, 4, rng)
                witt_arith("add", x, y)
                witt_arith("mul", x, y)
                frobenius(x)

    def test_ghost_strategy_on_galois_ring(self):
        R = make_ring("GR(2^2,2)")
        rng = random.Random(3)
        for _ in range(20):
            x, y = random_vector(R, 3, rng), random_vector(R, 3, rng)
            with use_strategy("ghost"):
                g = x * y
            with use_strategy("polynomial"):
                assert g == x * y

    def test_disagreement_raises(self, monkeypatch, Z4):
        import src.witt.arith as arith

        monkeypatch.setattr(arith, "_ghost_op", lambda op, x, y: tuple(x.comps))
        with use_strategy("differential"):
            with pytest.raises(ConsistencyError):
                witt_arith("add", W(Z4, 1, 1), W(Z4, 1, 0))

    def test_strategy_from_settings(self, monkeypatch, Z9):
        from src.witt import current_strategy

        monkeypatch.setenv("WITTFORGE_STRATEGY", "ghost")
        assert current_strategy() == "ghost"
        with use_strategy("polynomial"):
            assert current_strategy() == "polynomial"


# ---------------------------------------------------------------------------
# π_n ∘ F^m
# ---------------------------------------------------------------------------


class TestPiFHom:

    def test_m1_n1_f2(self, F2):
        report = check_pi_F_hom(1, 1, F2)
        assert report.status == "pass", report.counterexamples
        assert report.counts["pairs"] == 16

    def test_m0_is_identity(self, F2):
        assert check_pi_F_hom(0, 2, F2).status == "pass"

    def test_m2_n1_f3(self, F3):
        assert check_pi_F_hom(2, 1, F3).status == "pass"


# ---------------------------------------------------------------------------
# Law reports
# ---------------------------------------------------------------------------


class TestLawChecks:

    @pytest.mark.parametrize("spec,n", [("Zmod(3)", 2), ("Zmod(2)", 3)])
    def test_ring_laws_exhaustive(self, spec, n):
        report = ring_laws_check(make_ring(spec), n)
        assert report.passed, report.counterexamples
        assert report.witness["mode"] == "exhaustive"

    def test_strategy_equivalence_sampled(self):
        report = strategy_equivalence_check(make_ring("Zmod(3^4)[t]/(t^3)"), 4, sample_count=25)
        assert report.passed, report.counterexamples
        assert report.witness["mode"] == "sampled"

    @pytest.mark.parametrize("spec,n", [("Zmod(2)", 3), ("Zmod(2^2)", 2)])
    def test_structural_identities(self, spec, n):
        report = structural_identities_check(make_ring(spec), n)
        assert report.passed, report.counterexamples

    def test_unit_criterion(self, Z4):
        report = unit_criterion_check(Z4, 2)
        assert report.passed, report.counterexamples
        assert report.counts["units"] == 8
