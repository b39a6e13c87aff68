"""
Named check registry.
Sprint: S7

Every verifiable statement of the library is bound here to a stable id.
A registered check runs one or more library-level checks (over the rings
listed in its descriptor) and folds their reports into a single Report
whose check_id is the registry id.

Usage:
    from src.checks.registry import list_checks, resolve, run_check

    for descriptor in list_checks("sigma"):
        print(descriptor.id, descriptor.anchor)
    report = run_check("B-p2-over-p", seed=7)
"""

from __future__ import annotations

import fnmatch
import logging
from dataclasses import dataclass
from typing import Callable, Literal, Optional, Sequence

from src.categories import (
    Arrow,
    FinCategory,
    Functor,
    coeq_crosscheck,
    gamma_double_prime_check,
    lax_colimit_instance,
    nodal_model_check,
    toy_instance,
)
from src.checks.tally import Tally, use_seed
from src.errors import UnknownCheckError
from src.models.schemas import CheckDescriptor, CheckModule, Report
from src.prisms import (
    cyclotomic_tower_check,
    delta_laws_check,
    distinguished_check,
    economic_consistency,
    joyal_split_check,
    lubin_tate_teichmuller_check,
    make_prism,
    q_power_action_check,
)
from src.rings import Ring, make_ring
from src.sharp import (
    annihilator_check,
    coassociativity_check,
    divided_power_coordinates_check,
    module_action_check,
    not_additive_check,
    quasi_ideal_check,
    rewriting_confluence_check,
    unit_product_identity_check,
    unit_splitting_check,
)
from src.sigma import (
    action_check,
    char_p_identity_suite,
    contracting_check,
    degeneracy_check,
    divides_primitive_check,
    f_prime_check,
    frobenius_primitivity_check,
    group_law_check,
    j_plus_law_check,
    locus_check,
    module_identity_check,
    orbit_normalize_check,
    orbit_primitivity_check,
    perfect_normal_form_check,
    primitive_times_unit_check,
    rescale_check,
    transport_check,
    unit_to_one_check,
    xi_quasi_ideal_check,
)
from src.witt import (
    check_pi_F_hom,
    check_teichmuller_homs,
    dwork_condition_p2,
    ring_laws_check,
    strategy_equivalence_check,
    structural_identities_check,
    unit_criterion_check,
)

logger = logging.getLogger(__name__)

CheckBody = Callable[[Tally], None]


@dataclass(frozen=True)
class RegisteredCheck:
    descriptor: CheckDescriptor
    body: CheckBody


_REGISTRY: dict[str, RegisteredCheck] = {}


def register(
    check_id: str,
    anchor: str,
    module: CheckModule,
    rings: Sequence[str] = (),
    mode: Literal["exhaustive", "sampled"] = "exhaustive",
    sample_count: Optional[int] = None,
) -> Callable[[CheckBody], CheckBody]:
    """Decorator binding a check body to a registry id."""

    def decorator(body: CheckBody) -> CheckBody:
        if check_id in _REGISTRY:
            raise ValueError(f"duplicate check id {check_id!r}")
        descriptor = CheckDescriptor(
            id=check_id,
            anchor=anchor,
            module=module,
            rings=list(rings),
            mode=mode,
            sample_count=sample_count,
            description=(body.__doc__ or "").strip(),
        )
        _REGISTRY[check_id] = RegisteredCheck(descriptor, body)
        return body

    return decorator


def _ring(spec: str) -> Ring:
    return make_ring(spec)


def _merge_each(tally: Tally, reports: Sequence[Report]) -> None:
    for sub in reports:
        tally.merge(sub)
        tally.count("subchecks")


# ---------------------------------------------------------------------------
# witt
# ---------------------------------------------------------------------------

@register("W-ring-laws", "W_n(R) is a commutative ring", "witt", ["Zmod(3)", "Zmod(2)"])
def _w_ring_laws(tally: Tally) -> None:
    """Associativity, commutativity and distributivity on W_2(F_3) and W_3(F_2), all triples."""
    _merge_each(tally, [ring_laws_check(_ring("Zmod(3)"), 2), ring_laws_check(_ring("Zmod(2)"), 3)])


@register("W-strategy-equivalence", "ghost and polynomial arithmetic agree", "witt",
          ["Zmod(3)", "Zmod(2)", "Zmod(3^4)[t]/(t^3)"], mode="sampled", sample_count=1000)
def _w_strategy(tally: Tally) -> None:
    """add, mul, neg and F agree across strategies; W_4(Z/81[t]/t^3) is sampled."""
    _merge_each(tally, [
        strategy_equivalence_check(_ring("Zmod(3)"), 2),
        strategy_equivalence_check(_ring("Zmod(2)"), 3),
        strategy_equivalence_check(_ring("Zmod(3^4)[t]/(t^3)"), 4, sample_count=1000),
    ])


@register("W-structural-identities", "FV = p, V(x)y = V(xF(y)), F[a] = [a^p], VF = p in char p", "witt",
          ["Zmod(2)", "Zmod(2^2)"])
def _w_structural(tally: Tally) -> None:
    """Exhaustive on W_3(F_2) and W_2(Z/4)."""
    _merge_each(tally, [
        structural_identities_check(_ring("Zmod(2)"), 3),
        structural_identities_check(_ring("Zmod(2^2)"), 2),
    ])


@register("L-invertible-in-W", "x is a unit of W(R) iff x_0 is a unit of R", "witt",
          ["Zmod(2^2)", "Zmod(2)"])
def _l_invertible(tally: Tally) -> None:
    """Unit criterion exhaustive on W_2(Z/4) and W_3(F_2)."""
    _merge_each(tally, [
        unit_criterion_check(_ring("Zmod(2^2)"), 2),
        unit_criterion_check(_ring("Zmod(2)"), 3),
    ])


@register("B-p2-over-p", "[p^2]/p exists: p^{2p^i-1} satisfies Dwork's congruences", "witt",
          ["Zmod(2^6)", "Zmod(3^6)"])
def _b_p2_over_p(tally: Tally) -> None:
    """For p ∈ {2, 3} and n ≤ 4 the lift a has p·a = [p^2] in W_n(Z/p^6)."""
    for p in (2, 3):
        for n in range(1, 5):
            sub = dwork_condition_p2(p, n, K=6)
            tally.merge(sub)
            tally.note(f"a[p={p},n={n}]", sub.witness.get("a", ""))
    tally.witness.pop("a", None)
    tally.witness.pop("ring", None)


@register("W-pi-F-hom", "π_n ∘ F^m is a ring homomorphism", "witt", ["Zmod(2)", "Zmod(3)"])
def _w_pi_f(tally: Tally) -> None:
    """(m, n) ∈ {(1,1), (2,1), (1,2)} over F_2 and F_3, all pairs."""
    for spec in ("Zmod(2)", "Zmod(3)"):
        _merge_each(tally, [check_pi_F_hom(m, n, _ring(spec)) for m, n in ((1, 1), (2, 1), (1, 2))])


@register("W-teichmuller-homs", "λ ↦ [λ^N] is multiplicative, additive mod p iff N is a p-power", "witt",
          ["GF(3^2)"])
def _w_teichmuller(tally: Tally) -> None:
    """N ∈ {2, 3} into W_2(F_9)."""
    _merge_each(tally, [check_teichmuller_homs(2, N, _ring("GF(3^2)")) for N in (2, 3)])


# ---------------------------------------------------------------------------
# sharp
# ---------------------------------------------------------------------------

@register("L-not-additive", "u_n is not primitive: the cross term of Δ(u_n) has content 1", "sharp")
def _l_not_additive(tally: Tally) -> None:
    """(p, n) ∈ {(2,1), (2,2), (3,1), (3,2)}."""
    _merge_each(tally, [not_additive_check(p, n) for p, n in ((2, 1), (2, 2), (3, 1), (3, 2))])


@register("H-coassociativity", "Δ on the divided-power algebra is coassociative", "sharp")
def _h_coassociativity(tally: Tally) -> None:
    """Symbolic, (p, n) ∈ {(2,2), (2,3), (3,2)}."""
    _merge_each(tally, [coassociativity_check(p, n) for p, n in ((2, 2), (2, 3), (3, 2))])


@register("H-rewriting-confluence", "the divided-power rewriting system is confluent", "sharp")
def _h_confluence(tally: Tally) -> None:
    """p ∈ {2, 3}."""
    _merge_each(tally, [rewriting_confluence_check(p) for p in (2, 3)])


@register("S-unit-product", "(1+Vx)(1+Vy) = 1 + V(x + y + VF(xy)) in char p", "sharp",
          ["Zmod(2)", "Zmod(3)", "Zmod(3)[t]/(t^2)"])
def _s_unit_product(tally: Tally) -> None:
    """Exhaustive in W_3."""
    _merge_each(tally, [unit_product_identity_check(_ring(s), 3)
                        for s in ("Zmod(2)", "Zmod(3)", "Zmod(3)[t]/(t^2)")])


@register("S-unit-splitting", "mod p, Ker F ⋊ μ_p splits into the units of W", "sharp",
          ["Zmod(2)[t]/(t^2)"])
def _s_unit_splitting(tally: Tally) -> None:
    """The splitting is injective and multiplicative."""
    _merge_each(tally, [unit_splitting_check(_ring("Zmod(2)[t]/(t^2)"), 1)])


@register("S-annihilator", "V(1)·Ker F = 0 on W^♯", "sharp", ["Zmod(2)", "Zmod(2^2)"])
def _s_annihilator(tally: Tally) -> None:
    """Exhaustive on W_3(F_2) and W_2(Z/4)."""
    _merge_each(tally, [annihilator_check(_ring("Zmod(2)"), 3), annihilator_check(_ring("Zmod(2^2)"), 2)])


@register("S-module-action", "W acts on Ker F through [x_0]", "sharp",
          ["Zmod(2)", "Zmod(2^2)", "Zmod(3)[t]/(t^2)"])
def _s_module_action(tally: Tally) -> None:
    _merge_each(tally, [
        module_action_check(_ring("Zmod(2)"), 2),
        module_action_check(_ring("Zmod(2^2)"), 1),
        module_action_check(_ring("Zmod(3)[t]/(t^2)"), 1),
    ])


@register("S-quasi-ideal", "W^♯ → W is a quasi-ideal: d(x)·y = d(y)·x", "sharp", ["Zmod(2)"])
def _s_quasi_ideal(tally: Tally) -> None:
    _merge_each(tally, [quasi_ideal_check("sharp", _ring("Zmod(2)"), 3)])


@register("S-dp-coordinates", "Joyal coordinates of Ker F are divided-power coordinates", "sharp",
          ["Zmod(2^3)", "Zmod(2)[t]/(t^2)", "Zmod(3^2)", "Zmod(3)[t]/(t^2)"])
def _s_dp_coordinates(tally: Tally) -> None:
    _merge_each(tally, [
        divided_power_coordinates_check(_ring("Zmod(2^3)"), 2),
        divided_power_coordinates_check(_ring("Zmod(2)[t]/(t^2)"), 2),
        divided_power_coordinates_check(_ring("Zmod(3^2)"), 1),
        divided_power_coordinates_check(_ring("Zmod(3)[t]/(t^2)"), 1),
    ])


# ---------------------------------------------------------------------------
# sigma: primitive vectors
# ---------------------------------------------------------------------------

@register("L-contracting-1", "a primitive x has F^n(x) = p·u with u a unit", "sigma",
          ["Zmod(2^2)", "Zmod(2^3)"])
def _l_contracting_1(tally: Tally) -> None:
    """contract_to_p on every primitive vector of W_4(Z/4) and W_4(Z/8)."""
    _merge_each(tally, [contracting_check(_ring("Zmod(2^2)"), 4), contracting_check(_ring("Zmod(2^3)"), 4)])


@register("L-contracting-2", "a unit u with pu = p has F^n(u) = 1", "sigma",
          ["Zmod(2^2)", "Zmod(2)", "Zmod(3^2)"])
def _l_contracting_2(tally: Tally) -> None:
    """unit_to_one on W_3(Z/4), W_3(F_2) and W_2(Z/9)."""
    _merge_each(tally, [
        unit_to_one_check(_ring("Zmod(2^2)"), 3),
        unit_to_one_check(_ring("Zmod(2)"), 3),
        unit_to_one_check(_ring("Zmod(3^2)"), 2),
    ])


@register("P-frobenius-primitivity", "F preserves primitivity", "sigma",
          ["Zmod(2^2)", "Zmod(2)[t]/(t^2)", "Zmod(3)"])
def _p_frobenius(tally: Tally) -> None:
    _merge_each(tally, [frobenius_primitivity_check(_ring(s), 2)
                        for s in ("Zmod(2^2)", "Zmod(2)[t]/(t^2)", "Zmod(3)")])


@register("P-primitive-times-unit", "primitive times unit is primitive", "sigma", ["Zmod(2^2)"])
def _p_times_unit(tally: Tally) -> None:
    _merge_each(tally, [primitive_times_unit_check(_ring("Zmod(2^2)"), 2)])


@register("P-divides-primitive", "αβ primitive with β primitive forces α to be a unit", "sigma",
          ["Zmod(2)", "Zmod(2) x Zmod(2)", "GF(2^2)"])
def _p_divides(tally: Tally) -> None:
    _merge_each(tally, [divides_primitive_check(_ring(s), 2)
                        for s in ("Zmod(2)", "Zmod(2) x Zmod(2)", "GF(2^2)")])


@register("P-orbit-normalize", "every primitive vector is a unit multiple of a normal form", "sigma",
          ["Zmod(2^3)", "Zmod(3^3)", "Zmod(2^4)"])
def _p_orbit_normalize(tally: Tally) -> None:
    _merge_each(tally, [
        orbit_normalize_check(_ring("Zmod(2^3)"), 3),
        orbit_normalize_check(_ring("Zmod(3^3)"), 2),
        orbit_normalize_check(_ring("Zmod(2^4)"), 2),
    ])


@register("P-perfect-normal-form", "over a perfect field a primitive x is u·V(1) for exactly one unit u",
          "sigma", ["Zmod(2)", "GF(2^2)", "Zmod(3)"])
def _p_perfect(tally: Tally) -> None:
    """Exhaustive on W_3(F_q), q ∈ {2, 3, 4}."""
    _merge_each(tally, [perfect_normal_form_check(_ring(s), 3) for s in ("Zmod(2)", "GF(2^2)", "Zmod(3)")])


@register("P-degeneracy", "primitive vectors degenerate to V(1) mod nilpotents", "sigma",
          ["Zmod(2)", "Zmod(2^2)", "Zmod(3^2)"])
def _p_degeneracy(tally: Tally) -> None:
    _merge_each(tally, [
        degeneracy_check(_ring("Zmod(2)"), 2),
        degeneracy_check(_ring("Zmod(2^2)"), 2),
        degeneracy_check(_ring("Zmod(3^2)"), 1),
    ])


# ---------------------------------------------------------------------------
# sigma: the presentation of Σ'
# ---------------------------------------------------------------------------

_SMALL_W2 = ("Zmod(2^2)", "Zmod(2)[t]/(t^2)")


@register("G-group-law", "the structure group is a group", "sigma",
          ["Zmod(2)", "Zmod(3)", *_SMALL_W2])
def _g_group_law(tally: Tally) -> None:
    _merge_each(tally, [group_law_check(_ring(s), 2) for s in ("Zmod(2)", "Zmod(3)", *_SMALL_W2)])


@register("G-action", "the group action is an action and preserves primitivity", "sigma", list(_SMALL_W2))
def _g_action(tally: Tally) -> None:
    """Every economic point over W_2(Z/4) and W_2(F_2[t]/t^2) with every pair of G elements."""
    _merge_each(tally, [action_check(_ring(s), 2) for s in _SMALL_W2])


@register("G-orbit-primitivity", "orbits of primitive points stay primitive", "sigma",
          ["Zmod(2)", *_SMALL_W2])
def _g_orbit(tally: Tally) -> None:
    _merge_each(tally, [orbit_primitivity_check(_ring(s), 2) for s in ("Zmod(2)", *_SMALL_W2)])


@register("G-rescale", "re-trivializing by a unit fixes the orbit", "sigma", ["Zmod(3)", "Zmod(2^2)"])
def _g_rescale(tally: Tally) -> None:
    _merge_each(tally, [rescale_check(_ring(s), 2) for s in ("Zmod(3)", "Zmod(2^2)")])


@register("E-F-vx-gamma-Vy", "F([v_-]x + V(γy)) = y·([v_-^p]ζ + pγ) on module points", "sigma",
          ["Zmod(2)", "Zmod(2^2)", "Zmod(2)[t]/(t^2)"])
def _e_f_vx(tally: Tally) -> None:
    """Every module point of every point of Σ' over W_2(R)."""
    _merge_each(tally, [module_identity_check(_ring(s), 2)
                        for s in ("Zmod(2)", "Zmod(2^2)", "Zmod(2)[t]/(t^2)")])


@register("E-zeta-tilde-zeta", "ξ transforms correctly under transport and rescaling", "sigma",
          ["Zmod(2^2)"], mode="sampled", sample_count=500)
def _e_zeta(tally: Tally) -> None:
    _merge_each(tally, [transport_check(_ring("Zmod(2^2)"), 2, samples=500)])


@register("S-xi-quasi-ideal", "ξ is a quasi-ideal: ξ(m)·m' = ξ(m')·m", "sigma", ["Zmod(2^2)", "Zmod(2)"])
def _s_xi(tally: Tally) -> None:
    _merge_each(tally, [
        xi_quasi_ideal_check(_ring("Zmod(2^2)"), 2),
        quasi_ideal_check("sigma", _ring("Zmod(2)"), 2),
    ])


@register("M-f-prime", "F' ∘ j_- = id on primitive vectors", "sigma",
          ["Zmod(2^2)", "Zmod(3)[t]/(t^2)"], mode="sampled", sample_count=50)
def _m_f_prime(tally: Tally) -> None:
    _merge_each(tally, [f_prime_check(_ring(s), 2, samples=50) for s in ("Zmod(2^2)", "Zmod(3)[t]/(t^2)")])


@register("M-j-plus", "j_+ respects the group law", "sigma", ["Zmod(2^2)", "Zmod(3^2)"],
          mode="sampled", sample_count=50)
def _m_j_plus(tally: Tally) -> None:
    _merge_each(tally, [j_plus_law_check(_ring(s), 2, samples=50) for s in ("Zmod(2^2)", "Zmod(3^2)")])


@register("M-locus", "the Σ_+ and Σ_- loci never meet", "sigma",
          [*_SMALL_W2, "Zmod(2)", "Zmod(2) x Zmod(2)"])
def _m_locus(tally: Tally) -> None:
    _merge_each(tally, [locus_check(_ring(s), 2) for s in (*_SMALL_W2, "Zmod(2)", "Zmod(2) x Zmod(2)")])


@register("E-2affine-linear", "in char p the action on [ζ_0] is affine when v_-^p ζ_0 = 0", "sigma",
          ["Zmod(2)", "Zmod(3)[t]/(t^2)"])
def _e_affine(tally: Tally) -> None:
    _merge_each(tally, [
        char_p_identity_suite(_ring("Zmod(2)"), 3),
        char_p_identity_suite(_ring("Zmod(3)[t]/(t^2)"), 2, samples=40),
    ])


# ---------------------------------------------------------------------------
# categories
# ---------------------------------------------------------------------------

def _cat(name: str, objects: list[str], arrows: Sequence[tuple[str, str, str]] = ()) -> FinCategory:
    ids = {o: f"1_{o}" for o in objects}
    every = [Arrow(ids[o], o, o) for o in objects] + [Arrow(*a) for a in arrows]
    table = {}
    for a in every:
        table[(a.id, ids[a.src])] = a.id
        table[(ids[a.dst], a.id)] = a.id
    return FinCategory(objects, every, table, ids, name=name)


def _arrow_instance():
    A = _cat("A", ["a1", "a2"], [("alpha", "a1", "a2")])
    B = _cat("B", ["b"])
    psi = Functor(A, B, {"a1": "b", "a2": "b"}, {"1_a1": "1_b", "1_a2": "1_b", "alpha": "1_b"}, name="Ψ")
    j_plus = Functor(B, A, {"b": "a2"}, {"1_b": "1_a2"}, name="j_+")
    return lax_colimit_instance(A, B, psi, j_plus, name="arrow")


@register("C-coeq-closed-form", "the brute-force coequalizer matches the closed-form hom-sets",
          "categories", ["GF(2)"])
def _c_coeq(tally: Tally) -> None:
    """Toy instance over F_2, every pair of objects, degrees -1..3."""
    _merge_each(tally, [coeq_crosscheck(toy_instance(2))])


@register("C-lax-colimit", "a left-lax colimit is a coequalizer instance with the same closed form",
          "categories")
def _c_lax(tally: Tally) -> None:
    _merge_each(tally, [coeq_crosscheck(_arrow_instance())])


@register("C-gamma-double-prime", "Γ''(F_q) is a graded category and matches the coequalizer", "categories",
          ["GF(2)", "GF(3)"])
def _c_gamma(tally: Tally) -> None:
    _merge_each(tally, [gamma_double_prime_check(q) for q in (2, 3)])


@register("C-nodal-model", "iso classes of Γ'' are the points of the nodal curve", "categories",
          ["GF(2)", "GF(3)", "GF(2^2)"])
def _c_nodal(tally: Tally) -> None:
    _merge_each(tally, [nodal_model_check(q) for q in (2, 3, 4)])


# ---------------------------------------------------------------------------
# prisms
# ---------------------------------------------------------------------------

@register("R-delta-laws", "δ(q) = (φ(q) - q^p)/p satisfies the δ-ring laws", "prisms",
          ["Zmod(2^5)[t]/(t^4)"], mode="sampled", sample_count=200)
def _r_delta(tally: Tally) -> None:
    """q-de Rham, p = 2, K = 5, M = 4."""
    _merge_each(tally, [delta_laws_check(make_prism("q_de_rham", 2, 5, 4), sample_count=200)])


@register("R-joyal-split", "the Joyal splitting is a ring map with F ∘ f = f ∘ φ", "prisms",
          ["Zmod(2^4)[t]/(t^4)", "Zmod(3^4)[t]/(t^4)"], mode="sampled", sample_count=15)
def _r_joyal(tally: Tally) -> None:
    _merge_each(tally, [
        joyal_split_check(make_prism("q_de_rham", 2, 4, 4), n=3, sample_count=15),
        joyal_split_check(make_prism("lubin_tate", 3, 4, 4, 1), n=3, sample_count=15),
    ])


@register("R-distinguished", "d is distinguished: f(d) maps to p·u and is primitive mod p", "prisms",
          ["Zmod(2^4)[t]/(t^4)", "Zmod(3^4)[t]/(t^4)"])
def _r_distinguished(tally: Tally) -> None:
    """q-de Rham for p ∈ {2, 3}; Lubin–Tate for u ∈ {1, 1+p}."""
    reports = [distinguished_check(make_prism("q_de_rham", p, 4, 4), n=2) for p in (2, 3)]
    reports += [distinguished_check(make_prism("lubin_tate", p, 4, 4, u), n=2)
                for p in (2, 3) for u in (1, 1 + p)]
    _merge_each(tally, reports)


@register("R-economic", "the Lubin–Tate prism restricts to the economic prism", "prisms",
          ["Zmod(2^4)[t]/(t^10)", "Zmod(3^4)[t]/(t^10)", "Zmod(5^4)[t]/(t^10)"])
def _r_economic(tally: Tally) -> None:
    _merge_each(tally, [economic_consistency(p, 1) for p in (2, 3, 5)])


@register("R-q-power", "n ↦ q^n is a Z_p-action compatible with φ", "prisms", ["Zmod(2^5)[t]/(t^4)"],
          mode="sampled", sample_count=50)
def _r_q_power(tally: Tally) -> None:
    _merge_each(tally, [q_power_action_check(make_prism("q_de_rham", 2, 5, 4), sample_count=50)])


@register("R-cyclotomic-tower", "φ^k(d) is the p^{k+1}-th cyclotomic polynomial in q", "prisms",
          ["Zmod(2^4)[t]/(t^8)"])
def _r_tower(tally: Tally) -> None:
    _merge_each(tally, [cyclotomic_tower_check(make_prism("q_de_rham", 2, 4, 8), levels=3)])


@register("R-lubin-tate-teichmuller", "Teichmüller roots of unity commute with φ_u", "prisms",
          ["Zmod(2^3)[t]/(t^5)", "Zmod(3^3)[t]/(t^5)"])
def _r_lt_teichmuller(tally: Tally) -> None:
    _merge_each(tally, [lubin_tate_teichmuller_check(make_prism("lubin_tate", p, 3, 5, 1)) for p in (2, 3)])


# ---------------------------------------------------------------------------
# Lookup and execution
# ---------------------------------------------------------------------------

def list_checks(query: Optional[str] = None) -> list[CheckDescriptor]:
    """
    Descriptors sorted by id.  A filter matching a module name selects that
    module; otherwise it is a case-insensitive substring (or glob) of the id.
    """
    descriptors = sorted((c.descriptor for c in _REGISTRY.values()), key=lambda d: d.id)
    if not query:
        return descriptors
    needle = query.lower()
    return [
        d for d in descriptors
        if d.module == needle or needle in d.id.lower() or fnmatch.fnmatch(d.id.lower(), needle)
    ]


def resolve(pattern: str) -> list[str]:
    """Ids matching an exact id or a glob, sorted; raises UnknownCheckError on no match."""
    if pattern in _REGISTRY:
        return [pattern]
    matches = sorted(cid for cid in _REGISTRY if fnmatch.fnmatchcase(cid, pattern))
    if not matches:
        raise UnknownCheckError(pattern)
    return matches


def run_check(check_id: str, seed: Optional[int] = None) -> Report:
    """Run one registered check; exceptions from the body propagate."""
    try:
        entry = _REGISTRY[check_id]
    except KeyError:
        raise UnknownCheckError(check_id) from None
    with use_seed(seed):
        tally = Tally(check_id)
        entry.body(tally)
        report = tally.report()
    logger.info("check %s: %s (%d checked, %d failed)", check_id, report.status,
                report.counts.get("checked", 0), report.counts.get("failed", 0))
    return report
