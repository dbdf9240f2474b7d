import pytest
from hypothesis import given
from hypothesis import strategies as st

from ssideal.bourbaki import extract_ideal
from ssideal.invariants import HilbertNumerator
from ssideal.cohomology import (GradedHilbertFunction, approximation_presentation,
                                cohomology_from_ext, ext_piece_dimension, ext_profile,
                                local_cohomology_profile, single_spot_check, theorem_main1_check)
from ssideal.koszul import koszul_differential
from ssideal.modules import dual_hom, dual_module, free_module, zero_hom
from ssideal.poly import PolynomialRing, parse_polynomial
from ssideal.resolution import quotient_presentation
from ssideal.submodules import ideal, image, kernel

R6 = PolynomialRing(6)
NAMES = ["example1", "example2", "example3", "trivial_example1"]


@given(st.dictionaries(st.integers(-5, 5), st.integers(1, 4)))
def test_matlis_reversal_is_an_involution(support):
    h = GradedHilbertFunction.finite(support)
    assert h.matlis_dual().matlis_dual() == h


def test_example1_ideal_is_single_spot(example_sequences):
    _, _, seq, _ = example_sequences["example1"]
    prof = local_cohomology_profile(extract_ideal(seq))
    assert prof.dim == 3 and prof.depth == 1 and prof.consistent
    verdict = single_spot_check(prof)
    assert verdict.single_spot and verdict.t == 1
    assert verdict.N.total_dimension() == 1 and len(verdict.N.support) == 1


def test_example3_type_is_computed(example_sequences):
    _, _, seq, _ = example_sequences["example3"]
    verdict = single_spot_check(extract_ideal(seq))
    assert verdict.single_spot and verdict.t == 0
    assert verdict.N.total_dimension() == 1


@pytest.mark.parametrize("name", NAMES)
def test_local_duality_consistency(example_sequences, name):
    _, _, seq, _ = example_sequences[name]
    I = extract_ideal(seq).submodule()
    prof = ext_profile(quotient_presentation(I))
    assert prof.max_nonzero() == prof.projective_dimension
    assert local_cohomology_profile(I).consistent


@pytest.mark.parametrize("name", NAMES)
def test_ideal_cohomology_shifts_from_approximation_module(example_sequences, name):
    _, _, seq, _ = example_sequences[name]
    phi = seq.phi
    n = R6.n
    I_prof = local_cohomology_profile(extract_ideal(seq))
    pres = approximation_presentation(R6, phi.t, phi.d, phi.with_top)
    M_prof = cohomology_from_ext(ext_profile(pres), n)
    for i in range(0, n - 3):
        hI, hM = I_prof.per_index.get(i), M_prof.per_index[i + 1]
        if hI is None or not hI.is_finite_length:
            continue
        assert hI == hM.shift(-phi.c)


def test_cm_ideal_has_no_spot():
    I = ideal(R6, [parse_polynomial(t, R6) for t in ("x1", "x2", "x3")])
    verdict = single_spot_check(I)
    assert not verdict.single_spot and "Cohen-Macaulay" in verdict.reason


def test_skew_planes_have_a_single_spot():
    S = PolynomialRing(4)
    I = ideal(S, [parse_polynomial(t, S) for t in ("x1*x3", "x1*x4", "x2*x3", "x2*x4")])
    verdict = single_spot_check(I)
    assert verdict.single_spot and verdict.t == 1 and verdict.N.support == {0: 1}


def test_embedded_component_is_not_generalized_cm():
    S = PolynomialRing(4)
    I = ideal(S, [parse_polynomial(t, S) for t in ("x1*x3", "x1*x4", "x2*x3", "x2*x4", "x1^2")])
    verdict = single_spot_check(I)
    assert not verdict.single_spot and "finite length" in verdict.reason


def test_main1_clauses_for_E2_plus_E5():
    rep = theorem_main1_check(approximation_presentation(R6, 1), 1, GradedHilbertFunction.field())
    assert rep.ok, [c.as_dict() for c in rep.clauses if not c.ok]
    prof = ext_profile(approximation_presentation(R6, 1))
    assert prof.ext[4].total_dimension() == 1
    assert prof.ext[1].total_dimension() == 1
    assert all(prof.ext[j].is_zero for j in (2, 3, 5) if j in prof.ext)


def test_main1_for_E2_alone_with_zero_N():
    pres = approximation_presentation(R6, 1, with_top=False)
    rep = theorem_main1_check(pres, 1, GradedHilbertFunction.zero())
    assert rep.ok


def test_main1_fails_for_free_module():
    F = free_module(R6, [0])
    rep = theorem_main1_check(zero_hom(free_module(R6, []), F), 1, GradedHilbertFunction.field())
    assert not rep.clauses[0].ok


def test_omega_dual_chain_for_E2_plus_E5():
    # Ω_1(M)^* ≅ E_4 ⊕ S and F_0^*/M^* ≅ E_4 ⊕ m, so the cokernel is K
    n = 6
    res = ext_profile(approximation_presentation(R6, 1)).resolution
    omega_star = kernel(dual_hom(res.maps[1], n)).hilbert_numerator()
    m_star = kernel(dual_hom(res.maps[0], n)).hilbert_numerator()
    f0_star = HilbertNumerator()
    for a in dual_module(res.modules[0], n).twists:
        f0_star = f0_star + HilbertNumerator.monomial(a)
    E4 = image(koszul_differential(R6, 4)).hilbert_numerator()
    one = HilbertNumerator.one()
    maximal_ideal = one - HilbertNumerator.from_list([1, -6, 15, -20, 15, -6, 1])
    assert omega_star == E4 + one
    assert f0_star - m_star == E4 + maximal_ideal
    assert (omega_star - (f0_star - m_star)) == one - maximal_ideal


def test_ext_pieces_match_hilbert_route():
    prof = ext_profile(approximation_presentation(R6, 1))
    for j in (1, 4):
        for deg, dim in prof.ext[j].support.items():
            assert ext_piece_dimension(prof, j, deg) == dim
