from hypothesis import given
from hypothesis import strategies as st

from ssideal.invariants import HilbertNumerator
from ssideal.koszul import koszul_differential
from ssideal.poly import PolynomialRing
from ssideal.modules import ModuleHom, free_module, hom_from_matrix
from ssideal.resolution import (FreeResolution, GradedBettiTable, prune, hilbert_numerator, minimal_free_resolution,
                                quotient_presentation, resolve_submodule)
from ssideal.submodules import ideal, image, kernel
from strategies import homogeneous_polynomials, homs

R = PolynomialRing(3)


@given(st.lists(st.integers(1, 3).flatmap(lambda d: homogeneous_polynomials(R, d)), min_size=1, max_size=3))
def test_quotient_resolutions_are_exact_and_minimal(gens):
    I = ideal(R, gens)
    if I.is_zero():
        return
    res = minimal_free_resolution(quotient_presentation(I))
    assert res.certify().ok
    assert res.is_minimal()
    assert res.length <= R.n
    assert res.hilbert_numerator() == I.quotient_numerator()


@given(homs(R))
def test_cokernel_resolutions_are_exact(f):
    res = minimal_free_resolution(f)
    assert res.certify().ok
    assert res.certify_pieces(4)
    assert res.length <= R.n


def test_koszul_resolution_of_residue_field():
    S = PolynomialRing(4)
    res = minimal_free_resolution(koszul_differential(S, 1))
    assert res.betti_table().totals() == [1, 4, 6, 4, 1]
    assert res.hilbert_numerator() == HilbertNumerator.from_list([1, -4, 6, -4, 1])


def test_pruning_removes_units():
    S = PolynomialRing(3)
    x1, x2, _ = S.gens()
    d1 = hom_from_matrix(free_module(S, [1, 1, 1]), free_module(S, [0]), [[x1, x1, x2]])
    K = kernel(d1)
    d2 = ModuleHom(free_module(S, [g.degree() for g in K.generators]), d1.source, list(K.generators))
    assert not FreeResolution([d1, d2], d1.target).is_minimal()
    maps, base = prune([d1, d2], d1.target)
    res = FreeResolution(maps, base)
    assert res.betti_table().totals() == [1, 2, 1]
    assert res.is_minimal() and res.certify().ok


def test_resolve_submodule_of_free_module():
    S = PolynomialRing(3)
    N = image(koszul_differential(S, 2))
    res = resolve_submodule(N)
    assert res.betti_table().totals() == [3, 1]


def test_betti_table_text():
    B = GradedBettiTable({(0, 0): 1, (1, 2): 3, (2, 3): 2})
    text = str(B)
    assert text.splitlines()[0].split() == ["0", "1", "2"]
    assert hilbert_numerator(B) == HilbertNumerator({0: 1, 2: -3, 3: 2})
