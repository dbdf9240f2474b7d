from hypothesis import given

from ssideal.koszul import koszul_differential, koszul_module
from ssideal.modules import free_module, hom_from_matrix
from ssideal.poly import PolynomialRing, parse_polynomial
from ssideal.submodules import (Submodule, codim, contains_submodule, free_piece_dimension, ideal,
                                image, image_piece_dimension, intersect, kernel,
                                kernel_piece_dimension, krull_dimension, lift, rank_of_submodule,
                                span_piece_dimension, submodule_equal)
from strategies import homs

R = PolynomialRing(3)


@given(homs(R))
def test_kernel_is_complete_in_each_degree(f):
    K = kernel(f)
    for d in range(0, 6):
        assert K.piece_dimension(d) == kernel_piece_dimension(f, d)


@given(homs(R))
def test_kernel_lies_in_kernel(f):
    for g in kernel(f).generators:
        assert f(g).is_zero()


@given(homs(R))
def test_image_pieces_match_span(f):
    N = image(f)
    for d in range(0, 5):
        assert N.piece_dimension(d) == image_piece_dimension(f, d) == span_piece_dimension(N, d)


@given(homs(R))
def test_rank_nullity(f):
    K, N = kernel(f), image(f)
    assert rank_of_submodule(N) + (K.hilbert_rank() if not K.is_zero() else 0) == f.source.rank


@given(homs(R))
def test_lift_of_image_elements(f):
    for col in f.columns:
        pre = lift(f, col)
        assert pre is not None and f(pre) == col


def test_lift_fails_outside_image():
    F, G = free_module(R, [1]), free_module(R, [0])
    f = hom_from_matrix(F, G, [[R.var(1)]])
    assert lift(f, G.element([R.var(2)])) is None


def test_intersection_of_principal_ideals():
    x1, x2, _ = R.gens()
    A, B = ideal(R, [x1]), ideal(R, [x2])
    C = intersect(A, B)
    assert submodule_equal(C, ideal(R, [x1 * x2]))
    assert contains_submodule(A, C) and contains_submodule(B, C)


def test_koszul_kernel_is_image():
    S = PolynomialRing(4)
    for k in range(1, 4):
        K = kernel(koszul_differential(S, k))
        assert submodule_equal(K, image(koszul_differential(S, k + 1)))


def test_codim_and_dimension():
    S = PolynomialRing(4)
    I = ideal(S, [parse_polynomial(t, S) for t in ("x1*x2", "x3^2")])
    assert krull_dimension(I) == 2 and codim(I) == 2
    assert codim(ideal(S, [S.one()])) == 5


def test_rank_of_syzygy_module():
    S = PolynomialRing(4)
    E2 = Submodule(koszul_module(S, 1), koszul_differential(S, 2).columns)
    assert rank_of_submodule(E2) == 3


def test_free_piece_dimension():
    F = free_module(R, [0, 1])
    assert free_piece_dimension(F, 2) == 6 + 3
