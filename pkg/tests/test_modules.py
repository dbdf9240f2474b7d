import pytest
from hypothesis import given

from ssideal.modules import (HomogeneityError, ModuleHom, compose, direct_sum, dual_hom, dual_module,
                             free_module, hom_from_matrix, identity_hom, twist_module)
from ssideal.poly import PolynomialRing, parse_polynomial
from strategies import homs

R = PolynomialRing(3)


@given(homs(R))
def test_double_dual_is_identity(f):
    assert dual_hom(dual_hom(f)) == f


@given(homs(R))
def test_dual_reverses_composition(f):
    g = identity_hom(f.target)
    assert dual_hom(compose(g, f)) == compose(dual_hom(f), dual_hom(g))


@given(homs(R))
def test_dual_is_homogeneous(f):
    ModuleHom(dual_hom(f).source, dual_hom(f).target, dual_hom(f).columns, check=True)


def test_dual_twists():
    M = free_module(R, [0, 2, 5])
    assert dual_module(M).twists == (3, 1, -2)
    assert dual_module(dual_module(M)) == M


def test_inhomogeneous_entry_rejected():
    F, G = free_module(R, [2]), free_module(R, [0])
    with pytest.raises(HomogeneityError):
        hom_from_matrix(F, G, [[parse_polynomial("x1", R)]])


def test_compose_shape_mismatch():
    f = identity_hom(free_module(R, [0]))
    g = identity_hom(free_module(R, [1]))
    with pytest.raises(ValueError):
        compose(g, f)


def test_twist_and_sum():
    M = free_module(R, [1, 2])
    assert twist_module(M, 1).twists == (0, 1)
    assert direct_sum(M, M).rank == 4
    assert M.describe() == "S(-1) + S(-2)"


def test_hom_applies_to_elements():
    F, G = free_module(R, [1, 1]), free_module(R, [0])
    x1, x2 = R.gens()[:2]
    f = hom_from_matrix(F, G, [[x1, x2]])
    v = F.element([x2, -x1])
    assert f(v).is_zero()
