import pytest
from hypothesis import given
from hypothesis import strategies as st

from ssideal.groebner import DegreeCapExceeded, buchberger, spair_check
from ssideal.poly import PolynomialRing, parse_polynomial
from ssideal.submodules import ideal, image, submodule_equal
from strategies import homogeneous_polynomials, homs

R = PolynomialRing(3)
P = PolynomialRing(3, 32003)


def polys(ring, *texts):
    return [parse_polynomial(t, ring) for t in texts]


def random_ideal(ring):
    return st.lists(st.integers(1, 3).flatmap(lambda d: homogeneous_polynomials(ring, d)),
                    min_size=1, max_size=3)


@given(st.sampled_from([R, P]).flatmap(lambda r: random_ideal(r)))
def test_buchberger_criterion_holds(gens):
    I = ideal(gens[0].ring, gens)
    res = I.gb()
    assert spair_check(res.basis, res.enc, res.p)


@given(random_ideal(R))
def test_generators_reduce_to_zero(gens):
    I = ideal(R, gens)
    for g in I.generators:
        assert I.contains(g)


@given(random_ideal(R), random_ideal(R))
def test_products_are_members(gens, mult):
    I = ideal(R, gens)
    F = I.ambient
    assert I.contains(F.element([gens[0] * mult[0]]))


@given(homs(R))
def test_module_gb_criterion(f):
    N = image(f)
    res = N.gb()
    assert spair_check(res.basis, res.enc, res.p)
    for col in f.columns:
        assert N.contains(col)


def test_known_basis_twisted_cubic():
    I = ideal(R, polys(R, "x1*x3 - x2^2"))
    assert len(I.groebner_basis()) == 1
    J = ideal(R, polys(R, "x1^2", "x1*x2", "x2^2"))
    assert not J.contains(J.ambient.element([R.var(3) ** 5]))


def test_reduced_basis_is_canonical():
    a = ideal(R, polys(R, "x1^2 - x2*x3", "x1*x2"))
    b = ideal(R, polys(R, "x1*x2", "x1^2 - x2*x3 + x1*x2"))
    assert [str(g) for g in a.groebner_basis()] == [str(g) for g in b.groebner_basis()]
    assert submodule_equal(a, b)


def test_determinism_of_basis_text():
    gens = polys(R, "x1^2 + x2*x3", "x2^2 - x1*x3", "x3^3")
    runs = {tuple(str(g) for g in ideal(R, gens).groebner_basis()) for _ in range(3)}
    assert len(runs) == 1


def test_degree_cap_aborts():
    J = ideal(R, polys(R, "x1^2 - x2*x3", "x1*x2 - x3^2"))
    with pytest.raises(DegreeCapExceeded):
        buchberger([_internal(J, g) for g in J.generators], J.enc, 0, cap=2)


def _internal(N, v):
    from ssideal.submodules import to_internal
    return to_internal(v, N.enc)


def test_minimal_generators_drop_redundant():
    I = ideal(R, polys(R, "x1", "x1*x2", "x2"))
    assert len(I.minimal_generators()) == 2


def test_char_p_agrees_with_rationals_on_leading_terms():
    texts = ("x1^2 + 3*x2*x3", "x2^2 - 5*x1*x3", "x1*x2*x3")
    a, b = ideal(R, polys(R, *texts)), ideal(P, polys(P, *texts))
    assert sorted(a.leading_terms()) == sorted(b.leading_terms())
