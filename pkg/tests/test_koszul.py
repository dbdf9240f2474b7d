import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ssideal.koszul import (DualForm, KoszulComplex, combine, differential_table, family_A,
                            family_A_generator, family_B, family_B_generator, format_koszul_element,
                            in_family_A, in_family_B, koszul_differential, koszul_module,
                            parse_dual_form, parse_koszul_element, sigma, subset_index, subsets,
                            syzygy_module)
from ssideal.modules import compose
from ssideal.poly import ParseError, PolynomialRing, parse_polynomial
from ssideal.submodules import rank_of_submodule

R6 = PolynomialRing(6)


@pytest.mark.parametrize("n", range(1, 8))
def test_differential_squares_to_zero(n):
    S = PolynomialRing(n)
    for k in range(2, n + 1):
        assert compose(koszul_differential(S, k - 1), koszul_differential(S, k)).is_zero()


@pytest.mark.parametrize("n,t", [(n, t) for n in range(1, 6) for t in range(1, n + 1)])
def test_rank_of_syzygy_modules(n, t):
    E = syzygy_module(n, t, check_rank=False)
    assert rank_of_submodule(E.as_submodule()) == math.comb(n - 1, t - 1)


def test_module_twists():
    K = koszul_module(R6, 3)
    assert K.rank == 20 and set(K.twists) == {3}
    assert set(koszul_module(R6, 5, 1).twists) == {4}


def test_two_variable_differential_sign():
    S = PolynomialRing(2)
    assert differential_table(S, 2) == ["d_2(e[1,2]) = -x2*e[1] + x1*e[2]"]


@given(st.integers(1, 6).flatmap(lambda k: st.tuples(st.just(k), st.sampled_from(subsets(6, k)))))
def test_subset_index_round_trip(data):
    k, J = data
    assert subsets(6, k)[subset_index(6, J)] == J


def test_sigma_is_shuffle_sign():
    assert sigma((1,), (2,)) == 1
    assert sigma((2,), (1,)) == -1
    assert sigma((1, 3), (2,)) == -1


def test_family_A_matches_printed_generator():
    A1 = parse_dual_form("x1*e*[1,6] + x2*e*[2,6] + x3*e*[3,6] + x4*e*[4,6] + x5*e*[5,6]", R6)
    assert family_A_generator(R6, 1, (1, 2, 3, 4, 5)) == A1
    A6 = parse_dual_form("x2*e*[1,2] + x3*e*[1,3] + x4*e*[1,4] + x5*e*[1,5] + x6*e*[1,6]", R6)
    assert family_A_generator(R6, 1, (2, 3, 4, 5, 6)) == A6


def test_combination_expands_as_printed():
    x = [None] + R6.gens()
    a = combine(R6, 2, {(1, 2, 3, 4, 5): x[6], (1, 2, 3, 4, 6): -x[5], (1, 2, 3, 5, 6): x[4]}, family_A(R6, 1))
    want = {(i, j): x[i] * x[j] for i in (1, 2, 3) for j in (4, 5, 6)}
    assert a == DualForm(R6, 2, want)
    b = family_B_generator(R6, 1, 4) * parse_polynomial("-x1^2*x2*x4", R6)
    assert b == parse_dual_form("x1^2*x2*x4^2*e*[2,3,4,5,6] + x1^3*x2*x4*e*[1,2,3,5,6]", R6)
    assert in_family_A(a, 1) and in_family_B(b)


@pytest.mark.parametrize("t", range(0, 4))
def test_family_A_kills_next_syzygies(t):
    d = koszul_differential(R6, t + 2)
    for form in family_A(R6, t).values():
        assert all(form(col).is_zero() for col in d.columns)


def test_family_B_kills_top_syzygy():
    d = koszul_differential(R6, 6)
    for form in family_B(R6).values():
        assert form(d.columns[0]).is_zero()


def test_form_outside_family():
    assert not in_family_A(parse_dual_form("x1*e*[1,2]", R6), 1)


@given(st.sampled_from(subsets(6, 2) + subsets(6, 5)), st.integers(-3, 3))
def test_element_parse_format_round_trip(J, c):
    blocks = [(2, 0), (5, 0)]
    text = f"{c}*x1*e[{','.join(map(str, J))}]"
    v = parse_koszul_element(text, R6, blocks)
    assert parse_koszul_element(format_koszul_element(v, blocks), R6, blocks) == v


def test_parse_rejects_unknown_block():
    with pytest.raises(ParseError):
        parse_koszul_element("e[1,2,3]", R6, [(2, 0)])


def test_complex_helper():
    C = KoszulComplex(R6)
    assert C.e((2, 1)).components == (-C.e((1, 2))).components
