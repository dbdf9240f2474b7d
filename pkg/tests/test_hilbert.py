from hypothesis import given
from hypothesis import strategies as st

from ssideal.hilbert import (minimalize, monomial_ideal_numerator, monomial_krull_dimension,
                             standard_monomial_count)
from ssideal.invariants import HilbertNumerator, binom_safe
from strategies import monomial_ideals


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.just(n), monomial_ideals(n))))
def test_two_oracles_agree(data):
    n, gens = data
    Q = monomial_ideal_numerator(gens, n)
    series = Q.series(n, 0, 8)
    for d in range(9):
        assert series[d] == standard_monomial_count(gens, n, d)


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.just(n), monomial_ideals(n))))
def test_dimension_from_numerator_matches_independent_sets(data):
    n, gens = data
    Q = monomial_ideal_numerator(gens, n)
    assert Q.krull_dimension(n) == monomial_krull_dimension(gens, n)


def test_product_of_linear_ideals():
    # (x1,x2,x3)(x4,x5,x6) has numerator 1 - 9λ² + 18λ³ - 15λ⁴ + 6λ⁵ - λ⁶
    gens = []
    for i in range(3):
        for j in range(3, 6):
            e = [0] * 6
            e[i] = e[j] = 1
            gens.append(tuple(e))
    Q = monomial_ideal_numerator(gens, 6)
    assert Q == HilbertNumerator.from_list([1, 0, -9, 18, -15, 6, -1])
    assert monomial_krull_dimension(gens, 6) == 3


def test_finite_length_quotient():
    gens = [(2, 0), (0, 2)]
    Q = monomial_ideal_numerator(gens, 2)
    assert Q.finite_hilbert_function(2) == {0: 1, 1: 2, 2: 1}
    assert Q.krull_dimension(2) == 0


def test_unit_and_zero_ideal():
    assert monomial_ideal_numerator([(0, 0, 0)], 3).is_zero()
    assert monomial_ideal_numerator([], 3) == HilbertNumerator.one()
    assert monomial_krull_dimension([], 3) == 3


def test_minimalize_drops_multiples():
    assert set(minimalize([(1, 0), (2, 1), (0, 1)])) == {(1, 0), (0, 1)}


def test_divide_one_minus_round_trip():
    Q = HilbertNumerator.from_list([1, -3, 3, -1])
    quotient, rem = Q.divide_one_minus()
    assert rem.is_zero()
    assert quotient * HilbertNumerator({0: 1, 1: -1}) == Q


def test_binom_safe_conventions():
    assert binom_safe(5, 1) == 5
    assert binom_safe(4, -1) == 0
    assert binom_safe(6, 3) == 20
    assert binom_safe(2, 3) == 0
