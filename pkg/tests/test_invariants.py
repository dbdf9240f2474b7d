import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ssideal.invariants import (BourbakiParameters, HilbertNumerator, derivative_sweep,
                                first_moment_closed, identity_suite, koszul_alternating,
                                numerical_conditions, q_polynomial, random_parameters,
                                second_moment_closed, syzygy_rank_alternating)

EX2 = BourbakiParameters(6, 1, 0, 0, (3, 3, 6), (2,) * 6 + (5,) * 6)
EX3 = BourbakiParameters(6, 0, 2, 1, (10, 7, 7), (5, 6, 6, 6, 6, 8, 4, 4))


def test_example2_conditions():
    c1, c2, c3 = numerical_conditions(EX2)
    assert (c1.lhs, c1.rhs) == (12, 12)
    assert (c2.lhs, c2.rhs) == (30, 30)
    assert (c3.lhs, c3.rhs) == (120, 120)
    assert EX2.p == EX2.expected_p() == 3


def test_example3_conditions():
    c1, c2, c3 = numerical_conditions(EX3)
    assert (c1.lhs, c1.rhs) == (8, 8)
    assert (c2.lhs, c2.rhs) == (21, 21)
    assert (c3.lhs, c3.rhs) == (67, 67)


def test_perturbed_b_breaks_first_moment():
    bad = BourbakiParameters(6, 1, 0, 0, EX2.a, EX2.b[:-1] + (6,))
    c1, c2, _ = numerical_conditions(bad)
    assert c1.holds and not c2.holds and c2.delta == 1


@pytest.mark.parametrize("params", [EX2, EX3])
def test_q_polynomial_vanishes_to_order_three(params):
    Q = q_polynomial(params)
    assert Q(1) == Q.derivative_at_one(1) == Q.derivative_at_one(2) == 0
    assert Q.krull_dimension(params.n) == params.n - 3


def test_example1_numerator_closed_form():
    params = BourbakiParameters(6, 1, 0, 0, (3, 3), (2,) * 6, with_top=False)
    assert q_polynomial(params) == HilbertNumerator.from_list([1, 0, -9, 18, -15, 6, -1])


def test_moment_examples():
    assert -koszul_alternating(6, 2, 1) * (-1) ** 1 == 6 == first_moment_closed(6, 1)
    assert second_moment_closed(6, 1) == 6


def test_identity_suite_to_twenty():
    rep = identity_suite(20)
    assert rep.ok and rep.cases > 400


def test_identity_suite_small_n_degeneracies_are_isolated():
    rep = identity_suite(20, n_min=0)
    assert {m["n"] for m in rep.mismatches} <= {0, 1, 2}


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))))
def test_syzygy_rank_formula(data):
    n, t = data
    assert syzygy_rank_alternating(n, t) == math.comb(n - 1, t - 1)


def test_derivative_sweep_has_no_mismatches():
    rep = derivative_sweep(300, 10, seed=7)
    assert rep.ok
    assert rep.positives["cond3"] > 50


@given(st.integers(0, 10 ** 6))
def test_codim3_draws_satisfy_all_conditions(seed):
    params = random_parameters(random.Random(seed), 10, "codim3")
    if params is None:
        return
    assert all(c.holds for c in numerical_conditions(params))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.integers(0, 4))
def test_numerator_series_inverts_multiplication(coeffs, n):
    Q = HilbertNumerator.from_list(coeffs)
    times = Q
    for _ in range(n):
        times = times * HilbertNumerator({0: 1, 1: -1})
    assert times.series(n, 0, 10) == {d: Q.coeffs.get(d, 0) for d in range(11)}
