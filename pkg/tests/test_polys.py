import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ndcomm.boundslab import cliques, polys
from ndcomm.boundslab.polys import MultiPoly
from ndcomm.errors import BudgetExceededError
from ndcomm.heqfun import HeqInput, HeqParams

P21 = HeqParams(2, 1)


def hin(params, *entries):
    return HeqInput(params, tuple(entries))


def test_epsilon_kprime1_closed_forms():
    assert polys.epsilon_poly(0, 1) == MultiPoly.variable(1)  # X
    assert polys.epsilon_poly(1, 1) == MultiPoly.constant(1) - MultiPoly.variable(1)  # 1 - X


def test_epsilon_is_the_disagreement_indicator_on_the_grid():
    for kprime in (1, 2, 3):
        for a in range(1 << kprime):
            poly = polys.epsilon_poly(a, kprime)
            assert poly.max_exponent() == (1 << kprime) - 1
            for b in range(1 << kprime):
                assert poly.evaluate({1: b}) == (0 if a == b else 1)


def test_epsilon_range_check():
    with pytest.raises(ValueError):
        polys.epsilon_poly(2, 1)


def test_membership_product_k2_kprime1():
    fa = polys.build_membership_product(hin(P21, 0, 0, 0))
    expected = (
        MultiPoly.constant(1)
        - MultiPoly.variable(3)
        - MultiPoly.variable(2)
        - MultiPoly.variable(1)
    )
    assert fa == expected
    fb = polys.build_membership_product(hin(P21, 1, 0, 0))
    # 1 - X3 - X2 - (1 - X1) = X1 - X2 - X3
    assert fb == MultiPoly.variable(1) - MultiPoly.variable(2) - MultiPoly.variable(3)


def test_membership_product_k1_is_constant_one():
    fa = polys.build_membership_product(hin(HeqParams(1, 2), 3))
    assert fa == MultiPoly.constant(1)


def test_membership_product_variable_cap():
    for params in (P21, HeqParams(3, 1), HeqParams(3, 2)):
        cap = (1 << params.k) - params.k - 1
        samples = itertools.islice(
            itertools.product(range(params.alphabet), repeat=params.length), 8
        )
        for entries in samples:
            poly = polys.build_membership_product(HeqInput(params, entries))
            assert poly.max_distinct_variables() <= cap
            reduced = polys.reduce_poly(poly, params.kprime)
            assert reduced.max_distinct_variables() <= cap
            assert reduced.max_exponent() <= (1 << params.kprime) - 1


def test_membership_product_parity_on_grid():
    # odd exactly on the diagonal for every valid pairwise-condition set
    for members in cliques.enumerate_condition_sets(P21):
        products = [polys.build_membership_product(m) for m in members]
        for fa, a in zip(products, members):
            for b in members:
                point = {i: b.entry(i) for i in range(1, 4)}
                value = fa.evaluate(point)
                assert value.denominator == 1
                assert value.numerator % 2 == (1 if a == b else 0)


def test_reduce_square_to_linear():
    assert polys.reduce_poly(MultiPoly({((1, 2),): Fraction(1)}), 1) == MultiPoly.variable(1)


def test_reduce_fixed_point():
    p = MultiPoly({((1, 1), (2, 1)): Fraction(2), (): Fraction(-1)})
    assert polys.reduce_poly(p, 1) == p


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2), st.data())
def test_reduce_agrees_on_grid(kprime, data):
    alphabet = 1 << kprime
    n_terms = data.draw(st.integers(1, 5))
    terms = {}
    for _ in range(n_terms):
        mono = []
        for var in (1, 2, 3):
            exp = data.draw(st.integers(0, 2 * alphabet))
            if exp:
                mono.append((var, exp))
        coeff = Fraction(data.draw(st.integers(-4, 4)), data.draw(st.integers(1, 3)))
        if coeff:
            terms[tuple(mono)] = terms.get(tuple(mono), Fraction(0)) + coeff
    p = MultiPoly(terms)
    reduced = polys.reduce_poly(p, kprime)
    assert reduced.max_exponent() <= alphabet - 1
    for point in itertools.product(range(alphabet), repeat=3):
        env = {1: point[0], 2: point[1], 3: point[2]}
        assert p.evaluate(env) == reduced.evaluate(env)


def test_monomial_count_bound_values():
    assert polys.monomial_count_bound(1, 1) == 1
    assert polys.monomial_count_bound(2, 1) == 4
    # monotone in kprime for fixed k
    for k in (2, 3):
        values = [polys.monomial_count_bound(k, kp) for kp in range(1, 6)]
        assert values == sorted(values)


def test_rank_over_rationals():
    one = Fraction(1)
    assert polys.rank_over_rationals([[one, 0], [0, one]]) == 2
    assert polys.rank_over_rationals([[one, one], [one, one]]) == 1
    assert polys.rank_over_rationals([]) == 0
    third = Fraction(1, 3)
    assert polys.rank_over_rationals([[third, one], [one, 3 * one]]) == 1


def test_certificate_for_spec_pair():
    cert = polys.certify_independence([hin(P21, 0, 0, 0), hin(P21, 1, 0, 0)])
    assert cert.ok
    assert cert.rank == 2
    assert cert.parity_ok and cert.variable_cap_ok and cert.bound_ok
    assert cert.monomial_bound == 4


def test_certificate_singleton():
    cert = polys.certify_independence([hin(P21, 1, 1, 0)])
    assert cert.ok and cert.rank == 1


def test_certificate_rejects_invalid_set():
    a = hin(P21, 0, 0, 0)
    b = hin(P21, 1, 0, 1)  # codeword pattern: violates the pairwise condition
    with pytest.raises(ValueError, match="pairwise condition"):
        polys.certify_independence([a, b])
    with pytest.raises(ValueError):
        polys.certify_independence([])


def test_certificate_budget():
    p33 = HeqParams(3, 3)
    with pytest.raises(BudgetExceededError):
        polys.certify_independence([HeqInput(p33, (0,) * 7)])


def test_certificate_max_witness_passes():
    best = cliques.max_condition_set(P21, "exact")
    cert = polys.certify_independence(list(best.witness))
    assert cert.ok and cert.rank == best.size
