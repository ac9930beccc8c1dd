import random
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from oracles import multinomial as oracle_multinomial
from oracles import naive_parking

from pfgrammar.counting import (
    abel_identity_sides,
    check_scaling,
    compositions,
    cor3_sides,
    count_basic,
    count_periodic_bruteforce,
    count_periodic_egf,
    count_periodic_grammar,
    count_periodic_grammar_unscaled,
    count_periodic_scaled,
    count_periodic_specsum,
    count_rational,
    count_u_incl_excl,
    exp_series,
    grammar_K_value,
    multinomial,
    neutral_t_hook,
    periodic_report,
    spec_compositions,
    specsum_terms,
    unconstrained_K_sum,
    weak_compositions,
)
from pfgrammar.errors import DegenerateParameter, GcdViolation, OrderTooLarge, ZeroArgument
from pfgrammar.parking import basic_threshold_vector, enumerate_u_parking

# frozen from brute-force enumeration over ab_threshold_vector(a, b, kb)
BRUTE = {(3, 2, 1): 3, (3, 2, 2): 243, (2, 3, 1): 4, (2, 3, 2): 1184,
         (4, 3, 1): 16, (4, 3, 2): 35328, (5, 2, 1): 5, (5, 2, 2): 1075}


def test_spec_compositions_examples():
    assert spec_compositions(1, 3) == [(3,)]
    assert spec_compositions(2, 2) == [(2, 2), (3, 1), (4, 0)]
    assert spec_compositions(2, 3) == [(3, 3), (4, 2), (5, 1), (6, 0)]


@pytest.mark.parametrize("k,b", [(1, 1), (2, 1), (3, 2), (3, 3), (4, 2)])
def test_spec_compositions_match_filter(k, b):
    brute = [J for J in weak_compositions(k * b, k)
             if all(sum(J[:t]) >= t * b for t in range(1, k + 1))]
    assert spec_compositions(k, b) == sorted(brute)


def test_compositions():
    assert list(compositions(0)) == [()]
    assert len(list(compositions(5))) == 16
    assert len(list(weak_compositions(4, 3))) == 15


def test_multinomial_matches_oracle():
    for parts in [(0,), (3, 1), (2, 2, 2), (5, 0, 1, 3)]:
        assert multinomial(parts) == oracle_multinomial(parts)


def test_count_basic():
    assert count_basic(1, 1, 3) == 16
    assert count_basic(5, 7, 0) == 1
    assert count_basic(3, 0, 4) == 81
    assert count_basic(1, Fraction(3, 7), 7) == 4096


@pytest.mark.parametrize("alpha,beta,n", [(1, 1, 4), (2, 3, 3), (3, 1, 3), (2, 2, 4)])
def test_count_basic_brute(alpha, beta, n):
    assert count_basic(alpha, beta, n) == len(enumerate_u_parking(basic_threshold_vector(alpha, beta, n)))


def test_incl_excl_examples():
    assert count_u_incl_excl(()) == 1
    assert count_u_incl_excl((1,)) == 1
    assert count_u_incl_excl((1, 2)) == 3
    assert count_u_incl_excl((1, 1, 2, 2, 3, 3, 4)) == 4096


def test_incl_excl_exhaustive_small():
    for n in range(1, 4):
        for u in combinations_with_replacement(range(1, 7), n):
            assert count_u_incl_excl(u) == len(naive_parking(u)), u


def test_incl_excl_random():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(1, 6)
        u = sorted(rng.randint(1, 6) for _ in range(n))
        assert count_u_incl_excl(u) == len(enumerate_u_parking(u))


def test_check_scaling_examples():
    assert check_scaling((1, 2), 1)
    assert count_u_incl_excl((2, 4)) == 12 == len(naive_parking((2, 4)))
    assert check_scaling((1, 2), 2)
    assert check_scaling((Fraction(1, 3), Fraction(5, 7)), 21)


def test_check_scaling_random():
    rng = random.Random(3)
    for _ in range(40):
        u = [Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(rng.randint(1, 6))]
        assert check_scaling(u, rng.choice([2, 3, Fraction(5, 2)]))


def test_count_rational():
    assert count_rational(4, 7) == 4096
    assert count_rational(1, 5) == 1
    assert count_rational(3, 2) == 3
    with pytest.raises(GcdViolation):
        count_rational(2, 4)


def test_specsum_terms_by_hand():
    assert specsum_terms(3, 2, 2) == [((2, 2), 54), ((3, 1), 64), ((4, 0), 125)]


@pytest.mark.parametrize("a,b,k", sorted(BRUTE))
def test_oracle_triangle(a, b, k):
    n = BRUTE[(a, b, k)]
    assert count_periodic_specsum(a, b, k) == n
    assert count_periodic_egf(a, b, k) == n
    assert count_periodic_scaled(a, b, k) == n * b ** (k * b)
    assert count_periodic_grammar(a, b, k) == n * b ** (k * b)
    assert count_periodic_grammar_unscaled(a, b, k) == n


@pytest.mark.parametrize("a,b,k", [(3, 2, 2), (2, 3, 2), (5, 2, 2), (3, 2, 1)])
def test_bruteforce_frozen(a, b, k):
    assert count_periodic_bruteforce(a, b, k) == BRUTE[(a, b, k)]


def test_periodic_k1_collapse():
    for a, b in [(2, 3), (3, 4), (5, 3), (4, 7)]:
        assert count_periodic_specsum(a, b, 1) == a ** (b - 1)
        assert count_periodic_egf(a, b, 1) == a ** (b - 1)
        assert count_periodic_scaled(a, b, 1) == b**b * a ** (b - 1)


def test_scaled_value_for_3_2_2():
    # b^(kb) = 2^4 here
    assert count_periodic_scaled(3, 2, 2) == 16 * 243 == 3888


def test_egf_larger_case():
    assert count_periodic_egf(2, 3, 3) == count_periodic_specsum(2, 3, 3) == 2041600
    assert count_periodic_egf(3, 2, 3) == count_periodic_specsum(3, 2, 3) == 69174


def test_exp_series():
    # exp(z) coefficients
    e = exp_series([0, 1], 5)
    assert e == [Fraction(1, f) for f in (1, 1, 2, 6, 24, 120)]
    with pytest.raises(ValueError):
        exp_series([1, 1], 2)


def test_neutral_hook_drops_spec_filter():
    for a, b, k in [(3, 2, 2), (2, 3, 2)]:
        assert grammar_K_value(k, b, b, a - 1, neutral_t_hook(k)) == unconstrained_K_sum(a, b, k)
        assert unconstrained_K_sum(a, b, k) > count_periodic_scaled(a, b, k)


def test_grammar_order_cap():
    with pytest.raises(OrderTooLarge):
        count_periodic_grammar(3, 2, 2, max_order=3)


def test_periodic_errors():
    for fn in (count_periodic_specsum, count_periodic_scaled, count_periodic_egf, count_periodic_grammar):
        with pytest.raises(GcdViolation):
            fn(2, 4, 1)


def test_periodic_report():
    rep = periodic_report(3, 2, 2)
    assert set(rep.values()) == {243}
    rep = periodic_report(2, 3, 3, max_enum=8, max_order=8)
    assert rep["bruteforce"] is None and rep["grammar"] is None
    assert rep["specsum"] == rep["egf"] == rep["scaled/b^kb"]


def test_abel_examples():
    assert abel_identity_sides([1, 1], 2) == (8, 8)
    lhs, rhs = abel_identity_sides([Fraction(3, 2)], 4)
    assert lhs == rhs == Fraction(3, 2) * Fraction(11, 2) ** 3
    with pytest.raises(ZeroArgument):
        abel_identity_sides([1, 0], 3)


def test_abel_random():
    rng = random.Random(29)
    for _ in range(40):
        k, n = rng.randint(1, 4), rng.randint(1, 6)
        xs = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 15), rng.randint(1, 7)) for _ in range(k)]
        lhs, rhs = abel_identity_sides(xs, n)
        assert lhs == rhs


def test_uniform_abel_examples():
    assert cor3_sides(6, 4, 2) == (432, 432)
    assert cor3_sides(Fraction(5, 3), 4, 1) == (Fraction(125, 27), Fraction(125, 27))
    with pytest.raises(DegenerateParameter):
        cor3_sides(2, 3, 2)


def test_uniform_abel_random():
    rng = random.Random(31)
    for _ in range(40):
        k, n = rng.randint(1, 4), rng.randint(1, 6)
        x = Fraction(rng.randint(-20, 20), rng.randint(1, 5))
        if x == k:
            continue
        lhs, rhs = cor3_sides(x, n, k)
        assert lhs == rhs
