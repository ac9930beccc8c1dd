from collections import Counter
from math import comb

import pytest
from conftest import polynomials
from hypothesis import given
from hypothesis import strategies as st
from oracles import G_RULES, cycle_index_coeff, leibniz_expand, planted_closed_form

from pfgrammar.algebra import Polynomial, monomial, substitute
from pfgrammar.errors import BadParameter, OrderTooLarge, ParseError, UnknownGrammar
from pfgrammar.grammar import (
    builtin_grammar,
    derive,
    derive_n,
    faa_di_bruno_coefficients,
    grammar_F,
    grammar_G,
    grammar_H,
    grammar_H1,
    grammar_K,
    parse_grammar,
    planted_forest_coefficients,
    tree_coefficient_table,
)

V = Polynomial.var
A, S = V("A"), V("S")
G = grammar_G()


def test_builtin_G_rules():
    assert dict(builtin_grammar("G").rules) == {"A": A**3 * S, "S": A * S**2}


def test_builtin_K_has_explicit_zero_rule():
    k1 = builtin_grammar("K:1")
    assert "t1" in k1.rules and k1.rules["t1"].is_zero()
    assert k1.rules["w1"] == V("y1") * V("w1") ** 2 * V("t1")
    assert "t1 -> 0" in k1.to_text()


def test_hprime_one_is_H():
    h1 = builtin_grammar("Hprime", 1).rename({"z1": "z", "x1": "x"})
    assert h1 == grammar_H()


def test_builtin_names():
    assert builtin_grammar("H1:2:3") == grammar_H1(2, 3)
    assert builtin_grammar("K", 2) == grammar_K(2)
    with pytest.raises(UnknownGrammar):
        builtin_grammar("Q")
    with pytest.raises(BadParameter):
        builtin_grammar("K:0")
    with pytest.raises(BadParameter):
        builtin_grammar("H1", 2)


def test_F_is_materialized_to_order():
    f = grammar_F(3)
    assert set(f.rules) == {"f0", "f1", "f2", "f3", "g1", "g2", "g3"}
    assert f.rules["g2"] == 2 * V("g3")


def test_derive_examples():
    assert derive(G, S) == A * S**2
    # product rule: D(A) S + A D(S)
    assert derive(G, A * S) == A**3 * S**2 + A**2 * S**2
    assert derive(G, Polynomial.const(1)).is_zero()
    assert derive_n(G, S, 0) == S


def test_rule_to_zero_and_constants():
    k = grammar_K(1)
    assert derive(k, V("t1") ** 3).is_zero()
    assert derive(k, V("q")).is_zero()


@pytest.mark.parametrize("n", range(1, 9))
def test_classical_tree_count(n):
    assert substitute(derive_n(G, S, n), {"A": 1, "S": 1}) == (n + 1) ** (n - 1)


def test_order_cap():
    with pytest.raises(OrderTooLarge):
        derive_n(G, S, 13)
    assert derive_n(G, S, 13, max_order=13).terms


def test_tree_table_small():
    assert tree_coefficient_table(1) == {0: 1}


def test_tree_table_n4_frozen():
    # independently recomputed with oracles.leibniz_expand (list-based Leibniz)
    assert tree_coefficient_table(4) == {0: 24, 1: 46, 2: 40, 3: 15}


@pytest.mark.parametrize("n", range(1, 7))
def test_tree_table_matches_list_oracle(n):
    expanded = leibniz_expand(G_RULES, ["S"], n)
    oracle = {}
    for atoms, c in expanded.items():
        counts = Counter(atoms)
        assert counts["S"] == n + 1
        oracle[counts["A"] - n] = c
    assert tree_coefficient_table(n) == dict(sorted(oracle.items()))
    assert sum(oracle.values()) == (n + 1) ** (n - 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_homogeneity(n):
    for m in derive_n(G, S, n).terms:
        e = dict(m)
        assert e["S"] == n + 1 and n <= e["A"] <= 2 * n


def test_planted_forest_examples():
    assert planted_forest_coefficients(1) == {1: 1}
    assert planted_forest_coefficients(3)[1] == 9
    assert planted_forest_coefficients(5) == {k: planted_closed_form(5, k) for k in range(1, 6)}


@pytest.mark.parametrize("n", range(1, 8))
def test_planted_forest_closed_form(n):
    assert planted_forest_coefficients(n) == {k: comb(n - 1, k - 1) * n ** (n - k) for k in range(1, n + 1)}


def test_planted_forest_example():
    p = derive_n(grammar_H(), V("z"), 4)
    assert substitute(p, {"y": 1, "z": 1, "x": 2, "w": 3}) == 2 * (2 + 3 * 4) ** 3


@pytest.mark.parametrize("a", range(1, 5))
@pytest.mark.parametrize("b", range(1, 5))
def test_planted_forest_grid(a, b):
    seq = [V("z")]
    h = grammar_H()
    for n in range(1, 8):
        seq.append(derive(h, seq[-1]))
        assert substitute(seq[-1], {"y": 1, "z": 1, "x": a, "w": b}) == a * (a + b * n) ** (n - 1)


@pytest.mark.parametrize("a", range(1, 4))
@pytest.mark.parametrize("b", range(1, 4))
def test_H1_consistency(a, b):
    g = grammar_H1(a, b)
    ones = {v: 1 for v in ["z", "y", *(f"x{i}" for i in range(1, a + 1)), *(f"w{j}" for j in range(1, b + 1))]}
    p = V("z")
    for n in range(1, 6):
        p = derive(g, p)
        assert substitute(p, ones) == a * (a + b * n) ** (n - 1)


def test_faa_di_bruno_examples():
    assert faa_di_bruno_coefficients(1) == {(1,): 1}
    assert faa_di_bruno_coefficients(3)[(1, 1, 0)] == 3


@pytest.mark.parametrize("k", range(1, 7))
def test_faa_di_bruno_closed_form(k):
    table = faa_di_bruno_coefficients(k)
    assert table == {ts: cycle_index_coeff(ts) for ts in table}
    assert sum(table.values()) == __import__("math").factorial(k)


def test_faa_di_bruno_k5_full_table():
    table = faa_di_bruno_coefficients(5)
    # every cycle type of S_5 appears (7 partitions of 5)
    assert len(table) == 7
    assert table == {ts: cycle_index_coeff(ts) for ts in table}


def test_parse_grammar_round_trip():
    text = "A -> A^3*S\nS -> A*S^2   # comment\n\n"
    g = parse_grammar(text)
    assert g == grammar_G()
    assert parse_grammar(g.to_text()) == g
    k = grammar_K(2)
    assert parse_grammar(k.to_text()) == k
    for bad in ["A A^3", "A -> 1\nA -> 2", "1x -> x"]:
        with pytest.raises(ParseError):
            parse_grammar(bad)


# -- properties ---------------------------------------------------------------

GRAMMARS = [grammar_G(), grammar_H(), grammar_H1(2, 2)]
gvars = ["A", "S", "z", "x", "y", "w", "x1", "w2"]


@given(st.sampled_from(GRAMMARS), polynomials(gvars), polynomials(gvars))
def test_linearity(g, p, q):
    assert derive(g, p + q) == derive(g, p) + derive(g, q)
    assert derive(g, 3 * p) == 3 * derive(g, p)


@given(st.sampled_from(GRAMMARS), polynomials(gvars), polynomials(gvars))
def test_leibniz(g, p, q):
    assert derive(g, p * q) == derive(g, p) * q + p * derive(g, q)


@pytest.mark.parametrize("n", range(-3, 6))
@pytest.mark.parametrize("v", ["A", "S"])
def test_power_chain_rule(n, v):
    base = V(v)
    expected = n * base ** (n - 1) * derive(G, base) if n else Polynomial()
    assert derive(G, base**n) == expected


def test_negative_power_derivative():
    # D(S^-1) = -S^-2 * A S^2 = -A
    assert derive(G, S**-1) == -A
    assert monomial({"S": 0}) == ()
