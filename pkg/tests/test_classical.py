from functools import lru_cache
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from cgsolve.classical import PN, classify_sum, grundy, label_pn, mex, nim_sum, scoring_g, winning_move
from cgsolve.digraph import Digraph, TokenPosition, scoring_graph
from cgsolve.errors import CyclicGraphError, InvalidInput

from conftest import random_dag


def minimax_oracle(g: Digraph):
    """P/N of a token multiset by plain recursion: P iff every follower is N."""

    @lru_cache(maxsize=None)
    def is_p(state):
        for i, u in enumerate(state):
            for v in g.successors[u]:
                if is_p(tuple(sorted(state[:i] + (v,) + state[i + 1 :]))):
                    return False
        return True

    return is_p


@pytest.mark.parametrize("values,expected", [(set(), 0), ({0, 1, 3}, 2), ({1, 2, 3}, 0)])
def test_mex(values, expected):
    assert mex(values) == expected


@given(st.sets(st.integers(0, 40)))
def test_mex_is_least_absent(values):
    m = mex(values)
    assert m not in values and all(k in values for k in range(m))


def test_nim_sum_examples():
    assert nim_sum([2, 3, 3, 4]) == 6
    assert nim_sum([1, 2, 3, 0]) == 0
    assert nim_sum([13]) == 13
    assert nim_sum([]) == 0


def test_scoring_labels():
    g = scoring_graph(8, 3)
    values = grundy(g)
    assert values == [i % 4 for i in range(9)]
    assert [u for u, lab in enumerate(label_pn(g)) if lab == PN.P] == [0, 4, 8]


def test_scoring_g():
    assert scoring_g(8, 3) == 0
    assert scoring_g(7, 3) == 3
    assert scoring_g(0, 5) == 0
    with pytest.raises(InvalidInput):
        scoring_g(4, 0)


def test_scoring_closed_form_matches_grundy():
    for t in range(1, 7):
        values = grundy(scoring_graph(200, t))
        assert values == [scoring_g(n, t) for n in range(201)]


def test_isolated_vertex_and_path():
    assert grundy(Digraph(1)) == [0]
    path = Digraph(6, [(i, i - 1) for i in range(1, 6)])
    assert grundy(path) == [0, 1, 0, 1, 0, 1]


def test_vertex_over_leaf_is_n():
    assert label_pn(Digraph(2, [(1, 0)])) == [PN.P, PN.N]


def test_cyclic_rejected():
    with pytest.raises(CyclicGraphError):
        grundy(Digraph(2, [(0, 1), (1, 0)]))
    with pytest.raises(CyclicGraphError):
        classify_sum(Digraph(1, [(0, 0)]), TokenPosition([0]))


def test_sum_examples():
    g = scoring_graph(8, 3)
    assert classify_sum(g, TokenPosition([5, 6, 7, 8])) == PN.P
    assert classify_sum(g, TokenPosition([])) == PN.P
    assert classify_sum(g, TokenPosition([5, 7])) == PN.N
    assert classify_sum(g, TokenPosition([3, 7])) == PN.P
    assert winning_move(g, TokenPosition([5, 6, 7, 8])) is None


def test_winning_move_on_5_and_7():
    g = scoring_graph(8, 3)
    pos = TokenPosition([5, 7])
    i, v = winning_move(g, pos)
    # token at 7 (g=3) has the leading bit of 1^3=2; it must drop to g=1
    assert pos.tokens[i] == 7 and grundy(g)[v] == 1
    assert (i, v) == (1, 5)
    assert classify_sum(g, pos.moved(i, v)) == PN.P


def test_grundy_is_mex_of_followers(rng):
    for _ in range(100):
        g = random_dag(rng, rng.randint(1, 12), rng.uniform(0.1, 0.6))
        values = grundy(g)
        for u in range(g.n):
            assert values[u] == mex(values[v] for v in g.successors[u])
            assert values[u] <= g.n - 1
        assert [x == 0 for x in values] == [lab == PN.P for lab in label_pn(g)]


def test_sum_theory_matches_minimax(rng):
    for _ in range(60):
        g = random_dag(rng, rng.randint(1, 8), rng.uniform(0.1, 0.6))
        is_p = minimax_oracle(g)
        values = grundy(g)
        for k in range(1, 4):
            for toks in combinations_with_replacement(range(g.n), k):
                pos = TokenPosition(toks)
                label = classify_sum(g, pos, values)
                assert (label == PN.P) == is_p(pos.tokens), (g, toks)
                mv = winning_move(g, pos, values)
                if label == PN.P:
                    assert mv is None
                else:
                    assert classify_sum(g, pos.moved(*mv), values) == PN.P
