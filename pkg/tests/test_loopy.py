import itertools

import pytest
from hypothesis import given, strategies as st

from cgsolve.classical import classify_sum, grundy
from cgsolve.digraph import Digraph, TokenPosition
from cgsolve.loopy import (
    Fin,
    Inf,
    Outcome,
    check_gamma,
    classify_position,
    classify_value,
    explore,
    gamma,
    gen_nim_sum,
    label_minimax,
    minimax_table,
    next_move,
    parse_gamma,
    token_successors,
)

from conftest import random_dag, random_digraph

TWO_CYCLE = Digraph(2, [(0, 1), (1, 0)])
# 2 -> leaf 0, 2 -> 1, with 1 <-> 3 a closed 2-cycle
SHAPES = Digraph(4, [(2, 0), (2, 1), (1, 3), (3, 1)])


def all_values():
    fins = [Fin(m) for m in range(16)]
    infs = [Inf(K) for r in range(5) for K in itertools.combinations(range(4), r)]
    return fins + infs


def test_gamma_examples():
    assert gamma(TWO_CYCLE).gamma == (Inf(), Inf())
    lab = gamma(SHAPES)
    assert lab.gamma == (Fin(0), Inf(), Inf({0}), Inf())
    assert lab.counter == {0: 0}


def test_gamma_on_loop_and_leaf():
    lab = gamma(Digraph(2, [(0, 0), (0, 1)]))
    assert lab.gamma == (Inf({0}), Fin(0))
    assert classify_value(lab[0]) == Outcome.N


def test_gamma_value_with_return_path():
    # 0 leaf; 1 -> 0; 1 -> 2; 2 -> 1 : 2 can return to 1's value, so 1 stays finite
    g = Digraph(3, [(1, 0), (1, 2), (2, 1)])
    lab = gamma(g)
    assert lab.gamma == (Fin(0), Fin(1), Fin(0))
    assert not check_gamma(g, lab)
    assert label_minimax(g, TokenPosition([1])) == Outcome.N
    assert label_minimax(g, TokenPosition([2])) == Outcome.P


def test_gen_nim_sum_examples():
    assert gen_nim_sum(Fin(1), Inf({1})) == Inf({0})
    assert gen_nim_sum(Inf({0, 2}), Inf({1})) == Inf()
    for v in all_values():
        assert gen_nim_sum(Fin(0), v) == v


def test_gen_nim_sum_algebra_exhaustive():
    vals = all_values()
    for a in vals:
        for b in vals:
            assert gen_nim_sum(a, b) == gen_nim_sum(b, a)
    for a, b, c in itertools.product(vals, repeat=3):
        assert gen_nim_sum(gen_nim_sum(a, b), c) == gen_nim_sum(a, gen_nim_sum(b, c))


@pytest.mark.parametrize(
    "value,label",
    [(Fin(0), Outcome.P), (Fin(3), Outcome.N), (Inf({0, 1}), Outcome.N), (Inf(), Outcome.D), (Inf({2}), Outcome.D)],
)
def test_classify_value(value, label):
    assert classify_value(value) == label


@given(st.one_of(st.builds(Fin, st.integers(0, 100)), st.builds(Inf, st.sets(st.integers(0, 20)))))
def test_gamma_text_roundtrip(v):
    assert parse_gamma(str(v)) == v


def test_classify_position_examples():
    assert classify_position(TWO_CYCLE, TokenPosition([0, 1])) == Outcome.D
    assert classify_position(Digraph(1), TokenPosition([0])) == Outcome.P
    # token on a Fin(1) vertex plus a token on an Inf({1}) vertex
    g = Digraph(5, [(1, 0), (2, 1), (2, 3), (3, 4), (4, 3)])
    lab = gamma(g)
    assert lab[1] == Fin(1) and lab[2] == Inf({1})
    assert classify_position(g, TokenPosition([1, 2]), lab) == Outcome.N
    assert label_minimax(g, TokenPosition([1, 2])) == Outcome.N


def test_label_minimax_examples():
    assert label_minimax(Digraph(1), TokenPosition([0])) == Outcome.P
    assert label_minimax(TWO_CYCLE, TokenPosition([0])) == Outcome.D


def test_gamma_satisfies_definition(rng):
    for _ in range(300):
        g = random_digraph(rng, rng.randint(1, 12), rng.uniform(0.05, 0.5), loops=rng.random() < 0.5)
        assert check_gamma(g, gamma(g)) == []


def test_gamma_counter_increases_with_value(rng):
    for _ in range(100):
        g = random_digraph(rng, rng.randint(1, 10), rng.uniform(0.1, 0.5))
        lab = gamma(g)
        fin = sorted(lab.counter, key=lab.counter.get)
        assert [lab[u].m for u in fin] == sorted(lab[u].m for u in fin)


def test_gamma_invariant_under_relabeling(rng):
    for _ in range(100):
        n = rng.randint(1, 12)
        g = random_digraph(rng, n, rng.uniform(0.05, 0.5))
        perm = list(range(n))
        rng.shuffle(perm)
        h = Digraph(n, [(perm[u], perm[v]) for u, v in g.edges])
        a, b = gamma(g), gamma(h)
        assert all(a[u] == b[perm[u]] for u in range(n))


def test_gamma_equals_grundy_on_dags(rng):
    for _ in range(100):
        g = random_dag(rng, rng.randint(1, 10), rng.uniform(0.1, 0.6))
        values = grundy(g)
        lab = gamma(g)
        assert lab.gamma == tuple(Fin(x) for x in values)
        for toks in itertools.combinations_with_replacement(range(g.n), 2):
            pos = TokenPosition(toks)
            assert classify_position(g, pos, lab).value == classify_sum(g, pos, values).value


def test_gamma_matches_minimax(rng):
    for _ in range(80):
        g = random_digraph(rng, rng.randint(1, 8), rng.uniform(0.1, 0.5), loops=rng.random() < 0.5)
        lab = gamma(g)
        for k in (1, 2):
            table = minimax_table(g, k)
            for toks, label in table.items():
                assert classify_position(g, TokenPosition(toks), lab) == label, (sorted(g.edges), toks)


def test_label_minimax_agrees_with_table(rng):
    for _ in range(20):
        g = random_digraph(rng, rng.randint(1, 6), 0.3)
        table = minimax_table(g, 2)
        for toks, label in table.items():
            assert label_minimax(g, TokenPosition(toks)) == label


def strategy_wins(g, start, lab, states_limit):
    """Explore every adversary reply while the strategist follows next_move.

    Returns True when no cycle is reachable and every finished game ended
    with the strategist making the last move.
    """
    moves = token_successors(g)
    color = {}

    def visit(state, strategist_to_move):
        key = (state, strategist_to_move)
        if color.get(key) == 2:
            return True
        if color.get(key) == 1:
            return False  # cycle: the strategist cannot force an end
        color[key] = 1
        if len(color) > states_limit:
            return False
        if strategist_to_move:
            mv = next_move(g, TokenPosition(state), lab)
            if mv is None:
                return False
            i, v = mv
            ok = visit(TokenPosition(state).moved(i, v).tokens, False)
        else:
            succ = moves(state)
            ok = bool(succ) and all(visit(s, True) for s in succ)
            if not succ:
                ok = True  # adversary stuck: strategist moved last
        color[key] = 2
        return ok

    return visit(start, True)


def test_next_move_soundness(rng):
    checked = 0
    for _ in range(60):
        g = random_digraph(rng, rng.randint(2, 7), rng.uniform(0.15, 0.5), loops=rng.random() < 0.5)
        lab = gamma(g)
        for k in (1, 2):
            table = minimax_table(g, k)
            for toks, label in table.items():
                pos = TokenPosition(toks)
                mv = next_move(g, pos, lab)
                if label == Outcome.P:
                    assert mv is None
                    continue
                after = table[pos.moved(*mv).tokens]
                if label == Outcome.N:
                    assert after == Outcome.P
                    assert strategy_wins(g, toks, lab, 4 * len(table) + 4)
                    checked += 1
                else:
                    assert after == Outcome.D
    assert checked > 100


def test_explore_bound():
    from cgsolve.errors import BoundExceeded

    g = Digraph(6, [(u, v) for u in range(6) for v in range(6)])
    with pytest.raises(BoundExceeded):
        explore((0, 0, 0), token_successors(g), max_states=10)
    with pytest.raises(BoundExceeded):
        label_minimax(g, TokenPosition([0, 0, 0]), max_states=10)
