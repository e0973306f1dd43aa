import pytest

from cgsolve.annihilation import (
    ann_best_move,
    ann_classify,
    ann_classify_all,
    ann_game_graph,
    ann_successors,
    full_annihilation_graph,
    mask_vertices,
    occupancy_mask,
)
from cgsolve.classical import classify_sum, grundy
from cgsolve.digraph import Digraph, TokenPosition
from cgsolve.errors import BoundExceeded, InvalidInput
from cgsolve.loopy import Outcome, classify_position, retrograde

from conftest import random_dag, random_digraph

CYCLE4 = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def test_successor_rules():
    g = Digraph(3, [(0, 1), (1, 2), (2, 2)])
    assert ann_successors(g, 0b001) == {0b010}
    assert ann_successors(g, 0b011) == {0b000, 0b101}
    assert ann_successors(g, 0) == set()
    assert ann_successors(g, 0b100) == {0b100}


def test_xor_move_is_involution(rng):
    for _ in range(200):
        n = rng.randint(2, 10)
        pos = rng.getrandbits(n)
        u, v = rng.sample(range(n), 2)
        flip = (1 << u) ^ (1 << v)
        assert pos ^ flip ^ flip == pos


def test_occupancy_inputs():
    assert occupancy_mask(CYCLE4, bits=[1, 0, 1, 0]) == 0b0101
    assert occupancy_mask(CYCLE4, tokens=[2, 0]) == 0b0101
    with pytest.raises(InvalidInput):
        occupancy_mask(CYCLE4, tokens=[1, 1])
    with pytest.raises(InvalidInput):
        occupancy_mask(CYCLE4, bits=[1, 0])


def test_cycle_parity_components():
    full = full_annihilation_graph(CYCLE4)
    even = [x for x in range(16) if bin(x).count("1") % 2 == 0]
    assert len(even) == 8
    assert all(bin(x).count("1") % 2 == bin(y).count("1") % 2 for x, y in full.edges)


def test_game_graph_small_cases():
    g, states = ann_game_graph(CYCLE4, 0)
    assert g.n == 1 and not g.edges and states == [0]
    dag = Digraph(4, [(3, 1), (1, 0), (3, 2), (2, 0)])
    g, states = ann_game_graph(dag, 1 << 3)
    assert sorted(mask_vertices(s)[0] for s in states) == [0, 1, 2, 3]
    assert len(g.edges) == len(dag.edges)


def test_four_cycle_opposite_tokens():
    pos = occupancy_mask(CYCLE4, tokens=[0, 2])
    assert ann_classify(CYCLE4, pos) == Outcome.P
    assert ann_best_move(CYCLE4, pos) is None
    assert classify_position(CYCLE4, TokenPosition([0, 2])) == Outcome.D
    # adjacent tokens: annihilate at once
    assert ann_classify(CYCLE4, occupancy_mask(CYCLE4, tokens=[0, 1])) == Outcome.N
    assert ann_best_move(CYCLE4, occupancy_mask(CYCLE4, tokens=[0, 1])) == (0, 1)


def test_dag_follower_pair_matches_classical():
    dag = Digraph(4, [(1, 0), (2, 1), (3, 2), (3, 0)])
    pos = TokenPosition([3, 2])
    assert ann_classify(dag, occupancy_mask(dag, tokens=[3, 2])).value == classify_sum(dag, pos).value


def test_ann_classify_matches_retrograde(rng):
    for _ in range(40):
        g = random_digraph(rng, rng.randint(1, 6), rng.uniform(0.1, 0.5))
        full = full_annihilation_graph(g)
        oracle = retrograde(full.successors)
        labels = ann_classify_all(g)
        assert labels == oracle
        for pos in rng.sample(range(1 << g.n), min(8, 1 << g.n)):
            assert ann_classify(g, pos) == oracle[pos]


def test_best_move_properties(rng):
    for _ in range(30):
        g = random_digraph(rng, rng.randint(2, 6), rng.uniform(0.15, 0.5))
        labels = ann_classify_all(g)
        for pos in range(1 << g.n):
            mv = ann_best_move(g, pos)
            if labels[pos] == Outcome.P:
                assert mv is None
                continue
            u, v = mv
            assert pos >> u & 1 and v in g.successors[u]
            after = pos if u == v else pos ^ (1 << u) ^ (1 << v)
            want = Outcome.P if labels[pos] == Outcome.N else Outcome.D
            assert labels[after] == want


def test_acyclic_equivalence(rng):
    for _ in range(30):
        g = random_dag(rng, rng.randint(1, 7), rng.uniform(0.1, 0.6))
        values = grundy(g)
        labels = ann_classify_all(g)
        for pos in range(1 << g.n):
            toks = TokenPosition(mask_vertices(pos))
            assert labels[pos].value == classify_sum(g, toks, values).value


def test_bound():
    g = Digraph(12, [(i, (i + 1) % 12) for i in range(12)])
    with pytest.raises(BoundExceeded):
        ann_classify(g, 0b101010101010, max_states=50)
    with pytest.raises(BoundExceeded):
        ann_classify_all(g, max_states=1000)
