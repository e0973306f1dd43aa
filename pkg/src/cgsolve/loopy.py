"""Generalized Sprague-Grundy (gamma) function for digraphs with cycles.

A vertex value is either a finite nonnegative integer (:class:`Fin`) or
infinity tagged with the finite values of its followers (:class:`Inf`).
Token sums are evaluated with the generalized Nim-sum and classified into
P, N or D positions.  :func:`label_minimax` is an independent retrograde
solver on the expanded game-graph, used to cross-check the value theory.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Callable, Hashable, Iterable, Sequence, Union

from .classical import mex
from .digraph import Digraph, TokenPosition
from .errors import BoundExceeded


class Outcome(str, Enum):
    P = "P"
    N = "N"
    D = "D"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class Fin:
    m: int

    def __str__(self) -> str:
        return str(self.m)


@dataclass(frozen=True)
class Inf:
    """Infinite value; ``K`` holds the finite follower values, sorted."""

    K: tuple[int, ...] = ()

    def __init__(self, K: Iterable[int] = ()):
        object.__setattr__(self, "K", tuple(sorted(set(K))))

    def __str__(self) -> str:
        return "inf(" + ",".join(map(str, self.K)) + ")"


GammaValue = Union[Fin, Inf]


def parse_gamma(text: str) -> GammaValue:
    text = text.strip()
    if text.startswith("inf(") and text.endswith(")"):
        body = text[4:-1].strip()
        return Inf(int(x) for x in body.split(",")) if body else Inf()
    return Fin(int(text))


def gen_nim_sum(a: GammaValue, b: GammaValue) -> GammaValue:
    if isinstance(a, Fin) and isinstance(b, Fin):
        return Fin(a.m ^ b.m)
    if isinstance(a, Inf) and isinstance(b, Inf):
        return Inf()
    x, k = (a, b) if isinstance(a, Fin) else (b, a)
    return Inf(l ^ x.m for l in k.K)


def gen_nim_sum_all(values: Iterable[GammaValue]) -> GammaValue:
    return reduce(gen_nim_sum, values, Fin(0))


def classify_value(v: GammaValue) -> Outcome:
    if isinstance(v, Fin):
        return Outcome.P if v.m == 0 else Outcome.N
    return Outcome.N if 0 in v.K else Outcome.D


@dataclass(frozen=True)
class GammaLabeling:
    gamma: tuple[GammaValue, ...]
    counter: dict[int, int]

    def __getitem__(self, u: int) -> GammaValue:
        return self.gamma[u]


def gamma(g: Digraph) -> GammaLabeling:
    """Compute the gamma function and a counter function of ``g``.

    Stage ``i`` repeatedly labels ``i`` every unlabeled vertex that has no
    follower labeled ``i`` and whose unlabeled or infinite followers all
    have a follower labeled ``i``. Vertices still unlabeled and without an
    ``i``-labeled follower at the end of the stage become infinite. The
    counter of a finite vertex is its position in the labeling sequence,
    so counters increase with the finite value.
    """
    n = g.n
    succ = g.successors
    pred = g.predecessors()
    UNL, FIN, INF = 0, 1, 2
    status = [UNL] * n
    value = [-1] * n
    counter: dict[int, int] = {}
    remaining = n
    stage = 0
    while remaining:
        has_i = [False] * n
        bad = [sum(1 for v in succ[u] if status[v] != FIN) for u in range(n)]
        heap = [u for u in range(n) if status[u] == UNL and bad[u] == 0]
        heapq.heapify(heap)
        while heap:
            u = heapq.heappop(heap)
            if status[u] != UNL or has_i[u] or bad[u]:
                continue
            status[u], value[u] = FIN, stage
            counter[u] = len(counter)
            remaining -= 1
            for p in pred[u]:
                bad[p] -= 1
                if has_i[p]:
                    continue
                has_i[p] = True
                if status[p] == FIN:
                    continue
                for q in pred[p]:
                    bad[q] -= 1
                    if bad[q] == 0 and status[q] == UNL and not has_i[q]:
                        heapq.heappush(heap, q)
        for u in range(n):
            if status[u] == UNL and not has_i[u]:
                status[u] = INF
                remaining -= 1
        stage += 1
    labels: list[GammaValue] = []
    for u in range(n):
        if status[u] == FIN:
            labels.append(Fin(value[u]))
        else:
            labels.append(Inf(value[v] for v in succ[u] if status[v] == FIN))
    return GammaLabeling(tuple(labels), counter)


def check_gamma(g: Digraph, lab: GammaLabeling) -> list[str]:
    """Return violations of the defining conditions (empty when valid)."""
    problems = []
    for u in range(g.n):
        val = lab[u]
        fs = g.successors[u]
        finite = {lab[v].m for v in fs if isinstance(lab[v], Fin)}
        if isinstance(val, Fin):
            if val.m != mex(finite):
                problems.append(f"{u}: value {val} is not the mex of {sorted(finite)}")
            for v in fs:
                if isinstance(lab[v], Inf) and not any(lab[w] == val for w in g.successors[v]):
                    problems.append(f"{u}: infinite follower {v} cannot return to {val}")
            if u not in lab.counter:
                problems.append(f"{u}: finite vertex without counter")
        else:
            if set(val.K) != finite:
                problems.append(f"{u}: K={val.K} but finite followers are {sorted(finite)}")
            target = Fin(mex(finite))
            if not any(
                isinstance(lab[v], Inf) and not any(lab[w] == target for w in g.successors[v])
                for v in fs
            ):
                problems.append(f"{u}: infinite without a qualifying follower")
    return problems


def position_value(g: Digraph, pos: TokenPosition, lab: GammaLabeling | None = None) -> GammaValue:
    pos.validate(g)
    lab = lab or gamma(g)
    return gen_nim_sum_all(lab[t] for t in pos.tokens)


def classify_position(g: Digraph, pos: TokenPosition, lab: GammaLabeling | None = None) -> Outcome:
    return classify_value(position_value(g, pos, lab))


def next_move(
    g: Digraph, pos: TokenPosition, lab: GammaLabeling | None = None
) -> tuple[int, int] | None:
    """Optimal move ``(token index, target vertex)`` or None from a P-position.

    From N, the move to a P-position with the smallest resulting sum of token
    counters is chosen; this makes the counter sum drop across every pair of
    moves, so the win is forced in finitely many moves. From D, the first move
    that keeps a draw. Remaining ties go to the smallest ``(index, target)``.
    Returns None from a D-position without moves (cannot happen for a true D).
    """
    pos.validate(g)
    lab = lab or gamma(g)
    vals = [lab[t] for t in pos.tokens]
    here = classify_value(gen_nim_sum_all(vals))
    if here == Outcome.P:
        return None
    best = None
    seen_vertices = set()
    for i, u in enumerate(pos.tokens):
        if u in seen_vertices:
            continue
        seen_vertices.add(u)
        rest = gen_nim_sum_all(vals[:i] + vals[i + 1 :])
        others_counter = sum(lab.counter.get(t, 0) for j, t in enumerate(pos.tokens) if j != i)
        for v in g.successors[u]:
            after = classify_value(gen_nim_sum(rest, lab[v]))
            if here == Outcome.N and after == Outcome.P:
                key = (others_counter + lab.counter[v], i, v)
            elif here == Outcome.D and after == Outcome.D:
                key = (0, i, v)
            else:
                continue
            if best is None or key < best:
                best = key
    return None if best is None else (best[1], best[2])


def retrograde(succ: Sequence[Sequence[int]]) -> list[Outcome]:
    """P/N/D labels of an explicit game-graph by backward induction.

    Sinks are P; a state is N once some follower is P and P once all its
    followers are N. States never labeled are draws.
    """
    n = len(succ)
    pred: list[list[int]] = [[] for _ in range(n)]
    deg = [0] * n
    for u, vs in enumerate(succ):
        uniq = set(vs)
        deg[u] = len(uniq)
        for v in uniq:
            pred[v].append(u)
    label: list[Outcome | None] = [None] * n
    queue = deque(u for u in range(n) if deg[u] == 0)
    for u in queue:
        label[u] = Outcome.P
    while queue:
        x = queue.popleft()
        for p in pred[x]:
            if label[p] is not None:
                continue
            if label[x] == Outcome.P:
                label[p] = Outcome.N
                queue.append(p)
            else:
                deg[p] -= 1
                if deg[p] == 0:
                    label[p] = Outcome.P
                    queue.append(p)
    return [Outcome.D if x is None else x for x in label]


def explore(
    start: Hashable, successors: Callable[[Hashable], Iterable[Hashable]], max_states: int
) -> tuple[list[Hashable], list[list[int]]]:
    """Breadth-first enumeration of every state reachable from ``start``."""
    index = {start: 0}
    states = [start]
    succ: list[list[int]] = []
    i = 0
    while i < len(states):
        row = []
        for t in successors(states[i]):
            j = index.get(t)
            if j is None:
                if len(states) >= max_states:
                    raise BoundExceeded(f"expanded game-graph exceeds {max_states} states")
                j = index[t] = len(states)
                states.append(t)
            row.append(j)
        succ.append(row)
        i += 1
    return states, succ


def token_successors(g: Digraph) -> Callable[[tuple[int, ...]], list[tuple[int, ...]]]:
    succ = g.successors

    def moves(state: tuple[int, ...]) -> list[tuple[int, ...]]:
        out = []
        prev = None
        for i, u in enumerate(state):
            if u == prev:
                continue
            prev = u
            for v in succ[u]:
                out.append(tuple(sorted(state[:i] + (v,) + state[i + 1 :])))
        return out

    return moves


DEFAULT_MAX_STATES = 2_000_000


def label_minimax(g: Digraph, pos: TokenPosition, max_states: int = DEFAULT_MAX_STATES) -> Outcome:
    """Exact label of ``pos`` by retrograde analysis of its reachable states."""
    pos.validate(g)
    _, succ = explore(pos.tokens, token_successors(g), max_states)
    return retrograde(succ)[0]


def minimax_table(g: Digraph, k: int, max_states: int = DEFAULT_MAX_STATES) -> dict[tuple[int, ...], Outcome]:
    """Labels of every placement of ``k`` tokens, from one retrograde pass."""
    from itertools import combinations_with_replacement

    states = list(combinations_with_replacement(range(g.n), k))
    if len(states) > max_states:
        raise BoundExceeded(f"{len(states)} placements exceed {max_states}")
    index = {s: i for i, s in enumerate(states)}
    moves = token_successors(g)
    succ = [[index[t] for t in moves(s)] for s in states]
    return dict(zip(states, retrograde(succ)))
