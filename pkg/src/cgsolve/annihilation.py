"""Annihilation games: a token moving onto an occupied vertex removes both.

Positions are occupancy bitmasks (bit ``u`` set iff a token sits on ``u``).
A move along ``(u, v)`` maps a position ``x`` to ``x ^ (1 << u) ^ (1 << v)``,
which covers plain moves and annihilations alike; a loop is a pass.
Classification runs the gamma function on the explicitly expanded
annihilation graph, so it is exponential in the number of vertices.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .digraph import Digraph, TokenPosition
from .errors import BoundExceeded, InvalidInput
from .loopy import GammaLabeling, Outcome, classify_value, explore, gamma, next_move

DEFAULT_MAX_STATES = 1 << 20


def occupancy_mask(g: Digraph, bits: Sequence[int] | None = None, tokens: Iterable[int] | None = None) -> int:
    """Build a position from a 0/1 occupancy list or from distinct token vertices."""
    if bits is not None:
        if len(bits) != g.n or any(b not in (0, 1) for b in bits):
            raise InvalidInput("occupancy must be a 0/1 vector of length n")
        return sum(1 << u for u, b in enumerate(bits) if b)
    mask = 0
    for t in tokens or ():
        g.check_vertex(t)
        if mask >> t & 1:
            raise InvalidInput(f"two tokens on vertex {t}; annihilation allows at most one")
        mask |= 1 << t
    return mask


def mask_vertices(mask: int) -> list[int]:
    out = []
    u = 0
    while mask:
        if mask & 1:
            out.append(u)
        mask >>= 1
        u += 1
    return out


def ann_successors(g: Digraph, pos: int) -> set[int]:
    out = set()
    for u in mask_vertices(pos):
        for v in g.successors[u]:
            out.add(pos ^ (1 << u) ^ (1 << v) if u != v else pos)
    return out


def _sorted_successors(g: Digraph):
    return lambda pos: sorted(ann_successors(g, pos))


def ann_game_graph(g: Digraph, start: int, max_states: int = DEFAULT_MAX_STATES) -> tuple[Digraph, list[int]]:
    """Reachable part of the annihilation graph from ``start``.

    Returns the expanded digraph (vertex 0 is ``start``) and the occupancy
    mask of each of its vertices.
    """
    if start < 0 or start >> g.n:
        raise InvalidInput("occupancy mask has bits outside the vertex range")
    states, succ = explore(start, _sorted_successors(g), max_states)
    edges = [(i, j) for i, row in enumerate(succ) for j in row]
    return Digraph(len(states), edges), states


def full_annihilation_graph(g: Digraph) -> Digraph:
    """All ``2**n`` occupancy vectors with their moves; vertex id = mask."""
    edges = [(x, y) for x in range(1 << g.n) for y in ann_successors(g, x)]
    return Digraph(1 << g.n, edges)


def ann_classify(g: Digraph, pos: int, max_states: int = DEFAULT_MAX_STATES) -> Outcome:
    expanded, _ = ann_game_graph(g, pos, max_states)
    return classify_value(gamma(expanded)[0])


def ann_classify_all(g: Digraph, max_states: int = DEFAULT_MAX_STATES) -> list[Outcome]:
    """Label of every occupancy mask, from one gamma pass over the full graph."""
    if 1 << g.n > max_states:
        raise BoundExceeded(f"2**{g.n} annihilation states exceed {max_states}")
    lab = gamma(full_annihilation_graph(g))
    return [classify_value(v) for v in lab.gamma]


def _edge_for(g: Digraph, before: int, after: int) -> tuple[int, int]:
    if before == after:
        return min((u, u) for u in mask_vertices(before) if u in g.successors[u])
    a, b = mask_vertices(before ^ after)
    cands = [(u, v) for u, v in ((a, b), (b, a)) if before >> u & 1 and v in g.successors[u]]
    return min(cands)


def ann_best_move(
    g: Digraph, pos: int, max_states: int = DEFAULT_MAX_STATES
) -> tuple[int, int] | None:
    """Optimal move as an edge ``(from, to)`` of ``g``; None from a P-position."""
    expanded, states = ann_game_graph(g, pos, max_states)
    lab: GammaLabeling = gamma(expanded)
    mv = next_move(expanded, TokenPosition([0]), lab)
    if mv is None:
        return None
    return _edge_for(g, pos, states[mv[1]])
