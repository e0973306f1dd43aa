"""Finite digraphs on dense vertex indices, plus token placements on them.

Vertices are ``0..n-1``. Loops ``(u, u)`` are kept since they model passing;
parallel edges collapse on construction.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import InvalidInput


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset[tuple[int, int]]
    _succ: tuple[tuple[int, ...], ...] = field(repr=False, compare=False, default=())

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise InvalidInput(f"vertex count must be a nonnegative integer, got {n!r}")
        clean = set()
        for e in edges:
            if len(e) != 2:
                raise InvalidInput(f"edge must be a pair, got {e!r}")
            u, v = e
            for x in (u, v):
                if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                    raise InvalidInput(f"edge endpoint {x!r} out of range for n={n}")
            clean.add((u, v))
        succ: list[list[int]] = [[] for _ in range(n)]
        for u, v in sorted(clean):
            succ[u].append(v)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(clean))
        object.__setattr__(self, "_succ", tuple(tuple(s) for s in succ))

    def followers(self, u: int) -> tuple[int, ...]:
        """Sorted direct followers of ``u``."""
        self.check_vertex(u)
        return self._succ[u]

    @property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        return self._succ

    def check_vertex(self, u: Any) -> None:
        if not isinstance(u, int) or isinstance(u, bool) or not 0 <= u < self.n:
            raise InvalidInput(f"vertex {u!r} out of range for n={self.n}")

    def predecessors(self) -> list[list[int]]:
        pred: list[list[int]] = [[] for _ in range(self.n)]
        for u, vs in enumerate(self._succ):
            for v in vs:
                pred[v].append(u)
        return pred

    def __len__(self) -> int:
        return self.n


def followers(g: Digraph, u: int) -> frozenset[int]:
    return frozenset(g.followers(u))


def is_acyclic(g: Digraph) -> bool:
    """True iff ``g`` has no directed cycle; a loop counts as a cycle."""
    return topological_order(g) is not None


def topological_order(g: Digraph) -> list[int] | None:
    """Vertices ordered sinks-first (every follower precedes its parent).

    Returns None when the graph has a cycle.
    """
    outdeg = [len(s) for s in g.successors]
    pred = g.predecessors()
    stack = [u for u in range(g.n) if outdeg[u] == 0]
    order = []
    while stack:
        v = stack.pop()
        order.append(v)
        for u in pred[v]:
            outdeg[u] -= 1
            if outdeg[u] == 0:
                stack.append(u)
    return order if len(order) == g.n else None


@dataclass(frozen=True)
class TokenPosition:
    """A multiset of token locations, stored sorted."""

    tokens: tuple[int, ...]

    def __init__(self, tokens: Iterable[int] = ()):
        object.__setattr__(self, "tokens", tuple(sorted(tokens)))

    def validate(self, g: Digraph) -> None:
        for t in self.tokens:
            g.check_vertex(t)

    def moved(self, index: int, target: int) -> TokenPosition:
        toks = list(self.tokens)
        toks[index] = target
        return TokenPosition(toks)

    def counts(self) -> Counter:
        return Counter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


def _vertex_ref(x: Any, index: dict[str, int] | None, what: str) -> int:
    if isinstance(x, str):
        if index is None or x not in index:
            raise InvalidInput(f"unknown vertex name {x!r} in {what}")
        return index[x]
    if not isinstance(x, int) or isinstance(x, bool):
        raise InvalidInput(f"bad vertex reference {x!r} in {what}")
    return x


def graph_from_obj(obj: Any) -> tuple[Digraph, dict[str, Any]]:
    """Build a digraph from a decoded JSON object.

    Besides ``n`` and ``edges`` the object may carry ``names`` (one string
    per vertex, mapped to indices in order), ``tokens`` and ``occupancy``.
    The extra keys come back, resolved to indices, in the second element.
    """
    if not isinstance(obj, dict):
        raise InvalidInput("graph document must be a JSON object")
    names = obj.get("names")
    index = None
    if names is not None:
        if not isinstance(names, list) or len(set(names)) != len(names):
            raise InvalidInput("names must be a list of distinct strings")
        index = {str(nm): i for i, nm in enumerate(names)}
    n = obj.get("n", len(names) if names is not None else None)
    if n is None:
        raise InvalidInput("missing vertex count 'n'")
    if names is not None and n != len(names):
        raise InvalidInput("'n' disagrees with the length of 'names'")
    raw_edges = obj.get("edges", [])
    if not isinstance(raw_edges, list):
        raise InvalidInput("'edges' must be a list")
    edges = []
    for e in raw_edges:
        if not isinstance(e, list) or len(e) != 2:
            raise InvalidInput(f"edge must be a 2-element list, got {e!r}")
        edges.append((_vertex_ref(e[0], index, "edges"), _vertex_ref(e[1], index, "edges")))
    g = Digraph(n, edges)
    extra: dict[str, Any] = {}
    if names is not None:
        extra["names"] = [str(nm) for nm in names]
    if "tokens" in obj:
        toks = obj["tokens"]
        if not isinstance(toks, list):
            raise InvalidInput("'tokens' must be a list")
        pos = TokenPosition(_vertex_ref(t, index, "tokens") for t in toks)
        pos.validate(g)
        extra["tokens"] = pos
    if "occupancy" in obj:
        occ = obj["occupancy"]
        if not isinstance(occ, list) or len(occ) != n or any(b not in (0, 1) for b in occ):
            raise InvalidInput("'occupancy' must be a 0/1 list of length n")
        extra["occupancy"] = list(occ)
    return g, extra


def parse_digraph(text: str) -> Digraph:
    """Parse the JSON graph format ``{"n": int, "edges": [[u, v], ...]}``."""
    return parse_graph_document(text)[0]


def parse_graph_document(text: str) -> tuple[Digraph, dict[str, Any]]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON: {exc}") from exc
    return graph_from_obj(obj)


def scoring_graph(n: int, t: int) -> Digraph:
    """Vertices ``0..n``; vertex ``i`` moves to ``i-1 .. i-t`` (not below 0)."""
    if t < 1:
        raise InvalidInput("step bound t must be positive")
    edges = [(i, i - s) for i in range(n + 1) for s in range(1, t + 1) if i - s >= 0]
    return Digraph(n + 1, edges)
