"""Sprague-Grundy theory on finite acyclic digraphs."""

from __future__ import annotations

from enum import Enum
from functools import reduce
from operator import xor
from typing import Iterable

from .digraph import Digraph, TokenPosition, topological_order
from .errors import CyclicGraphError, InvalidInput


class PN(str, Enum):
    P = "P"
    N = "N"

    def __str__(self) -> str:
        return self.value


def mex(values: Iterable[int]) -> int:
    """Smallest nonnegative integer not in ``values``."""
    seen = set(values)
    m = 0
    while m in seen:
        m += 1
    return m


def nim_sum(values: Iterable[int]) -> int:
    return reduce(xor, values, 0)


def grundy(g: Digraph) -> list[int]:
    """Grundy value of every vertex, computed followers-first.

    Raises:
        CyclicGraphError: ``g`` has a cycle or a loop; use :mod:`cgsolve.loopy`.
    """
    order = topological_order(g)
    if order is None:
        raise CyclicGraphError("grundy requires an acyclic digraph; use the loopy module")
    values = [0] * g.n
    succ = g.successors
    for u in order:
        values[u] = mex(values[v] for v in succ[u])
    return values


def label_pn(g: Digraph) -> list[PN]:
    return [PN.P if x == 0 else PN.N for x in grundy(g)]


def _sum_value(g: Digraph, pos: TokenPosition, labels: list[int] | None) -> tuple[list[int], int]:
    pos.validate(g)
    if labels is None:
        labels = grundy(g)
    return labels, nim_sum(labels[t] for t in pos.tokens)


def classify_sum(g: Digraph, pos: TokenPosition, labels: list[int] | None = None) -> PN:
    """P iff the token Grundy values XOR to zero."""
    _, total = _sum_value(g, pos, labels)
    return PN.P if total == 0 else PN.N


def winning_move(
    g: Digraph, pos: TokenPosition, labels: list[int] | None = None
) -> tuple[int, int] | None:
    """A move ``(token index, target vertex)`` to a P-position, or None from P.

    Only tokens whose value has a 1 in the leading bit of the total can
    be reduced; among the resulting moves the lexicographically smallest
    ``(index, target)`` wins.
    """
    labels, total = _sum_value(g, pos, labels)
    if total == 0:
        return None
    top = 1 << (total.bit_length() - 1)
    for i, u in enumerate(pos.tokens):
        gu = labels[u]
        if not gu & top:
            continue
        want = gu ^ total
        for v in g.successors[u]:
            if labels[v] == want:
                return i, v
    raise AssertionError("no winning move from an N-position; labeling is inconsistent")


def scoring_g(n: int, t: int) -> int:
    """Grundy value of score ``n`` when each move subtracts 1..t."""
    if t < 1:
        raise InvalidInput("step bound t must be positive")
    if n < 0:
        raise InvalidInput("score must be nonnegative")
    return n % (t + 1)
