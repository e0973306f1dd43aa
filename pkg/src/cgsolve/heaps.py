"""Take-away games on several piles: Nim plus simultaneous-removal vectors.

The brute-force engine (:func:`take_table` / :func:`take_g`) handles any
move set and serves as the oracle for the closed forms in this module:
Wythoff pairs, the odd-set (Nimdi) criterion, cyclic and 2^k Nimhoff.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import isqrt
from typing import Iterable, Iterator, Sequence

import numpy as np

from .classical import mex, nim_sum
from .errors import BoundExceeded, InvalidInput

DEFAULT_MAX_POSITIONS = 2_000_000

Vector = tuple[int, ...]


@dataclass(frozen=True)
class Family:
    """A parametrized family of removal vectors, instantiated per position.

    Kinds:
        ``diag``: ``(k, k, ..., k)`` for every ``k >= 1``.
        ``shift``: ``(k, k+1)`` and ``(k+1, k)`` for every ``k >= 1`` (two piles).
        ``xor_zero``: ``(k, l, m)`` with ``k ^ l ^ m == 0`` and ``k+l+m > 0`` (three piles).
        ``sum_below``: every vector with ``0 < sum < param``.
        ``pair``: ``param`` from each of two distinct piles.
    """

    kind: str
    param: int = 0

    def instances(self, pos: Sequence[int]) -> Iterator[Vector]:
        n = len(pos)
        if self.kind == "diag":
            for k in range(1, min(pos, default=0) + 1):
                yield (k,) * n
        elif self.kind == "shift":
            if n != 2:
                raise InvalidInput("shift family needs exactly two piles")
            a, b = pos
            for k in range(1, max(a, b) + 1):
                if k <= a and k + 1 <= b:
                    yield (k, k + 1)
                if k + 1 <= a and k <= b:
                    yield (k + 1, k)
        elif self.kind == "xor_zero":
            if n != 3:
                raise InvalidInput("xor_zero family needs exactly three piles")
            a, b, c = pos
            for k in range(a + 1):
                for l in range(b + 1):
                    m = k ^ l
                    if m <= c and k + l + m > 0:
                        yield (k, l, m)
        elif self.kind == "sum_below":
            yield from _vectors_with_sum_below(pos, self.param)
        elif self.kind == "pair":
            d = self.param
            for i, j in itertools.combinations(range(n), 2):
                if pos[i] >= d and pos[j] >= d:
                    v = [0] * n
                    v[i] = v[j] = d
                    yield tuple(v)
        else:
            raise InvalidInput(f"unknown move family {self.kind!r}")


def _vectors_with_sum_below(pos: Sequence[int], h: int) -> Iterator[Vector]:
    def rec(i: int, budget: int) -> Iterator[list[int]]:
        if i == len(pos):
            yield []
            return
        for b in range(min(pos[i], budget) + 1):
            for rest in rec(i + 1, budget - b):
                yield [b] + rest

    for v in rec(0, h - 1):
        if sum(v) > 0:
            yield tuple(v)


@dataclass(frozen=True)
class MoveSet:
    """Legal moves of a Take game.

    Removing any positive amount from a single pile is always allowed;
    ``vectors`` and ``families`` add simultaneous removals.
    """

    n_piles: int
    vectors: tuple[Vector, ...] = ()
    families: tuple[Family, ...] = field(default=())

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.n_piles:
                raise InvalidInput(f"vector {v} does not match {self.n_piles} piles")
            if any(b < 0 for b in v) or sum(v) <= 0:
                raise InvalidInput(f"removal vector {v} must be nonnegative with positive sum")

    def with_vectors(self, extra: Iterable[Sequence[int]]) -> MoveSet:
        vecs = dict.fromkeys(self.vectors)
        vecs.update(dict.fromkeys(tuple(v) for v in extra))
        return MoveSet(self.n_piles, tuple(vecs), self.families)

    def vector_moves(self, pos: Sequence[int]) -> Iterator[Vector]:
        for v in self.vectors:
            if all(b <= a for a, b in zip(pos, v)):
                yield v
        for fam in self.families:
            yield from fam.instances(pos)

    def followers(self, pos: Sequence[int]) -> Iterator[Vector]:
        pos = tuple(pos)
        for i, a in enumerate(pos):
            for r in range(a):
                yield pos[:i] + (r,) + pos[i + 1 :]
        for v in self.vector_moves(pos):
            yield tuple(a - b for a, b in zip(pos, v))


def nim_moves(n_piles: int = 2) -> MoveSet:
    return MoveSet(n_piles)


def wythoff_moves() -> MoveSet:
    return MoveSet(2, families=(Family("diag"),))


def nimdi_shift_moves() -> MoveSet:
    return MoveSet(2, families=(Family("shift"),))


def cyclic_nimhoff_moves(n_piles: int, h: int) -> MoveSet:
    return MoveSet(n_piles, families=(Family("sum_below", h),))


def pow2k_nimhoff_moves(n_piles: int, k: int) -> MoveSet:
    if k < 1:
        raise InvalidInput("k must be a positive integer")
    return MoveSet(n_piles, families=(Family("pair", 1 << k),))


def wythoff3_moves() -> MoveSet:
    return MoveSet(3, families=(Family("xor_zero"),))


def take_table(moves: MoveSet, bounds: Sequence[int], max_positions: int = DEFAULT_MAX_POSITIONS) -> np.ndarray:
    """Grundy values of every position ``pos <= bounds`` (componentwise).

    Positions are filled in lexicographic order, so each follower, being
    componentwise no larger, is known before it is needed.
    """
    if len(bounds) != moves.n_piles:
        raise InvalidInput(f"expected {moves.n_piles} pile bounds, got {len(bounds)}")
    if any(b < 0 for b in bounds):
        raise InvalidInput("pile sizes must be nonnegative")
    shape = tuple(b + 1 for b in bounds)
    if int(np.prod(shape, dtype=object)) > max_positions:
        raise BoundExceeded(f"table of shape {shape} exceeds {max_positions} positions")
    table = np.zeros(shape, dtype=np.int64)
    for pos in itertools.product(*(range(s) for s in shape)):
        table[pos] = mex(int(table[f]) for f in moves.followers(pos))
    return table


def take_g(pos: Sequence[int], moves: MoveSet, max_positions: int = DEFAULT_MAX_POSITIONS) -> int:
    """Grundy value of one Take-game position by brute-force mex recursion."""
    pos = tuple(pos)
    if any(a < 0 for a in pos):
        raise InvalidInput("pile sizes must be nonnegative")
    return int(take_table(moves, pos, max_positions)[pos])


def nim_p(pos: Sequence[int]) -> bool:
    return nim_sum(pos) == 0


def wythoff_p_pair(i: int) -> tuple[int, int]:
    """The ``i``-th Wythoff P-position ``(floor(i*phi), floor(i*phi**2))``.

    Uses ``floor(i*phi) == (i + isqrt(5*i*i)) // 2``, exact for all ``i``.
    """
    if i < 0:
        raise InvalidInput("index must be nonnegative")
    a = (i + isqrt(5 * i * i)) // 2
    return a, a + i


def is_odd_vector(b: Sequence[int]) -> bool:
    """Whether ``sum(b) / 2**m`` is odd, ``2**m`` being the largest power of two dividing every entry."""
    if any(x < 0 for x in b) or sum(b) == 0:
        raise InvalidInput("removal vector must be nonnegative and nonzero")
    m = min((x & -x).bit_length() - 1 for x in b if x)
    return (sum(b) >> m) & 1 == 1


@dataclass
class NimdiVerdict:
    criterion: bool
    brute_force_agrees: bool
    witness: tuple[int, ...] | None
    witness_g: int | None = None


def instantiated_vectors(moves: MoveSet, bound: int) -> list[Vector]:
    """Every removal vector usable somewhere with all piles ``<= bound``."""
    top = (bound,) * moves.n_piles
    return sorted(set(moves.vector_moves(top)))


def nimdi_verdict(moves: MoveSet, bound: int, max_positions: int = DEFAULT_MAX_POSITIONS) -> NimdiVerdict:
    """Compare the odd-set criterion with brute force on all piles ``<= bound``."""
    criterion = all(is_odd_vector(v) for v in instantiated_vectors(moves, bound))
    table = take_table(moves, (bound,) * moves.n_piles, max_positions)
    witness = None
    witness_g = None
    for pos in itertools.product(range(bound + 1), repeat=moves.n_piles):
        if table[pos] != nim_sum(pos):
            witness, witness_g = pos, int(table[pos])
            break
    return NimdiVerdict(criterion, witness is None, witness, witness_g)


def cyclic_nimhoff_g(pos: Sequence[int], h: int) -> int:
    if h < 1:
        raise InvalidInput("h must be a positive integer")
    return h * nim_sum(a // h for a in pos) + sum(pos) % h


def k_nim_sum(a: int, b: int, k: int) -> int:
    """XOR of ``a`` and ``b``, with bit 0 flipped when both have bit ``k`` set."""
    if k < 1:
        raise InvalidInput("k must be a positive integer")
    return a ^ b ^ ((a >> k) & (b >> k) & 1)


def pow2k_nimhoff_g(pos: Sequence[int], k: int) -> int:
    if k < 1:
        raise InvalidInput("k must be a positive integer")
    acc = 0
    for a in pos:
        acc = k_nim_sum(acc, a, k)
    return acc


def wythoff3_p(limit: int, max_limit: int = 120) -> set[tuple[int, int, int]]:
    """P-positions ``a <= b <= c <= limit`` of three-pile Wythoff.

    Scans the cube in lexicographic order; every position not yet known to
    be N is P, and all positions one move above it are then marked N.
    """
    if limit < 0:
        raise InvalidInput("limit must be nonnegative")
    if limit > max_limit:
        raise BoundExceeded(f"limit {limit} exceeds {max_limit}")
    size = limit + 1
    is_n = np.zeros((size, size, size), dtype=bool)
    ks, ls = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
    ms = ks ^ ls
    found = set()
    for a, b, c in itertools.product(range(size), repeat=3):
        if is_n[a, b, c]:
            continue
        if a <= b <= c:
            found.add((a, b, c))
        is_n[a + 1 :, b, c] = True
        is_n[a, b + 1 :, c] = True
        is_n[a, b, c + 1 :] = True
        ok = (ks <= limit - a) & (ls <= limit - b) & (ms <= limit - c)
        ok[0, 0] = False
        is_n[a + ks[ok], b + ls[ok], c + ms[ok]] = True
    return found


def p_positions(moves: MoveSet, bound: int, max_positions: int = DEFAULT_MAX_POSITIONS) -> list[Vector]:
    table = take_table(moves, (bound,) * moves.n_piles, max_positions)
    return [tuple(int(x) for x in p) for p in np.argwhere(table == 0)]


def adjoin_p_as_moves(
    base: MoveSet, rounds: int, bound: int, max_positions: int = DEFAULT_MAX_POSITIONS
) -> list[tuple[MoveSet, list[Vector]]]:
    """Iterate: add the current game's nonzero P-positions as removal vectors.

    Entry ``r`` holds round ``r+1``'s move set and its P-positions with all
    piles ``<= bound``.
    """
    if base.n_piles != 2:
        raise InvalidInput("P-position adjoining is defined for two-pile games")
    if rounds < 1:
        raise InvalidInput("rounds must be positive")
    out = []
    moves = base
    for _ in range(rounds):
        ps = p_positions(moves, bound, max_positions)
        out.append((moves, ps))
        moves = moves.with_vectors(p for p in ps if sum(p) > 0)
    return out
