"""Finite partizan games ``{L | R}``: sums, negation, order and number values.

Games are hash-consed, so structurally equal games are the same object and
the comparison memo stays small. Values are compared with :func:`leq`;
canonical forms are never computed.
"""

from __future__ import annotations

import random
import sys
from enum import Enum
from fractions import Fraction
from typing import Iterable

from .errors import BoundExceeded, InvalidInput

if sys.getrecursionlimit() < 20_000:
    sys.setrecursionlimit(20_000)


class PGame:
    __slots__ = ("left", "right", "_hash", "__weakref__")

    left: frozenset[PGame]
    right: frozenset[PGame]

    def __new__(cls, left: Iterable[PGame] = (), right: Iterable[PGame] = ()):
        lf, rt = frozenset(left), frozenset(right)
        key = (lf, rt)
        hit = _interned.get(key)
        if hit is not None:
            return hit
        self = object.__new__(cls)
        self.left, self.right = lf, rt
        self._hash = hash(key)
        _interned[key] = self
        return self

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return self is other

    def __repr__(self) -> str:
        return f"PGame({format_game(self)})"


_interned: dict[tuple[frozenset, frozenset], PGame] = {}
_leq_memo: dict[tuple[PGame, PGame], bool] = {}
_neg_memo: dict[PGame, PGame] = {}
_add_memo: dict[tuple[PGame, PGame], PGame] = {}

ZERO = PGame()
STAR = PGame([ZERO], [ZERO])


def clear_caches() -> None:
    """Drop comparison/arithmetic memos (interned games stay valid)."""
    _leq_memo.clear()
    _neg_memo.clear()
    _add_memo.clear()


class OutcomeClass(str, Enum):
    LEFT = "LeftWins"
    RIGHT = "RightWins"
    FIRST = "FirstWins"
    SECOND = "SecondWins"

    def __str__(self) -> str:
        return self.value


def neg(g: PGame) -> PGame:
    hit = _neg_memo.get(g)
    if hit is None:
        hit = PGame((neg(r) for r in g.right), (neg(l) for l in g.left))
        _neg_memo[g] = hit
    return hit


def add(g: PGame, h: PGame) -> PGame:
    if g is ZERO:
        return h
    if h is ZERO:
        return g
    key = (g, h)
    hit = _add_memo.get(key)
    if hit is None:
        left = [add(gl, h) for gl in g.left] + [add(g, hl) for hl in h.left]
        right = [add(gr, h) for gr in g.right] + [add(g, hr) for hr in h.right]
        hit = PGame(left, right)
        _add_memo[key] = hit
    return hit


def leq(x: PGame, y: PGame) -> bool:
    """``x <= y``: no ``x^L`` has ``y <= x^L`` and no ``y^R`` has ``y^R <= x``."""
    key = (x, y)
    hit = _leq_memo.get(key)
    if hit is None:
        hit = not any(leq(y, xl) for xl in x.left) and not any(leq(yr, x) for yr in y.right)
        _leq_memo[key] = hit
    return hit


def lf(x: PGame, y: PGame) -> bool:
    """``x`` is less than or fuzzy with ``y``."""
    return not leq(y, x)


def equal(x: PGame, y: PGame) -> bool:
    return leq(x, y) and leq(y, x)


def outcome(g: PGame) -> OutcomeClass:
    le, ge = leq(g, ZERO), leq(ZERO, g)
    if le and ge:
        return OutcomeClass.SECOND
    if ge:
        return OutcomeClass.LEFT
    if le:
        return OutcomeClass.RIGHT
    return OutcomeClass.FIRST


def birthday(g: PGame, _memo: dict | None = None) -> int:
    memo = {} if _memo is None else _memo
    if g not in memo:
        memo[g] = 1 + max((birthday(o, memo) for o in g.left | g.right), default=-1)
    return memo[g]


_int_memo: dict[int, PGame] = {0: ZERO}


def integer(n: int) -> PGame:
    if n in _int_memo:
        return _int_memo[n]
    for k in range(1, abs(n) + 1):
        if k not in _int_memo:
            _int_memo[k] = PGame([_int_memo[k - 1]], [])
        if -k not in _int_memo:
            _int_memo[-k] = PGame([], [_int_memo[-k + 1]])
    return _int_memo[n]


def number(q: Fraction | int) -> PGame:
    """Canonical game of a dyadic rational."""
    q = Fraction(q)
    den = q.denominator
    if den & (den - 1):
        raise InvalidInput(f"{q} is not a dyadic rational")
    if den == 1:
        return integer(int(q))
    step = Fraction(1, den)
    return PGame([number(q - step)], [number(q + step)])


def number_value(g: PGame) -> Fraction | None:
    """Number equal to ``g`` via the simplest number strictly between its options.

    The numbers above every left option form an up-set and those below
    every right option a down-set, so the walk down the binary tree of
    dyadics (integers outward from 0, then bisection) meets the simplest
    fitting number first. Returns None when no number fits or when the
    fitting number is not equal to ``g`` (``g`` is not a number).
    """

    def above_left(z: Fraction) -> bool:
        zg = number(z)
        return all(lf(xl, zg) for xl in g.left)

    def below_right(z: Fraction) -> bool:
        zg = number(z)
        return all(lf(zg, xr) for xr in g.right)

    limit = birthday(g) + 1
    z = Fraction(0)
    lo_ok, hi_ok = above_left(z), below_right(z)
    if not lo_ok and not hi_ok:
        return None
    if not lo_ok or not hi_ok:
        direction = 1 if not lo_ok else -1
        prev = z
        for _ in range(limit):
            z = prev + direction
            lo_ok, hi_ok = above_left(z), below_right(z)
            if lo_ok and hi_ok:
                break
            if (direction == 1 and lo_ok) or (direction == -1 and hi_ok):
                a, b = sorted((prev, z))
                z = _bisect(a, b, above_left, below_right, limit)
                break
            prev = z
        else:
            return None
        if z is None:
            return None
    return z if equal(g, number(z)) else None


def _bisect(a: Fraction, b: Fraction, above_left, below_right, limit: int) -> Fraction | None:
    # a is too small (fails above_left), b too large (fails below_right)
    for _ in range(limit + 1):
        mid = (a + b) / 2
        lo_ok, hi_ok = above_left(mid), below_right(mid)
        if lo_ok and hi_ok:
            return mid
        if not lo_ok:
            a = mid
        else:
            b = mid
    return None


def format_number(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_game(g: PGame) -> str:
    """Bracket notation, printing number-valued options as numbers."""
    q = number_value(g)
    if q is not None:
        return format_number(q)
    if g is STAR:
        return "*"
    left = ",".join(sorted(format_game(o) for o in g.left))
    right = ",".join(sorted(format_game(o) for o in g.right))
    return "{" + left + "|" + right + "}"


class _Parser:
    def __init__(self, text: str):
        self.s = "".join(text.split())
        self.i = 0

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise InvalidInput(f"expected {ch!r} at offset {self.i} in {self.s!r}")
        self.i += 1

    def game(self) -> PGame:
        ch = self.peek()
        if ch == "{":
            self.i += 1
            left = self.options("|")
            self.expect("|")
            right = self.options("}")
            self.expect("}")
            return PGame(left, right)
        if ch == "*":
            self.i += 1
            return STAR
        start = self.i
        if ch in "+-":
            self.i += 1
        while self.peek().isdigit() or self.peek() == "/":
            self.i += 1
        tok = self.s[start : self.i]
        try:
            return number(Fraction(tok))
        except (ValueError, ZeroDivisionError):
            raise InvalidInput(f"bad game term {tok!r} at offset {start}") from None

    def options(self, stop: str) -> list[PGame]:
        out: list[PGame] = []
        if self.peek() == stop:
            return out
        out.append(self.game())
        while self.peek() == ",":
            self.i += 1
            out.append(self.game())
        return out


def parse_game(text: str) -> PGame:
    """Parse ``{L1,L2|R1}`` notation; integers, dyadics like ``3/4`` and ``*`` are atoms."""
    p = _Parser(text)
    g = p.game()
    if p.i != len(p.s):
        raise InvalidInput(f"trailing input at offset {p.i} in {p.s!r}")
    return g


Cell = tuple[int, int]
DEFAULT_MAX_CELLS = 12


def _normalize(cells: frozenset[Cell]) -> frozenset[Cell]:
    if not cells:
        return cells
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    return frozenset((r - r0, c - c0) for r, c in cells)


def components(cells: Iterable[Cell]) -> list[frozenset[Cell]]:
    remaining = set(cells)
    out = []
    while remaining:
        seed = min(remaining)
        remaining.discard(seed)
        comp, stack = {seed}, [seed]
        while stack:
            r, c = stack.pop()
            for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                if nb in remaining:
                    remaining.discard(nb)
                    comp.add(nb)
                    stack.append(nb)
        out.append(frozenset(comp))
    return sorted(out, key=sorted)


_dom_memo: dict[tuple[frozenset[Cell], bool], PGame] = {}


def domineering_value(cells: Iterable[Cell], max_cells: int = DEFAULT_MAX_CELLS, split: bool = True) -> PGame:
    """Game of a Domineering region: Left places vertical dominoes, Right horizontal.

    With ``split`` the board is cut into connected regions whose games are
    summed; without it the whole board is expanded directly.
    """
    board = frozenset(cells)
    if len(board) > max_cells:
        raise BoundExceeded(f"board has {len(board)} cells, limit is {max_cells}")
    return _domineering(_normalize(board), split)


def _domineering(board: frozenset[Cell], split: bool) -> PGame:
    key = (board, split)
    hit = _dom_memo.get(key)
    if hit is not None:
        return hit
    parts = components(board) if split else [board]
    if len(parts) > 1:
        total = ZERO
        for part in parts:
            total = add(total, _domineering(_normalize(part), split))
        hit = total
    else:
        left = [
            _domineering(_normalize(board - {(r, c), (r + 1, c)}), split)
            for r, c in sorted(board)
            if (r + 1, c) in board
        ]
        right = [
            _domineering(_normalize(board - {(r, c), (r, c + 1)}), split)
            for r, c in sorted(board)
            if (r, c + 1) in board
        ]
        hit = PGame(left, right)
    _dom_memo[key] = hit
    return hit


def parse_board(text: str) -> frozenset[Cell]:
    """Cells from ``"r,c;r,c;..."`` or a grid of ``#`` (free) and ``.`` rows separated by ``/``."""
    text = text.strip()
    if ";" in text or ("," in text and "#" not in text):
        cells = set()
        for part in filter(None, (p.strip() for p in text.split(";"))):
            try:
                r, c = (int(x) for x in part.split(","))
            except ValueError:
                raise InvalidInput(f"bad cell {part!r}") from None
            cells.add((r, c))
        return frozenset(cells)
    rows = text.split("/")
    if any(ch not in "#." for row in rows for ch in row):
        raise InvalidInput(f"bad board {text!r}")
    return frozenset((r, c) for r, row in enumerate(rows) for c, ch in enumerate(row) if ch == "#")


def random_game(rng: random.Random, max_birthday: int, max_options: int = 2) -> PGame:
    """Random game whose birthday is at most ``max_birthday``."""
    if max_birthday <= 0:
        return ZERO
    pool = [random_game(rng, max_birthday - 1, max_options) for _ in range(2 * max_options)]
    nl = rng.randint(0, max_options)
    nr = rng.randint(0, max_options)
    return PGame(rng.sample(pool, nl), rng.sample(pool, nr))
