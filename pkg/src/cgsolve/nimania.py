"""Nimania and its relatives: subtract 1 from a copy, then replicate.

At move ``k`` (counted from 1) the mover picks a copy of some ``m``; a copy
of 1 disappears, otherwise ``m`` becomes ``m - 1`` and ``f(k)`` further
copies of ``m - 1`` are adjoined. The last player to move wins.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .errors import BoundExceeded, InvalidInput

Replicator = Callable[[int], int]
State = tuple[tuple[int, ...], int]

DEFAULT_MOVE_CAP = 1_000_000
DEFAULT_MAX_STATES = 1_000_000


def replicator(name: str) -> Replicator:
    """Named replication presets: ``nimania`` (f(k)=k), ``zero``, ``constant-C``."""
    if name == "nimania":
        return lambda k: k
    if name == "zero":
        return lambda k: 0
    if name.startswith("constant-"):
        try:
            c = int(name.split("-", 1)[1])
        except ValueError:
            raise InvalidInput(f"bad replicator {name!r}") from None
        if c < 0:
            raise InvalidInput("replication count must be nonnegative")
        return lambda k: c
    raise InvalidInput(f"unknown replicator {name!r}")


@dataclass(frozen=True)
class EpidemicPosition:
    counts: tuple[int, ...]
    stage: int = 1

    def __post_init__(self):
        if any(c < 1 for c in self.counts):
            raise InvalidInput("all counts must be positive")
        if self.stage < 1:
            raise InvalidInput("stage starts at 1")
        object.__setattr__(self, "counts", tuple(sorted(self.counts)))

    @property
    def key(self) -> State:
        return self.counts, self.stage


def apply_move(pos: EpidemicPosition, m: int, f: Replicator) -> EpidemicPosition:
    if m not in pos.counts:
        raise InvalidInput(f"{m} is not in the position")
    rest = list(pos.counts)
    rest.remove(m)
    if m > 1:
        rest.extend([m - 1] * (f(pos.stage) + 1))
    return EpidemicPosition(tuple(rest), pos.stage + 1)


def _children(state: State, f: Replicator) -> list[tuple[int, State]]:
    counts, k = state
    pos = EpidemicPosition(counts, k)
    return [(m, apply_move(pos, m, f).key) for m in sorted(set(counts))]


@dataclass
class Solution:
    """Result of :func:`solve`.

    ``winner`` is ``"I"`` or ``"II"``; ``optimal_line`` lists the chosen copy
    at each move when the winner hurries and the loser stalls.
    """

    winner: str
    optimal_line: list[int]
    length: int
    table: dict[State, tuple[bool, int]] = field(repr=False, default_factory=dict)


class Solver:
    """Exhaustive solver with memo on ``(sorted counts, stage)``.

    ``table[state] = (mover_wins, length)`` where ``length`` is the number of
    remaining moves under min-max play (winner minimizes, loser maximizes).
    """

    def __init__(self, f: Replicator, move_cap: int = DEFAULT_MOVE_CAP, max_states: int = DEFAULT_MAX_STATES):
        self.f = f
        self.move_cap = move_cap
        self.max_states = max_states
        self.table: dict[State, tuple[bool, int]] = {}

    def value(self, state: State) -> tuple[bool, int]:
        table = self.table
        if state in table:
            return table[state]
        stack = [state]
        while stack:
            s = stack[-1]
            if s in table:
                stack.pop()
                continue
            if s[1] > self.move_cap:
                raise BoundExceeded(f"play exceeds the move cap {self.move_cap}")
            kids = _children(s, self.f)
            pending = [c for _, c in kids if c not in table]
            if pending:
                stack.extend(pending)
                continue
            table[s] = self._combine([table[c] for _, c in kids])
            if len(table) > self.max_states:
                raise BoundExceeded(f"solver memo exceeds {self.max_states} states")
            stack.pop()
        return table[state]

    @staticmethod
    def _combine(results: list[tuple[bool, int]]) -> tuple[bool, int]:
        if not results:
            return False, 0
        losing = [length for wins, length in results if not wins]
        if losing:
            return True, 1 + min(losing)
        return False, 1 + max(length for _, length in results)

    def best_choice(self, state: State) -> int:
        """Copy to reduce under min-max play; smallest ``m`` on ties."""
        wins, length = self.value(state)
        for m, child in _children(state, self.f):
            cw, cl = self.value(child)
            if wins and not cw and cl + 1 == length:
                return m
            if not wins and cl + 1 == length:
                return m
        raise InvalidInput("no moves from an empty position")


def start_position(n: int) -> EpidemicPosition:
    if n < 1:
        raise InvalidInput("starting integer must be positive")
    return EpidemicPosition((n,), 1)


def solve(n: int, f: Replicator | None = None, move_cap: int = DEFAULT_MOVE_CAP, max_states: int = DEFAULT_MAX_STATES) -> Solution:
    solver = Solver(f or replicator("nimania"), move_cap, max_states)
    state = start_position(n).key
    wins, length = solver.value(state)
    line = []
    while state[0]:
        m = solver.best_choice(state)
        line.append(m)
        state = apply_move(EpidemicPosition(*state), m, solver.f).key
    return Solution("I" if wins else "II", line, length, solver.table)


@dataclass
class Transcript:
    moves: list[tuple[int, str, tuple[int, ...], int]]
    winner: str | None
    capped: bool = False


def simulate(
    n: int,
    f: Replicator | None = None,
    policy_I: str = "random",
    policy_II: str = "random",
    seed: int = 0,
    move_cap: int = DEFAULT_MOVE_CAP,
) -> Transcript:
    """Play one game. Policies: ``random``, ``optimal`` (min-max), ``smallest``, ``largest``.

    Each transcript row is ``(stage, player, counts before, chosen copy)``.
    Hitting ``move_cap`` stops the game with ``capped=True`` and no winner.
    """
    f = f or replicator("nimania")
    rng = random.Random(seed)
    solver = Solver(f, move_cap) if "optimal" in (policy_I, policy_II) else None
    pos = start_position(n)
    rows = []
    last = None
    while pos.counts:
        if pos.stage > move_cap:
            return Transcript(rows, None, capped=True)
        player = "I" if pos.stage % 2 == 1 else "II"
        policy = policy_I if player == "I" else policy_II
        choices = sorted(set(pos.counts))
        if policy == "random":
            m = rng.choice(choices)
        elif policy == "smallest":
            m = choices[0]
        elif policy == "largest":
            m = choices[-1]
        elif policy == "optimal":
            m = solver.best_choice(pos.key)
        else:
            raise InvalidInput(f"unknown policy {policy!r}")
        rows.append((pos.stage, player, pos.counts, m))
        pos = apply_move(pos, m, f)
        last = player
    return Transcript(rows, last)


def optimal_wins_all_branches(n: int, f: Replicator | None = None, max_states: int = DEFAULT_MAX_STATES) -> bool:
    """Player I plays min-max; check every player II reply still loses."""
    solver = Solver(f or replicator("nimania"), max_states=max_states)
    seen = set()
    stack = [start_position(n).key]
    while stack:
        state = stack.pop()
        if state in seen:
            continue
        seen.add(state)
        if not state[0]:
            if state[1] % 2 == 1:
                return False
            continue
        if state[1] % 2 == 1:
            m = solver.best_choice(state)
            stack.append(apply_move(EpidemicPosition(*state), m, solver.f).key)
        else:
            stack.extend(c for _, c in _children(state, solver.f))
    return True


def losing_deviations(n: int, f: Replicator | None = None, max_states: int = DEFAULT_MAX_STATES) -> list[tuple[State, int]]:
    """Player I moves that throw away a won game.

    Searches positions reached while player I plays min-max and player II
    plays anything; returns ``(state, copy)`` pairs, sorted.
    """
    solver = Solver(f or replicator("nimania"), max_states=max_states)
    out = set()
    seen = set()
    stack = [start_position(n).key]
    while stack:
        state = stack.pop()
        if state in seen or not state[0]:
            continue
        seen.add(state)
        kids = _children(state, solver.f)
        if state[1] % 2 == 1:
            if solver.value(state)[0]:
                out.update((state, m) for m, c in kids if solver.value(c)[0])
            m = solver.best_choice(state)
            stack.append(dict(kids)[m])
        else:
            stack.extend(c for _, c in kids)
    return sorted(out)

