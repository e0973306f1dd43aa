"""Octal games on a single row of tokens, and period detection for their values."""

from __future__ import annotations

from typing import Sequence

from .classical import mex
from .errors import BoundExceeded, InvalidInput

DEFAULT_MAX_HEAP = 100_000


def parse_octal(code: str) -> tuple[int, ...]:
    """Digits ``d_1 d_2 ...`` of an octal code.

    Accepts ``"0.07"`` or ``"07"`` (both mean ``d_1 = 0, d_2 = 7``).
    """
    text = code.strip()
    if text.startswith("0.") or text.startswith("."):
        text = text.split(".", 1)[1]
    if not text or any(ch not in "01234567" for ch in text):
        raise InvalidInput(f"invalid octal code {code!r}")
    return tuple(int(ch) for ch in text)


def octal_g_sequence(code: str | Sequence[int], n_max: int, max_heap: int = DEFAULT_MAX_HEAP) -> list[int]:
    """Grundy values ``g(0..n_max)`` of a single heap.

    Digit ``d_i`` bits: 1 lets a move take all ``i`` tokens of a heap of
    size ``i``; 2 lets it leave one nonempty heap; 4 lets it split the rest
    into two nonempty heaps, valued as the XOR of the parts.
    """
    digits = parse_octal(code) if isinstance(code, str) else tuple(code)
    if any(not 0 <= d <= 7 for d in digits):
        raise InvalidInput("octal digits must lie in 0..7")
    if n_max < 0:
        raise InvalidInput("n_max must be nonnegative")
    if n_max > max_heap:
        raise BoundExceeded(f"heap limit {n_max} exceeds {max_heap}")
    g = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        opts = set()
        for i, d in enumerate(digits, start=1):
            if i > n:
                break
            rest = n - i
            if d & 1 and rest == 0:
                opts.add(0)
            if d & 2 and rest > 0:
                opts.add(g[rest])
            if d & 4 and rest >= 2:
                for a in range(1, rest // 2 + 1):
                    opts.add(g[a] ^ g[rest - a])
        g[n] = mex(opts)
    return g


def find_period(seq: Sequence[int]) -> tuple[int, int] | None:
    """Preperiod ``p`` and period ``l`` of ``seq``, or None.

    A candidate counts only if ``len(seq) >= p + 2*l``, i.e. at least two
    full periods are observed after the preperiod.  Among candidates the
    one with the smallest ``p + l`` wins, ties going to the shorter period;
    this stops a short repeat at the very end from masquerading as a period.
    """
    n = len(seq)
    best = None
    for period in range(1, n // 2 + 1):
        last_bad = -1
        for i in range(n - period - 1, -1, -1):
            if seq[i] != seq[i + period]:
                last_bad = i
                break
        pre = last_bad + 1
        if n >= pre + 2 * period and (best is None or pre + period < sum(best)):
            best = (pre, period)
    return best
