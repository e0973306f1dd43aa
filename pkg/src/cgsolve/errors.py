"""Exception types shared across the solver modules."""


class GameError(Exception):
    """Base class for solver errors."""


class InvalidInput(GameError, ValueError):
    """Malformed or out-of-range input (CLI exit code 1)."""


class CyclicGraphError(InvalidInput):
    """An acyclic-only routine was handed a digraph with a cycle or loop."""


class BoundExceeded(GameError):
    """A state-count, pile or move limit was hit (CLI exit code 2)."""
