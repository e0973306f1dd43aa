"""Solvers for impartial and partizan combinatorial games.

Modules: :mod:`digraph`, :mod:`classical` (Grundy values), :mod:`loopy`
(gamma function and draws), :mod:`annihilation`, :mod:`heaps`,
:mod:`octal`, :mod:`nimania`, :mod:`partizan`, :mod:`cli`.
"""

__version__ = "0.1.0"
