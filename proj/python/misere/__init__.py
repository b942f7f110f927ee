"""Impartial misere games: canonical forms, partitions and counts.

Games are written in the notation used throughout: nimbers as integers,
sets in braces, a postfix '#' for the singleton {G} and '+' for sums.

    >>> from misere import Session
    >>> s = Session()
    >>> s.canon("{2, 0}")
    '1'
"""

from ._core import (
    CapacityError,
    DomainError,
    LoadError,
    MisereError,
    ParseError,
    Session,
    census,
    count,
    normalize,
)

__all__ = [
    "CapacityError",
    "DomainError",
    "LoadError",
    "MisereError",
    "ParseError",
    "Session",
    "census",
    "count",
    "normalize",
]
