"""Partial quotients and convergents of e' = [2; 1, 2, 1, 1, 4, 1, ...].

Indices are 1-based: a_1 = 2, and for k >= 1, a_{3k} = 2k while
a_{3k-1} = a_{3k+1} = 1.  Convergent k is p_k / q_k built from the first
k quotients.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import count as _count
from typing import Iterator, Sequence

from .exact_arith import DomainError


@dataclass(frozen=True)
class Convergent:
    index: int
    p: int
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


def partial_quotient(i: int) -> int:
    if i < 1:
        raise DomainError(f"partial quotient index must be >= 1, got {i}")
    if i == 1:
        return 2
    return 2 * (i // 3) if i % 3 == 0 else 1


def iter_convergents() -> Iterator[Convergent]:
    """Unbounded stream of convergents, starting at index 1."""
    # p_0 = 1, q_0 = 0 and p_{-1} = 0, q_{-1} = 1 make the recurrence yield
    # p_1 = 2, q_1 = 1 and p_2 = 3, q_2 = 1.
    p_prev, q_prev = 0, 1
    p, q = 1, 0
    for i in _count(1):
        a = partial_quotient(i)
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        yield Convergent(i, p, q)


class _ConvergentCache:
    def __init__(self):
        self._items: list[Convergent] = []
        self._stream = iter_convergents()
        self._lock = threading.Lock()

    def get(self, index: int) -> Convergent:
        if index < 1:
            raise DomainError(f"convergent index must be >= 1, got {index}")
        items = self._items
        if index > len(items):
            with self._lock:
                while len(items) < index:
                    items.append(next(self._stream))
        return items[index - 1]


_CACHE = _ConvergentCache()


def convergent(index: int) -> Convergent:
    """The convergent p_index / q_index (memoized)."""
    return _CACHE.get(index)


def convergents(count: int) -> list[Convergent]:
    """The first ``count`` convergents.

    >>> [str(c.value) for c in convergents(5)]
    ['2', '3', '8/3', '11/4', '19/7']
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    convergent(count)
    return list(_CACHE._items[:count])


def cf_eval(quotients: Sequence[int]) -> Fraction:
    """Value of the finite continued fraction [a_1; a_2, ..., a_L], folded
    from the tail."""
    if not quotients:
        raise DomainError("continued fraction needs at least one quotient")
    if quotients[0] < 0 or any(a < 1 for a in quotients[1:]):
        raise DomainError("quotients after the first must be >= 1 and the first >= 0")
    value = Fraction(quotients[-1])
    for a in reversed(quotients[:-1]):
        value = a + 1 / value
    return value
