"""Exact evaluation of I(n, m) = int_0^1 x^n (1-x)^m e^x dx.

Every I(n, m) is an integer combination of 1 and e.  The table is seeded
from the two one-sided families

    I(0, 0) = e - 1,   I(n, 0) = e - n I(n-1, 0),   I(0, m) = m I(0, m-1) - 1

and filled with the integration-by-parts recurrence

    I(n, m) = m I(n, m-1) - n I(n-1, m)          (n, m >= 1).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .exact_arith import DomainError, EForm
from . import kernels

E_MINUS_ONE = EForm(1, -1)


@dataclass(frozen=True)
class IntegralIndex:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise DomainError(f"integral indices must be natural, got ({self.n}, {self.m})")


def _index(idx) -> IntegralIndex:
    return idx if isinstance(idx, IntegralIndex) else IntegralIndex(*idx)


def base_row_n0(n: int) -> EForm:
    """I(n, 0), the integral of x^n e^x."""
    if n < 0:
        raise DomainError("n must be natural")
    value = E_MINUS_ONE
    for j in range(1, n + 1):
        value = EForm(1, 0) - j * value
    return value


def base_col_0m(m: int) -> EForm:
    """I(0, m), the integral of (1-x)^m e^x."""
    if m < 0:
        raise DomainError("m must be natural")
    value = E_MINUS_ONE
    for j in range(1, m + 1):
        value = j * value - EForm(0, 1)
    return value


class IntegralTable:
    """Memo of I(n, m) over a growing rectangle ``[0, rows) x [0, cols)``.

    Growth happens under a lock; reads of already-filled cells need none
    because rows are only ever appended or extended, never mutated.
    """

    def __init__(self):
        self._rows: list[list[EForm]] = []
        self._cols = 0
        self._lock = threading.Lock()

    @property
    def shape(self) -> tuple[int, int]:
        return len(self._rows), self._cols

    def _grow(self, rows: int, cols: int) -> None:
        with self._lock:
            rows = max(rows, len(self._rows))
            cols = max(cols, self._cols)
            table = self._rows
            for n in range(rows):
                if n == len(table):
                    table.append([])
                row = table[n]
                for m in range(len(row), cols):
                    if n == 0:
                        row.append(E_MINUS_ONE if m == 0 else m * row[m - 1] - EForm(0, 1))
                    elif m == 0:
                        row.append(EForm(1, 0) - n * table[n - 1][0])
                    else:
                        row.append(m * row[m - 1] - n * table[n - 1][m])
            self._cols = cols

    def __getitem__(self, idx) -> EForm:
        n, m = idx
        if n < 0 or m < 0:
            raise DomainError(f"integral indices must be natural, got ({n}, {m})")
        rows = self._rows
        if n >= len(rows) or m >= len(rows[n]):
            self._grow(n + 1, m + 1)
        return self._rows[n][m]


_TABLE = IntegralTable()


def eval_exact(idx) -> EForm:
    """Exact I(n, m) as an :class:`EForm`.

    >>> str(eval_exact((2, 2)))
    '14*e - 38'
    """
    idx = _index(idx)
    return _TABLE[idx.n, idx.m]


def check_lemma(idx) -> tuple[bool, bool]:
    """Check the two recurrence identities at ``(n, m)`` with n, m >= 1.

    Returns ``(pascal_ok, parts_ok)`` where pascal_ok is
    I(n-1, m-1) == I(n, m-1) + I(n-1, m) and parts_ok is
    I(n, m) == m I(n, m-1) - n I(n-1, m).
    """
    idx = _index(idx)
    n, m = idx.n, idx.m
    if n < 1 or m < 1:
        raise DomainError(f"the recurrence identities need n, m >= 1, got ({n}, {m})")
    up = eval_exact((n, m - 1))
    left = eval_exact((n - 1, m))
    pascal_ok = eval_exact((n - 1, m - 1)) == up + left
    parts_ok = eval_exact((n, m)) == m * up - n * left
    return pascal_ok, parts_ok


def beta_bound(idx) -> Fraction:
    """Coefficient ``c`` of the bound I(n, m) <= c * e, where
    c = 1 / ((n + m + 1) * C(n + m, n)) is the Beta integral B(n+1, m+1)."""
    idx = _index(idx)
    n, m = idx.n, idx.m
    return Fraction(1, (n + m + 1) * comb(n + m, n))


def diagonal_bound(k: int) -> Fraction:
    """Coefficient 1/4**k of the bound I(k, k) <= e / 4**k (from x(1-x) <= 1/4)."""
    if k < 1:
        raise DomainError(f"diagonal bound needs k >= 1, got {k}")
    return Fraction(1, 4**k)


def quad_reference(idx, tol: float = 1e-12, backend: str | None = None) -> float:
    """Floating-point adaptive Simpson estimate of I(n, m).

    Numeric oracle for tests only; nothing exact depends on it.
    """
    if tol < 1e-13:
        raise DomainError(f"tolerance must be >= 1e-13, got {tol}")
    idx = _index(idx)
    return kernels.adaptive_simpson(idx.n, idx.m, weight=kernels.WEIGHT_EXP, tol=tol, backend=backend)
