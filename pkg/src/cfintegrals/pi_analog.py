"""Integrals int_0^1 x^n (1-x)^m (a + b x + c x^2) / (1 + x^2) dx.

Dividing the numerator by 1 + x^2 leaves a polynomial quotient Q and a
remainder u + v x, so the integral is exactly

    int_0^1 Q  +  u * pi/4  +  v * ln(2)/2.

The search looks for parameters whose integral has no ln 2 part and whose
rational and pi parts give ``-r/s == target``; neglecting such an integral
approximates pi by the target.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable

from . import kernels
from .exact_arith import DomainError, PiForm, Poly, poly_divmod_by_x2p1


@dataclass(frozen=True)
class PiIntegrandParams:
    n: int
    m: int
    a: int
    b: int
    c: int

    def __post_init__(self):
        fields = (self.n, self.m, self.a, self.b, self.c)
        if any(isinstance(v, bool) or not isinstance(v, int) or v < 0 for v in fields):
            raise DomainError(f"parameters must be natural numbers, got {fields}")
        if self.a == self.b == self.c == 0:
            raise DomainError("the cofactor a + b x + c x^2 must not be identically zero")

    def numerator(self) -> Poly:
        return (
            Poly.monomial(self.n)
            * Poly([1, -1]) ** self.m
            * Poly([self.a, self.b, self.c])
        )


class Side(enum.Enum):
    ABOVE = "above"
    BELOW = "below"


@dataclass(frozen=True)
class SearchHit:
    params: PiIntegrandParams
    value: PiForm

    @property
    def scale(self) -> Fraction:
        return abs(self.value.s)

    @property
    def target(self) -> Fraction:
        return -self.value.r / self.value.s

    @property
    def side(self) -> Side:
        # The integral is positive, so s < 0 forces r/|s| > pi.
        return Side.ABOVE if self.value.s < 0 else Side.BELOW


def _as_params(params) -> PiIntegrandParams:
    return params if isinstance(params, PiIntegrandParams) else PiIntegrandParams(*params)


def pi_eval_exact(params) -> PiForm:
    """Exact value of the integral as ``r + s*pi + t*ln2``.

    >>> str(pi_eval_exact((4, 4, 1, 0, 0)))
    '22/7 - 1/1*pi + 0/1*ln2'
    """
    params = _as_params(params)
    quotient, u, v = poly_divmod_by_x2p1(params.numerator())
    return PiForm(quotient.integrate_01(), u / 4, v / 2)


def dalzell_check() -> bool:
    """True iff int_0^1 x^4 (1-x)^4 / (1+x^2) dx == 22/7 - pi exactly."""
    return pi_eval_exact((4, 4, 1, 0, 0)) == PiForm(Fraction(22, 7), -1, 0)


@lru_cache(maxsize=4096)
def _basis(n: int, m: int) -> tuple[PiForm, PiForm, PiForm]:
    """Values for the cofactors 1, x and x^2; the integral is linear in
    (a, b, c)."""
    return (
        pi_eval_exact((n, m, 1, 0, 0)),
        pi_eval_exact((n, m, 0, 1, 0)),
        pi_eval_exact((n, m, 0, 0, 1)),
    )


def _integer_rows(n: int, m: int, target: Fraction) -> tuple[list[int], list[int], PiForm, PiForm, PiForm]:
    """Integer rows for the two linear conditions t == 0 and
    r + target*s == 0 on (a, b, c)."""
    basis = _basis(n, m)
    t_row = [f.t for f in basis]
    g_row = [f.r + target * f.s for f in basis]
    t_den = lcm(*(x.denominator for x in t_row))
    g_den = lcm(*(x.denominator for x in g_row))
    return (
        [int(x * t_den) for x in t_row],
        [int(x * g_den) for x in g_row],
        *basis,
    )


def _cross(u: list[int], v: list[int]) -> list[int]:
    return [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]


def solve_lattice(row_a: list[int], row_b: list[int], max_coeff: int) -> list[tuple[int, int, int]]:
    """Exact counterpart of :func:`kernels.scan_grid` on Python integers.

    With independent rows the integer solutions are the multiples of the
    primitive cross product, so only those need checking.  Dependent rows
    leave a plane, which is scanned.
    """
    w = _cross(row_a, row_b)
    if any(w):
        g = gcd(*w)
        w = [x // g for x in w]
        if all(x <= 0 for x in w):
            w = [-x for x in w]
        if any(x < 0 for x in w):
            return [(0, 0, 0)]
        top = max_coeff // max(w)
        return [tuple(lam * x for x in w) for lam in range(top + 1)]

    row = row_a if any(row_a) else row_b
    if not any(row):
        return [(a, b, c) for a in range(max_coeff + 1) for b in range(max_coeff + 1) for c in range(max_coeff + 1)]
    out = []
    for a in range(max_coeff + 1):
        for b in range(max_coeff + 1):
            rest = a * row[0] + b * row[1]
            if row[2] == 0:
                if rest == 0:
                    out.extend((a, b, c) for c in range(max_coeff + 1))
            elif rest % row[2] == 0 and 0 <= -rest // row[2] <= max_coeff:
                out.append((a, b, -rest // row[2]))
    return out


def is_redundant(params: PiIntegrandParams, max_nm: int) -> bool:
    """True when the same integrand appears in the grid with a larger n.

    A cofactor with a == 0 is x (b + c x), so (n, m, 0, b, c) and
    (n + 1, m, b, c, 0) describe one integrand.  The cofactor is never
    divisible by 1 - x (that needs a + b + c == 0), so x-shifts are the only
    duplicates and each integrand keeps exactly one representative.
    """
    return params.a == 0 and params.n < max_nm


def _search_cell(
    n: int, m: int, target: Fraction, max_nm: int, max_coeff: int,
    method: str, backend: str | None, distinct: bool,
) -> list[SearchHit]:
    row_a, row_b, f1, fx, fx2 = _integer_rows(n, m, target)
    if method == "scan" and kernels.scan_fits_int64(row_a, row_b, max_coeff):
        triples: Iterable = (
            tuple(int(v) for v in row) for row in kernels.scan_grid(row_a, row_b, max_coeff, backend)
        )
    else:
        triples = solve_lattice(row_a, row_b, max_coeff)
    hits = []
    for a, b, c in triples:
        if a == b == c == 0:
            continue
        if a * f1.s + b * fx.s + c * fx2.s == 0:
            continue
        params = PiIntegrandParams(n, m, a, b, c)
        if distinct and is_redundant(params, max_nm):
            continue
        value = pi_eval_exact(params)
        # Re-verify from scratch; the rows above only select candidates.
        if value.t != 0 or value.s == 0 or -value.r / value.s != target:
            raise RuntimeError(f"candidate {params} failed exact re-verification")
        hits.append(SearchHit(params, value))
    return hits


SEARCH_METHODS = ("lattice", "scan")


def lucas_search(
    target,
    max_nm: int,
    max_coeff: int,
    *,
    distinct: bool = True,
    method: str = "lattice",
    workers: int = 1,
    backend: str | None = None,
) -> list[SearchHit]:
    """Parameters with n, m <= max_nm and a, b, c <= max_coeff whose
    integral equals ``s * (pi - target)`` for some nonzero rational s.

    Hits are sorted by (n, m, a, b, c).  With ``distinct`` (the default) an
    integrand reachable from several tuples is reported once, under the
    tuple with the largest n; see :func:`is_redundant`.

    ``method="lattice"`` solves the two linear conditions exactly;
    ``method="scan"`` runs the int64 grid kernel instead, falling back to the
    lattice solver for cells that would overflow.  The (n, m) cells are
    spread over ``workers`` threads.
    """
    target = Fraction(target)
    if target <= 0:
        raise DomainError("target must be positive")
    if max_nm < 0 or max_coeff < 1:
        raise DomainError("need max_nm >= 0 and max_coeff >= 1")
    if method not in SEARCH_METHODS:
        raise ValueError(f"unknown search method {method!r}")
    cells = [(n, m) for n in range(max_nm + 1) for m in range(max_nm + 1)]
    for n, m in cells:
        _basis(n, m)

    def run(cell):
        return _search_cell(cell[0], cell[1], target, max_nm, max_coeff, method, backend, distinct)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, cells))
    else:
        results = [run(cell) for cell in cells]
    hits = [hit for cell_hits in results for hit in cell_hits]
    hits.sort(key=lambda h: (h.params.n, h.params.m, h.params.a, h.params.b, h.params.c))
    return hits
