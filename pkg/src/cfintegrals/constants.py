"""Certified rational enclosures of e, pi and ln 2 from series with explicit
tail bounds.  These never feed back into exact results; they only certify
decimal renderings and serve as independent oracles in tests."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exact_arith import (
    DomainError,
    EForm,
    EnclosureTooWide,
    PiForm,
    RationalInterval,
    certified_decimal,
    eform_to_decimal,
)


def _check_digits(digits: int) -> None:
    if digits < 1:
        raise DomainError(f"digits must be >= 1, got {digits}")


@lru_cache(maxsize=64)
def e_enclosure(digits: int) -> RationalInterval:
    """Interval of width < 10**-digits containing e.

    Uses the partial sum of sum(1/j!) for j <= N and the tail bound
    2/(N+1)!.  N is the first index whose tail bound is below
    10**-(digits+1), one guard digit beyond the requested width.
    """
    _check_digits(digits)
    target = Fraction(1, 10 ** (digits + 1))
    total = Fraction(0)
    fact = 1
    n = 0
    while True:
        total += Fraction(1, fact)
        tail = Fraction(2, fact * (n + 1))
        if tail < target:
            return RationalInterval(total, total + tail)
        n += 1
        fact *= n


def _arctan_inv(x: int, eps: Fraction) -> tuple[Fraction, Fraction]:
    """Partial sum of arctan(1/x) and the magnitude of the first omitted
    term, which bounds the alternating tail."""
    total = Fraction(0)
    k = 0
    x2 = x * x
    power = x
    while True:
        term = Fraction(1, (2 * k + 1) * power)
        if term < eps:
            return total, term
        total += term if k % 2 == 0 else -term
        k += 1
        power *= x2


@lru_cache(maxsize=64)
def pi_enclosure(digits: int) -> RationalInterval:
    """Interval of width < 10**-digits containing pi (Machin's formula)."""
    _check_digits(digits)
    eps = Fraction(1, 40 * 10 ** (digits + 1))
    s5, t5 = _arctan_inv(5, eps)
    s239, t239 = _arctan_inv(239, eps)
    mid = 16 * s5 - 4 * s239
    rad = 16 * t5 + 4 * t239
    return RationalInterval(mid - rad, mid + rad)


@lru_cache(maxsize=64)
def ln2_enclosure(digits: int) -> RationalInterval:
    """Interval of width < 10**-digits containing ln 2.

    ln 2 = sum 1/(k 2**k); the tail after N terms is at most 1/((N+1) 2**N).
    """
    _check_digits(digits)
    target = Fraction(1, 10 ** (digits + 1))
    total = Fraction(0)
    k = 1
    while True:
        total += Fraction(1, k << k)
        tail = Fraction(1, (k + 1) << k)
        if tail < target:
            return RationalInterval(total, total + tail)
        k += 1


_MAX_REFINEMENTS = 12


def _refining(render, digits: int, magnitude: int) -> str:
    precision = digits + len(str(abs(magnitude))) + 2
    for _ in range(_MAX_REFINEMENTS):
        try:
            return render(precision)
        except EnclosureTooWide:
            precision *= 2
    return render(precision)


def eform_decimal(f: EForm, digits: int) -> str:
    """Certified truncated decimal of ``f``, refining e as needed."""
    return _refining(lambda p: eform_to_decimal(f, digits, e_enclosure(p)), digits, f.e_coeff)


def piform_decimal(f: PiForm, digits: int) -> str:
    """Certified truncated decimal of ``r + s*pi + t*ln2``."""
    if digits < 1:
        raise DomainError("digits must be positive")
    magnitude = max(abs(f.s.numerator), abs(f.t.numerator), 1)
    return _refining(
        lambda p: certified_decimal(f.interval(pi_enclosure(p), ln2_enclosure(p)), digits),
        digits,
        magnitude,
    )
