"""Exact arithmetic substrate: rationals, linear forms over {1, e} and
{1, pi, ln 2}, dense rational polynomials and rational intervals.

Rationals are plain :class:`fractions.Fraction` values, which already keep
the canonical form (positive denominator, reduced) after every operation.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
IntOrRational = Union[int, Fraction]


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class EnclosureTooWide(DomainError):
    """A constant's enclosure is too coarse to certify the requested digits."""


_RAT_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
}


def rat_arith(op: str, x: Fraction, y: Fraction | None = None):
    """Apply ``op`` to exact rationals.

    ``op`` is one of add, sub, mul, div, neg, cmp.  ``cmp`` returns -1, 0
    or 1; division by zero raises :class:`DomainError`.
    """
    x = Fraction(x)
    if op == "neg":
        return -x
    y = Fraction(y)
    if op in _RAT_OPS:
        return _RAT_OPS[op](x, y)
    if op == "div":
        if y == 0:
            raise DomainError("division by zero")
        return x / y
    if op == "cmp":
        return (x > y) - (x < y)
    raise ValueError(f"unknown rational operation {op!r}")


# -- linear forms -------------------------------------------------------------


def _signed_term(coeff: str, negative: bool, suffix: str = "") -> str:
    return f"{'-' if negative else '+'} {coeff}{suffix}"


@dataclass(frozen=True)
class EForm:
    """The exact real number ``e_coeff * e + const_coeff`` with integer
    coefficients."""

    e_coeff: int
    const_coeff: int

    def __post_init__(self):
        for name in ("e_coeff", "const_coeff"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"EForm.{name} must be an int, got {value!r}")

    def __add__(self, other: EForm) -> EForm:
        if not isinstance(other, EForm):
            return NotImplemented
        return EForm(self.e_coeff + other.e_coeff, self.const_coeff + other.const_coeff)

    def __sub__(self, other: EForm) -> EForm:
        if not isinstance(other, EForm):
            return NotImplemented
        return EForm(self.e_coeff - other.e_coeff, self.const_coeff - other.const_coeff)

    def __neg__(self) -> EForm:
        return EForm(-self.e_coeff, -self.const_coeff)

    def __mul__(self, k: int) -> EForm:
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        return EForm(k * self.e_coeff, k * self.const_coeff)

    __rmul__ = __mul__

    def interval(self, e_encl: RationalInterval) -> RationalInterval:
        """Enclosure of the real value given an enclosure of e."""
        return e_encl.scale(self.e_coeff).shift(self.const_coeff)

    def __str__(self) -> str:
        b = self.const_coeff
        return f"{self.e_coeff}*e {_signed_term(str(abs(b)), b < 0)}"


def eform_arith(op: str, x: EForm, y: EForm | int | None = None) -> EForm:
    """Componentwise arithmetic on :class:`EForm` values.

    ``op`` is add, sub, scale_by_integer or negate.
    """
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "scale_by_integer":
        return x * y
    if op == "negate":
        return -x
    raise ValueError(f"unknown EForm operation {op!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


_RAT_RE = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or a bare integer."""
    match = _RAT_RE.match(text)
    if not match:
        raise ValueError(f"malformed rational {text!r}")
    num, den = match.groups()
    den = int(den) if den is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), den)


_EFORM_RE = re.compile(r"\s*([+-]?\d+)\s*\*\s*e\s*([+-])\s*(\d+)\s*$")


def parse_eform(text: str) -> EForm:
    match = _EFORM_RE.match(text)
    if not match:
        raise ValueError(f"malformed e-form {text!r}")
    a, sign, b = match.groups()
    return EForm(int(a), -int(b) if sign == "-" else int(b))


@dataclass(frozen=True)
class PiForm:
    """The exact real number ``r + s*pi + t*ln2`` with rational parts."""

    r: Fraction
    s: Fraction
    t: Fraction

    def __post_init__(self):
        for name in ("r", "s", "t"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __add__(self, other: PiForm) -> PiForm:
        if not isinstance(other, PiForm):
            return NotImplemented
        return PiForm(self.r + other.r, self.s + other.s, self.t + other.t)

    def __mul__(self, k: IntOrRational) -> PiForm:
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return PiForm(k * self.r, k * self.s, k * self.t)

    __rmul__ = __mul__

    def interval(self, pi_encl: RationalInterval, ln2_encl: RationalInterval) -> RationalInterval:
        return pi_encl.scale(self.s) + ln2_encl.scale(self.t) + RationalInterval.point(self.r)

    def __str__(self) -> str:
        return (
            f"{format_rational(self.r)} "
            f"{_signed_term(format_rational(abs(self.s)), self.s < 0, '*pi')} "
            f"{_signed_term(format_rational(abs(self.t)), self.t < 0, '*ln2')}"
        )


_PIFORM_RE = re.compile(
    r"\s*([+-]?\d+/\d+)\s*([+-])\s*(\d+/\d+)\s*\*\s*pi\s*([+-])\s*(\d+/\d+)\s*\*\s*ln2\s*$"
)


def parse_piform(text: str) -> PiForm:
    match = _PIFORM_RE.match(text)
    if not match:
        raise ValueError(f"malformed pi-form {text!r}")
    r, s_sign, s, t_sign, t = match.groups()
    s_val = parse_rational(s)
    t_val = parse_rational(t)
    return PiForm(
        parse_rational(r),
        -s_val if s_sign == "-" else s_val,
        -t_val if t_sign == "-" else t_val,
    )


# -- polynomials --------------------------------------------------------------


class Poly:
    """Dense univariate polynomial with rational coefficients, lowest degree
    first.  Trailing zero coefficients are trimmed, so the zero polynomial has
    an empty coefficient tuple."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[IntOrRational] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff: IntOrRational = 1) -> Poly:
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[format_rational(c) for c in self.coeffs]})"

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly | IntOrRational) -> Poly:
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        result = Poly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x: IntOrRational) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def integrate_01(self) -> Fraction:
        """Exact value of the integral over [0, 1]."""
        return sum((c / (i + 1) for i, c in enumerate(self.coeffs)), Fraction(0))


X2P1 = Poly([1, 0, 1])


def poly_divmod_by_x2p1(p: Poly) -> tuple[Poly, Fraction, Fraction]:
    """Divide ``p`` by ``1 + x**2``.

    Returns ``(quotient, u, v)`` with ``p == quotient*(1 + x**2) + u + v*x``.
    """
    rem = list(p.coeffs)
    if len(rem) < 3:
        rem += [Fraction(0)] * (2 - len(rem))
        return Poly(), rem[0], rem[1]
    quot = [Fraction(0)] * (len(rem) - 2)
    for i in range(len(rem) - 1, 1, -1):
        q = rem[i]
        quot[i - 2] = q
        rem[i] = Fraction(0)
        rem[i - 2] -= q
    return Poly(quot), rem[0], rem[1]


# -- intervals and decimal rendering -------------------------------------------


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: IntOrRational) -> RationalInterval:
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def issubset(self, other: RationalInterval) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def __add__(self, other: RationalInterval) -> RationalInterval:
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    def shift(self, c: IntOrRational) -> RationalInterval:
        return RationalInterval(self.lo + c, self.hi + c)

    def scale(self, c: IntOrRational) -> RationalInterval:
        a, b = self.lo * c, self.hi * c
        return RationalInterval(min(a, b), max(a, b))


def truncate_decimal(x: Fraction, digits: int) -> str:
    """Render ``x`` with ``digits`` fractional digits, truncating toward zero."""
    x = Fraction(x)
    scaled = abs(x.numerator) * 10**digits // x.denominator
    sign = "-" if x < 0 and scaled else ""
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def certified_decimal(encl: RationalInterval, digits: int) -> str:
    """Truncated decimal that is correct for every point of ``encl``.

    Raises :class:`EnclosureTooWide` when the endpoints disagree.
    """
    lo = truncate_decimal(encl.lo, digits)
    hi = truncate_decimal(encl.hi, digits)
    if lo != hi:
        raise EnclosureTooWide(
            f"enclosure [{lo}..., {hi}...] too wide for {digits} digits; refine it"
        )
    return lo


def eform_to_decimal(f: EForm, digits: int, e_encl: RationalInterval) -> str:
    """Certified truncated decimal of ``f`` given an enclosure of e."""
    if digits < 1:
        raise DomainError("digits must be positive")
    return certified_decimal(f.interval(e_encl), digits)

