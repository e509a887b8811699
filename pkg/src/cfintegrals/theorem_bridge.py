"""Link between the integrals I(n, m) with |n - m| <= 1 and the convergents
of e, checked in exact arithmetic:

    I(k, k)     = (-1)^k     k! (q_{3k-1} e - p_{3k-1})    k >= 1
    I(k, k+1)   = (-1)^k     k! (q_{3k+1} e - p_{3k+1})    k >= 0
    I(k+1, k)   = (-1)^(k+1) k! (q_{3k}   e - p_{3k})      k >= 1

Since I(k, k) > 0, the sign (-1)^k says on which side of p_{3k-1}/q_{3k-1}
the number e lies, which gives certified two-sided brackets.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .cf_engine import convergent
from .constants import e_enclosure
from .exact_arith import DomainError, EForm, RationalInterval, truncate_decimal
from .integral_engine import eval_exact


class IdentityVariant(enum.Enum):
    DIAG = "diag"
    UPPER = "upper"
    LOWER = "lower"

    @property
    def order(self) -> int:
        return _VARIANT_ORDER[self]


_VARIANT_ORDER = {IdentityVariant.DIAG: 0, IdentityVariant.UPPER: 1, IdentityVariant.LOWER: 2}


@dataclass(frozen=True)
class CheckReport:
    k: int
    variant: IdentityVariant
    lhs: EForm
    rhs: EForm

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def _integral_index(k: int, variant: IdentityVariant) -> tuple[int, int]:
    if variant is IdentityVariant.DIAG:
        return k, k
    if variant is IdentityVariant.UPPER:
        return k, k + 1
    return k + 1, k


def _convergent_side(k: int, variant: IdentityVariant) -> tuple[int, int]:
    """(convergent index, sign exponent) on the right-hand side."""
    if variant is IdentityVariant.DIAG:
        return 3 * k - 1, k
    if variant is IdentityVariant.UPPER:
        return 3 * k + 1, k
    return 3 * k, k + 1


def theorem_identity(k: int, variant: IdentityVariant | str) -> CheckReport:
    variant = IdentityVariant(variant)
    min_k = 0 if variant is IdentityVariant.UPPER else 1
    if k < min_k:
        raise DomainError(f"{variant.value} identity needs k >= {min_k}, got {k}")
    lhs = eval_exact(_integral_index(k, variant))
    index, sign_exp = _convergent_side(k, variant)
    c = convergent(index)
    scale = (-1) ** sign_exp * factorial(k)
    rhs = EForm(scale * c.q, -scale * c.p)
    return CheckReport(k, variant, lhs, rhs)


def verify_range(max_k: int) -> list[CheckReport]:
    """Reports for every admissible (k, variant) with k <= max_k, ordered by
    k and then diag < upper < lower."""
    if max_k < 1:
        raise DomainError(f"max_k must be >= 1, got {max_k}")
    reports = [theorem_identity(0, IdentityVariant.UPPER)]
    for k in range(1, max_k + 1):
        for variant in IdentityVariant:
            reports.append(theorem_identity(k, variant))
    return reports


def bracket_e(k: int) -> RationalInterval:
    """Certified interval with endpoints p_{3k-1}/q_{3k-1} and
    p_{3k+2}/q_{3k+2}.

    Both I(k, k) and I(k+1, k+1) are positive and carry opposite signs
    (-1)^k and (-1)^(k+1), so e lies strictly between the two convergents.
    """
    if k < 1:
        raise DomainError(f"bracket needs k >= 1, got {k}")
    x = convergent(3 * k - 1).value
    y = convergent(3 * k + 2).value
    return RationalInterval(min(x, y), max(x, y))


def e_reference(digits: int) -> RationalInterval:
    """Independent Taylor-series enclosure of e of width < 10**-digits."""
    return e_enclosure(digits)


def approx_e(digits: int) -> tuple[str, int, RationalInterval]:
    """Decimal expansion of e to ``digits`` fractional digits, certified by
    the first bracket narrower than 10**-digits whose endpoints share those
    digits.  Returns ``(decimal, witness_k, bracket)``."""
    if digits < 1:
        raise DomainError(f"digits must be >= 1, got {digits}")
    limit = Fraction(1, 10**digits)
    k = 1
    while True:
        interval = bracket_e(k)
        if interval.width < limit:
            lo = truncate_decimal(interval.lo, digits)
            if lo == truncate_decimal(interval.hi, digits):
                return lo, k, interval
        k += 1
