from fractions import Fraction
from math import factorial

import pytest

from cfintegrals.cf_engine import convergent
from cfintegrals.exact_arith import DomainError, EForm, RationalInterval, truncate_decimal
from cfintegrals.theorem_bridge import (
    IdentityVariant,
    approx_e,
    bracket_e,
    e_reference,
    theorem_identity,
    verify_range,
)


@pytest.mark.parametrize(
    "k, variant, value",
    [(2, "diag", EForm(14, -38)), (0, "upper", EForm(1, -2)), (1, "lower", EForm(3, -8))],
)
def test_theorem_identity_examples(k, variant, value):
    report = theorem_identity(k, variant)
    assert report.lhs == report.rhs == value
    assert report.holds


@pytest.mark.parametrize("variant", ["diag", "lower"])
def test_theorem_identity_precondition(variant):
    with pytest.raises(DomainError):
        theorem_identity(0, variant)


def test_report_detects_mismatch():
    report = theorem_identity(3, IdentityVariant.DIAG)
    assert not type(report)(report.k, report.variant, report.lhs, report.rhs + EForm(0, 1)).holds


@pytest.mark.parametrize("max_k, count", [(1, 4), (2, 7), (50, 151)])
def test_verify_range_counts(max_k, count):
    reports = verify_range(max_k)
    assert len(reports) == count
    assert all(r.holds for r in reports)


def test_verify_range_order():
    keys = [(r.k, r.variant.order) for r in verify_range(5)]
    assert keys == sorted(keys)
    assert [(r.k, r.variant.value) for r in verify_range(1)] == [(0, "upper"), (1, "diag"), (1, "upper"), (1, "lower")]


def test_verify_range_precondition():
    with pytest.raises(DomainError):
        verify_range(0)


@pytest.mark.parametrize(
    "k, lo, hi",
    [(1, Fraction(19, 7), Fraction(3)), (2, Fraction(19, 7), Fraction(193, 71)), (3, Fraction(2721, 1001), Fraction(193, 71))],
)
def test_bracket_examples(k, lo, hi):
    assert bracket_e(k) == RationalInterval(lo, hi)


def test_bracket_precondition():
    with pytest.raises(DomainError):
        bracket_e(0)


def test_brackets_nest_and_obey_bound():
    for k in range(1, 31):
        outer, inner = bracket_e(k), bracket_e(k + 1)
        assert inner.issubset(outer)
        assert inner.width < outer.width
        assert outer.width <= Fraction(2 * 3, 4**k * factorial(k))


def test_brackets_contain_e_at_matching_precision():
    # The bracket narrows far faster than e/(4^k k!), so the Taylor enclosure
    # is sized from the bracket width before testing containment.
    for k in range(1, 31):
        bracket = bracket_e(k)
        digits = len(str(bracket.width.denominator // bracket.width.numerator)) + 5
        assert e_reference(digits).issubset(bracket), k


def test_e_reference_examples():
    iv = e_reference(1)
    assert iv.lo >= Fraction(163, 60)
    assert iv.hi <= Fraction(163, 60) + Fraction(2, 720)
    assert truncate_decimal(e_reference(5).lo, 5) == truncate_decimal(e_reference(5).hi, 5) == "2.71828"
    assert e_reference(5).width < Fraction(1, 10**5)
    assert e_reference(30).width < Fraction(1, 10**30)


def test_e_reference_against_mpmath():
    mpmath = pytest.importorskip("mpmath")
    with mpmath.workdps(120):
        digits = mpmath.nstr(mpmath.e, 110, strip_zeros=False)
    iv = e_reference(100)
    assert truncate_decimal(iv.lo, 100) == truncate_decimal(iv.hi, 100) == digits[:102]


@pytest.mark.parametrize("digits, expected", [(1, "2.7"), (3, "2.718"), (10, "2.7182818284")])
def test_approx_e_examples(digits, expected):
    decimal, k, interval = approx_e(digits)
    assert decimal == expected
    assert interval == bracket_e(k)
    if digits == 1:
        assert k <= 2


def test_approx_e_witness_is_minimal():
    for digits in range(1, 40):
        _, k, interval = approx_e(digits)
        assert interval.width < Fraction(1, 10**digits)
        if k > 1:
            previous = bracket_e(k - 1)
            assert previous.width >= Fraction(1, 10**digits) or (
                truncate_decimal(previous.lo, digits) != truncate_decimal(previous.hi, digits)
            )


def test_approx_e_agrees_with_reference():
    for d in range(1, 51):
        ref = e_reference(d + 2)
        assert approx_e(d)[0] == truncate_decimal(ref.lo, d) == truncate_decimal(ref.hi, d), d


def test_approx_interval_inside_reference_at_10_digits():
    _, _, interval = approx_e(10)
    assert interval.issubset(e_reference(10))


def test_error_chain_diagonal():
    ref = e_reference(200)
    for k in range(1, 40):
        c = convergent(3 * k - 1)
        gap = abs(ref.mid - c.value)
        assert gap <= Fraction(3, 4**k * factorial(k) * c.q) + ref.width
