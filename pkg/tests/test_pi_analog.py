import doctest
from fractions import Fraction
from functools import lru_cache
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

import cfintegrals.pi_analog as pa
from cfintegrals.constants import ln2_enclosure, pi_enclosure
from cfintegrals.exact_arith import DomainError, PiForm
from cfintegrals.kernels import WEIGHT_ATAN, adaptive_simpson
from cfintegrals.pi_analog import (
    PiIntegrandParams,
    Side,
    dalzell_check,
    is_redundant,
    lucas_search,
    pi_eval_exact,
    solve_lattice,
)

from conftest import piform_float

params_st = st.tuples(
    st.integers(0, 8), st.integers(0, 8), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5)
).filter(lambda p: any(p[2:]))


def _sympy_piform(n, m, a, b, c):
    x = sympy.Symbol("x")
    value = sympy.expand(
        sympy.integrate(x**n * (1 - x) ** m * (a + b * x + c * x**2) / (1 + x**2), (x, 0, 1))
    )
    value = sympy.expand(sympy.expand_log(value, force=True))
    s = value.coeff(sympy.pi)
    t = value.coeff(sympy.log(2))
    r = sympy.nsimplify(sympy.expand(value - s * sympy.pi - t * sympy.log(2)))
    return PiForm(Fraction(str(r)), Fraction(str(s)), Fraction(str(t)))


@lru_cache(maxsize=None)
def _grid_values(max_nm, max_coeff):
    """Every integrand of the grid, evaluated one by one."""
    values = {}
    for n, m, a, b, c in product(range(max_nm + 1), range(max_nm + 1), *[range(max_coeff + 1)] * 3):
        if a or b or c:
            params = PiIntegrandParams(n, m, a, b, c)
            values[params] = pi_eval_exact(params)
    return values


def _brute_force(target, max_nm, max_coeff, distinct=True):
    hits = []
    for params, value in _grid_values(max_nm, max_coeff).items():
        if value.t == 0 and value.s != 0 and -value.r / value.s == target:
            if not (distinct and is_redundant(params, max_nm)):
                hits.append(params)
    return hits


def test_doctests():
    assert doctest.testmod(pa).failed == 0


@pytest.mark.parametrize(
    "params, expected",
    [
        ((4, 4, 1, 0, 0), PiForm(Fraction(22, 7), -1, 0)),
        ((0, 0, 1, 0, 0), PiForm(0, Fraction(1, 4), 0)),
        ((0, 0, 0, 1, 0), PiForm(0, 0, Fraction(1, 2))),
    ],
)
def test_pi_eval_examples(params, expected):
    assert pi_eval_exact(params) == expected


@pytest.mark.parametrize("params", [(0, 0, 0, 0, 1), (1, 2, 1, 1, 0), (3, 1, 0, 2, 3), (2, 5, 1, 0, 1)])
def test_pi_eval_matches_symbolic_integration(params):
    assert pi_eval_exact(params) == _sympy_piform(*params)


@pytest.mark.parametrize("bad", [(0, 0, 0, 0, 0), (-1, 0, 1, 0, 0), (1, 1, 1, -2, 0)])
def test_params_validation(bad):
    with pytest.raises(DomainError):
        PiIntegrandParams(*bad)


def test_dalzell():
    assert dalzell_check()
    assert dalzell_check()
    assert pi_eval_exact((4, 4, 1, 0, 1)) != PiForm(Fraction(22, 7), -1, 0)


@settings(max_examples=60, deadline=None)
@given(params_st, st.integers(1, 7))
def test_scaling_law(params, lam):
    n, m, a, b, c = params
    assert pi_eval_exact((n, m, lam * a, lam * b, lam * c)) == lam * pi_eval_exact(params)


@settings(max_examples=60, deadline=None)
@given(params_st)
def test_values_are_positive(params):
    value = pi_eval_exact(params)
    assert value.interval(pi_enclosure(60), ln2_enclosure(60)).lo > 0


@settings(max_examples=40, deadline=None)
@given(params_st)
def test_shift_redundancy(params):
    n, m, a, b, c = params
    if c == 0 and n < 8:
        assert pi_eval_exact((n, m, 0, a, b)) == pi_eval_exact((n + 1, m, a, b, 0))


def test_quadrature_agreement_small():
    for n, m, a, b, c in [(0, 0, 1, 0, 0), (4, 4, 1, 0, 0), (3, 2, 1, 2, 3), (6, 6, 3, 3, 3)]:
        quad = adaptive_simpson(n, m, (a, b, c), weight=WEIGHT_ATAN, tol=1e-12)
        assert abs(quad - piform_float(pi_eval_exact((n, m, a, b, c)))) <= 1e-10


def test_lucas_examples():
    hits = lucas_search(Fraction(22, 7), 4, 1)
    assert [h.params for h in hits] == [PiIntegrandParams(4, 4, 1, 0, 0)]
    assert hits[0].scale == 1

    hits = {(h.params.a, h.scale) for h in lucas_search(Fraction(22, 7), 4, 2) if (h.params.n, h.params.m) == (4, 4)}
    assert {(1, 1), (2, 2)} <= hits

    assert lucas_search(Fraction(333, 106), 2, 2) == []


def test_lucas_all_forms_includes_shifted_duplicates():
    params = [h.params for h in lucas_search(Fraction(22, 7), 4, 1, distinct=False)]
    assert params == [PiIntegrandParams(2, 4, 0, 0, 1), PiIntegrandParams(3, 4, 0, 1, 0), PiIntegrandParams(4, 4, 1, 0, 0)]


def test_lucas_preconditions():
    with pytest.raises(DomainError):
        lucas_search(Fraction(-1), 2, 2)
    with pytest.raises(DomainError):
        lucas_search(Fraction(3), 2, 0)
    with pytest.raises(ValueError):
        lucas_search(Fraction(3), 2, 2, method="guess")


def _grid_targets(max_nm, max_coeff):
    targets = {
        -v.r / v.s for v in _grid_values(max_nm, max_coeff).values() if v.t == 0 and v.s != 0 and -v.r / v.s > 0
    }
    return sorted(targets)


@pytest.mark.parametrize("distinct", [True, False])
def test_search_complete_against_brute_force(distinct):
    max_nm, max_coeff = 4, 3
    targets = _grid_targets(max_nm, max_coeff)
    assert len(targets) > 10
    for target in targets[:: max(1, len(targets) // 12)] + [Fraction(22, 7), Fraction(333, 106)]:
        expected = _brute_force(target, max_nm, max_coeff, distinct)
        for method in ("lattice", "scan"):
            got = [h.params for h in lucas_search(target, max_nm, max_coeff, distinct=distinct, method=method)]
            assert got == expected, (target, method)


def test_hits_are_sound_and_sided():
    pi = pi_enclosure(50)
    for target in (Fraction(22, 7), Fraction(355, 113), Fraction(311, 99)):
        for hit in lucas_search(target, 10, 200):
            v = pi_eval_exact(hit.params)
            assert v == hit.value and v.t == 0 and v.s != 0
            assert hit.target == target
            if hit.side is Side.ABOVE:
                assert target > pi.hi and v.s < 0
            else:
                assert target < pi.lo and v.s > 0


def test_default_grid_methods_agree():
    for target in (Fraction(22, 7), Fraction(355, 113)):
        lattice = lucas_search(target, 10, 1000)
        scan = lucas_search(target, 10, 1000, method="scan", workers=4)
        assert lattice == scan
        assert lattice


def test_workers_are_deterministic():
    one = lucas_search(Fraction(22, 7), 6, 50)
    many = lucas_search(Fraction(22, 7), 6, 50, workers=4)
    assert one == many


def test_solve_lattice_degenerate_rows():
    # One zero row leaves a plane: a - b == 0.
    got = solve_lattice([1, -1, 0], [0, 0, 0], 2)
    assert got == [(a, a, c) for a in range(3) for c in range(3)]
    # Mixed-sign kernel direction admits only the origin.
    assert solve_lattice([1, 1, 0], [0, 0, 1], 5) == [(0, 0, 0)]


def test_redundancy_rule():
    assert is_redundant(PiIntegrandParams(2, 4, 0, 0, 1), 4)
    assert not is_redundant(PiIntegrandParams(4, 4, 0, 0, 1), 4)
    assert not is_redundant(PiIntegrandParams(2, 4, 1, 0, 1), 4)
