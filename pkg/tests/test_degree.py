from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fillings.degree import (
    POINT_MODULUS, DegreeSpec, bound_no_multiple_zeroes, degree_trace, density_digits,
    digits_value, grids_for_length, msr_degree, msr_gamma, normalize_digits,
    oracle_moduli, sparse_frequency, sparse_msr,
)
from fillings.series import msr_search


def test_worked_example_trace():
    tr = msr_gamma(3, Fraction(5, 8), 16)
    assert tr.value == 35
    assert (tr.case, tr.v, tr.t) == ("C", 3, [5, 5, 1])
    assert tr.terms == [27, 0, 6]
    assert "msr = 27 + 6 + 1 + 1" in tr.describe()


def test_density_digits_of_five_eighths():
    assert density_digits(Fraction(5, 8), 3, 6) == [1, 2, 1, 2, 1, 2]
    assert digits_value([1, 2, 1, 2], 3) == Fraction(50, 81)


def test_saturated_block_alone():
    assert msr_degree(3, [2], 2) == 3
    assert msr_search([3, 3]).length == 3
    # saturated binary chain 2, 4, 8
    assert msr_degree(2, [1, 1, 1], 3) == 8


def test_grid_counts_where_lengths_first_appear():
    assert grids_for_length(3, [1, 2], 2) == 6
    # d=2, digits (0,1): three grids {4, point, point} are needed for length 4
    assert grids_for_length(2, [0, 1], 2) == 3
    spec = DegreeSpec(2, (0, 1))
    assert msr_search(oracle_moduli(spec, 2)).length < 4
    assert msr_search(oracle_moduli(spec, 3)).length == 4


def test_bound_without_multiple_zeroes():
    b = bound_no_multiple_zeroes(16, 0, Fraction(5, 8))
    assert b == Fraction(16 * 8, 3) + 1
    assert b > 35


def test_errors():
    with pytest.raises(ValueError, match="correctness"):
        DegreeSpec(3, (3,))
    with pytest.raises(ValueError, match="singular density"):
        density_digits(Fraction(1), 2, 4)
    with pytest.raises(ValueError, match="singular density"):
        normalize_digits([1, 2], 2)
    with pytest.raises(ValueError, match="inconsistent"):
        sparse_msr(2, [0, 1], -1)


def test_sparse_frequency_strips_the_saturated_prefix():
    assert sparse_frequency([2, 2, 1, 0, 2], 3) == ([1, 0, 2], 2)
    assert sparse_frequency([0, 1], 2) == ([0, 1], 0)


def test_case_b_factors_through_the_saturated_part():
    digits = [1, 1, 0, 1]
    tr = degree_trace(2, digits, 3)
    assert tr.case == "B"
    assert tr.value == 2 ** tr.r * sparse_msr(2, digits[tr.r:], tr.k)


def test_normalize_keeps_the_value():
    assert normalize_digits([0, 3, 1], 2) == [1, 1, 1]
    assert digits_value([0, 3, 1], 2) == digits_value([1, 1, 1], 2)


@st.composite
def degree_cases(draw):
    d = draw(st.sampled_from([2, 3]))
    top = 8 if d == 2 else 5
    digits = draw(st.lists(st.integers(0, d - 1), min_size=1, max_size=top))
    if not any(digits):
        digits[-1] = 1
    spec = DegreeSpec(d, tuple(digits))
    n = draw(st.integers(1, min(spec.grid_count, 8)))
    q = draw(st.integers(0, 2))
    return spec, n, q


@settings(max_examples=40)
@given(degree_cases())
def test_closed_form_matches_the_search(case):
    spec, n, q = case
    closed = msr_degree(spec.base, spec.digits, n, q)
    found = msr_search(spec.moduli(n), q, budget=10**9, canonical=False)
    assert found.exact and found.length == closed


@settings(max_examples=30)
@given(degree_cases(), st.integers(1, 3))
def test_point_grids_act_like_extra_grids(case, extra):
    spec, n, _ = case
    closed = msr_degree(spec.base, spec.digits, n + extra)
    if spec.grid_count >= n + extra:
        return
    found = msr_search(oracle_moduli(spec, n + extra), budget=10**9, canonical=False)
    assert found.length == closed


@given(degree_cases())
def test_strictly_below_the_density_bound(case):
    spec, n, q = case
    # zero density of the first n grids
    alpha = sum(Fraction(1, a) for a in spec.moduli(n))
    assert msr_degree(spec.base, spec.digits, n, q) < bound_no_multiple_zeroes(n, q, alpha)


@given(degree_cases())
def test_monotone_in_grids_and_q(case):
    spec, n, q = case
    v = msr_degree(spec.base, spec.digits, n, q)
    assert msr_degree(spec.base, spec.digits, n + 1, q) >= v
    assert msr_degree(spec.base, spec.digits, n, q + 1) > v
