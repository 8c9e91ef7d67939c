import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fillings.grid import (
    INFINITE, Filling, Grid, complete_imaging, count_units, imaging, is_filling,
    is_saturated, is_singular, mixing_criterion, multiplicity_profile,
    multiplicity_string, period, profile, unit_mask,
)
from fillings.primes import PrimeSystemSpec, SystemKind
from fillings.series import series_lengths


@st.composite
def small_fillings(draw, max_grids=4, max_modulus=12):
    moduli = draw(st.lists(st.integers(2, max_modulus), min_size=1, max_size=max_grids))
    shifts = [draw(st.integers(0, a - 1)) for a in moduli]
    return Filling.from_moduli(moduli, shifts)


def test_grid_element_and_bad_modulus():
    g = Grid(3, 4)
    assert g.shift == 1
    assert [g.element(i) for i in range(6)] == [1, 0, 1, 1, 0, 1]
    with pytest.raises(ValueError):
        Grid(0)
    with pytest.raises(ValueError):
        Grid(2.5)


def test_infinite_grid_zeroes_one_point():
    f = Filling.from_moduli([INFINITE, 3], [4, 0])
    assert f.window(0, 7) == "0110010"
    assert not f.finite
    with pytest.raises(ValueError, match="aperiodic"):
        period(f)


def test_odd_prime_ring_period_and_census():
    f = PrimeSystemSpec(SystemKind.SP1, 3).filling()
    prof = profile(f)
    assert (prof.PZ, prof.E, prof.H, prof.H_star) == (105, 48, 57, 71)
    assert prof.gamma == Fraction(19, 35)
    assert prof.gamma_star == Fraction(71, 119)


def test_primed_system_census():
    prof = profile(PrimeSystemSpec(SystemKind.SP1_PRIME, 5).filling())
    assert (prof.E, prof.H, prof.H_star) == (1440, 3180, 4699)
    assert prof.gamma == Fraction(53, 77)
    assert prof.gamma_star == Fraction(4699, 6139)


def test_redundant_grid_makes_a_grating():
    f = Filling.from_moduli([2, 4])
    # S(4) adds no zero, so the product is S(2) itself
    assert period(f) == 2
    assert not is_filling(f)
    assert f.window(0, 12) == Filling.from_moduli([2]).window(0, 12)


@pytest.mark.parametrize("shifts, product, vector, filling", [
    ((1, 2, 3, 4), "1000001100111000", "v11111vv11vvv111", True),
    ((1, 1, 3, 11), "1010101010101010", "v2v1v1v1v1v1v2v1", True),
    ((1, 1, 1, 7), "1011101010111011", "v3vvv1v2v1vvv3vv", False),
])
def test_multiplicity_vectors_of_four_grids(shifts, product, vector, filling):
    f = Filling.from_moduli([4, 6, 12, 12], shifts)
    assert f.window(0, 16) == product
    assert multiplicity_string(f, 0, 16) == vector
    assert is_filling(f) is filling


def test_only_the_grating_reaches_multiplicity_three():
    f = Filling.from_moduli([4, 6, 12, 12], [1, 1, 1, 7])
    assert max(multiplicity_profile(f)) == 3
    assert period(Filling.from_moduli([4, 6, 12, 12], [1, 1, 3, 11])) == 2


def test_mixing_criterion_values():
    assert mixing_criterion(Filling.from_moduli([3, 4])) == Fraction(14, 13)
    k5 = mixing_criterion(PrimeSystemSpec(SystemKind.SP1_PRIME, 5).filling())
    assert k5 == 1 + Fraction(36456, 325367)
    with pytest.raises(ValueError, match="criterion undefined"):
        mixing_criterion(Filling())


def test_singular_and_saturated():
    assert is_singular(Filling.from_moduli([2, 2], [0, 1]))
    assert is_saturated(Filling.from_moduli([2, 4, 8], [1, 2, 4]))
    assert not is_saturated(Filling.from_moduli([3, 5]))


def test_structural_period_route_beyond_scan_budget():
    f = Filling.from_moduli([6, 10, 15, 4], [0, 3, 5, 2])
    assert period(f, budget=10) == period(f)


def test_json_round_trip():
    f = Filling.from_moduli([3, INFINITE, 8], [1, 7, 5])
    assert Filling.from_json(f.to_json()) == f


@given(small_fillings())
def test_unit_count_routes_agree(f):
    assert count_units(f, method="scan") == count_units(f, method="ie")


@given(small_fillings())
def test_period_routes_agree(f):
    assert period(f, budget=1) == period(f)


@given(small_fillings())
def test_period_divides_lcm_and_is_minimal(f):
    L, pz = f.lcm(), period(f)
    assert L % pz == 0
    bits = unit_mask(f, 2 * L)
    assert (bits[:L] == bits[pz:pz + L]).all()
    for d in range(1, pz):
        if pz % d == 0:
            assert not (bits[:L] == bits[d:d + L]).all()


@given(small_fillings(), st.integers(-50, 50))
def test_translation_rotates_the_pattern(f, t):
    if count_units(f) * period(f) // f.lcm() < 2:
        return
    assert period(f.translated(t)) == period(f)
    a = series_lengths(f, 0)
    b = series_lengths(f.translated(t), 0)
    assert sorted(a) == sorted(b)


@given(small_fillings(), st.randoms())
def test_product_is_commutative(f, rnd):
    grids = list(f.grids)
    rnd.shuffle(grids)
    g = Filling(tuple(grids))
    assert f.window(-20, 40) == g.window(-20, 40)
    assert profile(f) == profile(g)


@given(small_fillings())
def test_profile_bookkeeping(f):
    prof = profile(f)
    assert prof.E + prof.H == prof.PZ
    assert prof.H_star >= prof.H
    assert prof.H_star == prof.PZ * sum(Fraction(1, a) for a in f.moduli)
    assert int(unit_mask(f, prof.PZ).sum()) == prof.E


@given(small_fillings())
def test_complete_imaging_over_a_period(f):
    prof = profile(f)
    if prof.H_star != int(prof.H_star):
        return
    text = complete_imaging(f, 0, prof.PZ)
    assert len(text) == prof.E + prof.H_star
    assert text.count("1") == prof.E


@given(small_fillings(), st.integers(1, 4))
def test_capped_imaging_lies_between(f, cap):
    direct = imaging(f, 0, 60, cap=1)
    capped = imaging(f, 0, 60, cap=cap)
    full = complete_imaging(f, 0, 60)
    assert len(direct) == 60
    assert len(direct) <= len(capped) <= len(full)
    assert direct.count("1") == capped.count("1") == full.count("1")
