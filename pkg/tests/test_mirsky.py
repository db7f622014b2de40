import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bfree_pressure.errors import CoprimalityRequired, SubsetBlowup
from bfree_pressure.mirsky import (
    gap_cylinder_coprime,
    mirsky_cylinder,
    mirsky_cylinder_exact,
    mirsky_ones_coprime,
    mirsky_pattern_coprime,
    mirsky_sweep,
)
from bfree_pressure.numtheory import ModulusSet, is_pairwise_coprime, reciprocal_sum
from bfree_pressure.words import CylinderPattern

B = ModulusSet
P = CylinderPattern.parse


@pytest.mark.parametrize(
    "pattern, expected",
    [("0:1", Fraction(1, 3)), ("0:1,4:1", Fraction(1, 6)), ("0:1,1:1", Fraction(0))],
)
def test_exact_examples(pattern, expected):
    assert mirsky_cylinder_exact(B([2, 3]), P(pattern)) == expected


@pytest.mark.parametrize(
    "moduli, T, expected",
    [([2, 3], {0}, Fraction(1, 3)), ([2, 3, 5], {0}, Fraction(4, 15)), ([2, 3], {0, 4}, Fraction(1, 6))],
)
def test_ones_coprime_examples(moduli, T, expected):
    assert mirsky_ones_coprime(B(moduli), T) == expected


def test_pattern_coprime_examples():
    assert mirsky_pattern_coprime(B([2, 3]), CylinderPattern.block("010")) == Fraction(1, 3)
    assert mirsky_pattern_coprime(B([2, 3, 5]), P("0:0,1:1,2:0")) == Fraction(4, 15)
    for moduli in ([2, 3], [5, 7, 9], [4, 25]):
        s = B(moduli)
        assert mirsky_pattern_coprime(s, P("0:0")) == 1 - mirsky_ones_coprime(s, {0})


def test_coprimality_required():
    with pytest.raises(CoprimalityRequired):
        mirsky_ones_coprime(B([4, 6]), {0})
    with pytest.raises(CoprimalityRequired):
        gap_cylinder_coprime(B([4, 6]), 3)


def test_subset_cap():
    pat = CylinderPattern({i: 0 for i in range(5)})
    with pytest.raises(SubsetBlowup):
        mirsky_pattern_coprime(B([2, 3]), pat, subset_cap=4)
    # the dispatcher falls back to exact counting
    assert mirsky_cylinder(B([2, 3]), pat) == mirsky_cylinder_exact(B([2, 3]), pat)


def test_sweep_examples():
    # B_4 = {2, 3}
    sweep = mirsky_sweep(B([2, 3, 25]), P("0:1"), [4, 10, 30])
    assert list(sweep) == [(4, Fraction(1, 3)), (10, Fraction(1, 3)), (30, Fraction(8, 25))]
    assert sweep.spread == Fraction(1, 75)
    assert mirsky_sweep(B([2, 3]), P("0:1"), [10, 20]).values == [Fraction(1, 3)] * 2
    sweep = mirsky_sweep(B([2, 3, 25]), P("0:0,1:1,2:0"), [10, 30])
    assert list(sweep) == [(10, Fraction(1, 3)), (30, Fraction(8, 25))]
    assert sweep.rows()[1] == (30, "8/25", 0.32, pytest.approx(1 / 75))
    with pytest.raises(ValueError):
        mirsky_sweep(B([2]), P("0:1"), [10, 10])


COPRIME_POOL = [2, 3, 4, 5, 7, 8, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 49]


@st.composite
def coprime_sets(draw):
    moduli = draw(st.lists(st.sampled_from(COPRIME_POOL), min_size=1, max_size=5, unique=True))
    s = B(moduli)
    assume(is_pairwise_coprime(s) and math.lcm(*moduli) <= 10**6)
    return s


@settings(max_examples=80, deadline=None)
@given(coprime_sets(), st.dictionaries(st.integers(0, 11), st.integers(0, 1), min_size=1, max_size=8))
def test_coprime_formula_equals_exact(s, entries):
    pat = CylinderPattern(entries)
    assert mirsky_pattern_coprime(s, pat) == mirsky_cylinder_exact(s, pat)


@settings(max_examples=60, deadline=None)
@given(coprime_sets(), st.integers(2, 12))
def test_gap_cylinder_fast_path(s, ell):
    pat = CylinderPattern.block("0" + "1" * (ell - 2) + "0")
    assert gap_cylinder_coprime(s, ell) == mirsky_cylinder_exact(s, pat)


def gap_bound(s, ell):
    """Pairwise sum bounding nu(0 1^(l-2) 0): cross terms 1/(b b'), plus 1/b when b | l - 1."""
    S = reciprocal_sum(s)
    diag = sum(Fraction(1, b * b) for b in s.moduli)
    return S * S - diag + sum(Fraction(1, b) for b in s.moduli if (ell - 1) % b == 0)


@settings(max_examples=60, deadline=None)
@given(coprime_sets(), st.integers(2, 60))
def test_gap_cylinder_bounded_by_square_sum(s, ell):
    nu = gap_cylinder_coprime(s, ell)
    assert nu <= gap_bound(s, ell)
    if ell <= s.min:
        S = reciprocal_sum(s)
        assert nu <= S * S


def test_square_sum_fails_when_a_modulus_divides_the_gap():
    # B = {2}: 010 has frequency 1/2, while S^2 = 1/4
    s = B([2])
    nu = gap_cylinder_coprime(s, 3)
    assert nu == Fraction(1, 2)
    assert nu > reciprocal_sum(s) ** 2
    assert nu <= gap_bound(s, 3)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(2, 50), min_size=1, max_size=6, unique=True))
def test_one_cylinder_sweep_nonincreasing(moduli):
    assume(math.lcm(*moduli) <= 10**5)
    vals = mirsky_sweep(B(moduli), P("0:1"), range(2, 53, 3), method="exact").values
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_independence_across_coprime_moduli():
    # brute-force the CRT statement on a small set
    s = B([3, 4, 5])
    for T in combinations(range(6), 3):
        pat = CylinderPattern({t: 1 for t in T})
        assert mirsky_ones_coprime(s, T) == mirsky_cylinder_exact(s, pat)
