import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bfree_pressure.errors import EnumerationCap, NoFixedPosition
from bfree_pressure.numtheory import ModulusSet
from bfree_pressure.oracle import (
    LanguageSpec,
    dp_error_bound,
    dp_shift_pressure,
    enumerate_blocks,
    naive_pressure,
    oracle_compare,
    single_period_pressure,
)
from bfree_pressure.pressure import pressure_bfree_hereditary, pressure_periodic_sandwich
from bfree_pressure.transfer import Potential1, Potential2, build_transfer
from bfree_pressure.words import PeriodicWord, SandwichPair, eta_word, sandwich_pair

B = ModulusSet
W = PeriodicWord.parse
ZERO = Potential2.zero()
ETA_PAIR = sandwich_pair(PeriodicWord.zeros(1), eta_word(B([2, 3])))


def brute_blocks(w, x, n):
    """All 0/1 strings of length n squeezed between some shift of (w, x)."""
    s = w.period
    out = set()
    for bits in product("01", repeat=n):
        for i in range(s):
            if all(w[i + j] <= int(c) <= x[i + j] for j, c in enumerate(bits)):
                out.add("".join(bits))
                break
    return sorted(out)


def test_enumerate_examples():
    assert enumerate_blocks(LanguageSpec.full_shift(3)) == ["".join(b) for b in product("01", repeat=3)]
    assert enumerate_blocks(LanguageSpec.hereditary(B([2]), 2)) == ["00", "01", "10"]
    pair = sandwich_pair(W("010"), W("011"))
    blocks = enumerate_blocks(LanguageSpec.sandwich(pair, 3))
    assert blocks == ["001", "010", "011", "100", "101", "110"]
    assert blocks == brute_blocks(pair.w, pair.x, 3)


def test_enumeration_cap():
    with pytest.raises(EnumerationCap):
        enumerate_blocks(LanguageSpec.full_shift(20), cap=1000)


def test_language_spec_validation():
    with pytest.raises(ValueError):
        LanguageSpec("periodic_sandwich", 3)
    with pytest.raises(ValueError):
        LanguageSpec("nonsense", 3)
    with pytest.raises(ValueError):
        LanguageSpec.full_shift(0)


def test_naive_examples():
    diag = Potential2([[0, 0], [0, 1]])
    est = naive_pressure(LanguageSpec.full_shift(), Potential2([[0, 0], [0, 0.0]]), 10)
    assert est.estimate == pytest.approx(1.0)
    # a potential reading both coordinates pays for the trailing symbol
    est = naive_pressure(LanguageSpec.full_shift(), diag, 10)
    assert est.blocks == 2**11
    target = math.log2(build_transfer(diag).lambda_plus)
    assert 0 <= est.estimate - target <= est.bound
    est = naive_pressure(LanguageSpec.hereditary(B([2, 3])), ZERO, 12)
    assert abs(est.estimate - 1 / 3) <= min(0.2, est.bound)
    phi = Potential2([[0.3, -0.7], [0.5, 1.1]])
    full = LanguageSpec.sandwich(sandwich_pair(W("0"), W("1")))
    assert naive_pressure(full, phi, 9).estimate == naive_pressure(LanguageSpec.full_shift(), phi, 9).estimate


def test_naive_trailing_symbol():
    # with the trailing coordinate forced in, phi = 0 on n + 1 symbols over n windows gives 1.1
    blocks = enumerate_blocks(LanguageSpec.full_shift(11))
    assert math.log2(len(blocks)) / 10 == pytest.approx(1.1)
    assert naive_pressure(LanguageSpec.full_shift(), Potential1(0, 0), 10).estimate == pytest.approx(1.0)


def test_naive_drops_ignored_coordinates():
    phi2 = Potential2([[0.4, 0.4], [-1.0, -1.0]])
    phi1 = Potential1(0.4, -1.0)
    spec = LanguageSpec.hereditary(B([2, 3]))
    assert naive_pressure(spec, phi2, 12) == naive_pressure(spec, phi1, 12)


def test_single_period_examples():
    assert single_period_pressure(ETA_PAIR, ZERO) == pytest.approx(1 / 3)
    assert single_period_pressure(sandwich_pair(W("010"), W("011")), ZERO) == pytest.approx(1 / 3)
    assert single_period_pressure(sandwich_pair(W("0"), W("01")), ZERO) == pytest.approx(1 / 2)
    with pytest.raises(NoFixedPosition):
        single_period_pressure(sandwich_pair(W("0"), W("1")), ZERO)
    wide = sandwich_pair(W("0" * 30), W("0" + "1" * 29))
    with pytest.raises(EnumerationCap):
        single_period_pressure(wide, ZERO)


def test_dp_examples():
    assert abs(dp_shift_pressure(ETA_PAIR, ZERO, 100) - 1 / 3) <= 1e-2
    phi = Potential2([[0, 1], [0, 0]])
    assert abs(dp_shift_pressure(sandwich_pair(W("010"), W("011")), phi, 200) - 2 / 3) <= 1e-2
    assert abs(dp_shift_pressure(sandwich_pair(W("0"), W("1")), ZERO, 50) - 1.0) <= 1e-2


@pytest.mark.parametrize(
    "pair, target",
    [(ETA_PAIR, 1 / 3), (sandwich_pair(W("010"), W("011")), 1 / 3), (sandwich_pair(W("0"), W("1")), 1.0)],
)
def test_dp_exact_for_zero_potential(pair, target):
    # every window of whole periods holds the same number of free symbols
    assert dp_shift_pressure(pair, ZERO, 7) == pytest.approx(target, abs=1e-12)
    assert dp_error_bound(ZERO, 7, pair) == 0


def test_dp_bound_gap():
    pair = sandwich_pair(W("0000"), W("0110"))  # fixed 0 and 3: gaps 3 and 1
    phi = Potential2([[1, 0], [0, 0]])
    assert dp_error_bound(phi, 5, pair) == pytest.approx(5 / 20)


def test_dp_is_deterministic():
    phi = Potential2([[0.3, -0.7], [0.5, 1.1]])
    pair = sandwich_pair(W("0100110"), W("0111111"))
    assert dp_shift_pressure(pair, phi, 40) == dp_shift_pressure(pair, phi, 40)


def test_oracle_compare_examples():
    target = pressure_bfree_hereditary(B([2, 3]), ZERO)
    cmp = oracle_compare(target, LanguageSpec.hereditary(B([2, 3])), ZERO, [6, 12, 24])
    assert cmp.passed
    rng = np.random.default_rng(3)
    pair = sandwich_pair(W("010"), W("011"))
    phi = Potential2(rng.uniform(-2, 2, (2, 2)))
    target = pressure_periodic_sandwich(pair, phi)
    cmp = oracle_compare(target, LanguageSpec.sandwich(pair), phi, [9, 30, 90], method="dp")
    assert cmp.passed
    for row in cmp.rows:
        assert row["diff"] <= dp_error_bound(phi, row["n"], pair) + 1e-9
        assert row["diff"] <= 2 * max(abs(v) for r in phi.phi for v in r) / row["n"] + 1e-9
    cmp = oracle_compare(1.0, LanguageSpec.full_shift(), ZERO, [4, 8, 16])
    assert cmp.passed
    assert cmp.to_csv().splitlines()[0] == "n,estimate,bound,diff"
    assert cmp.to_json()["pass"] is True


def test_oracle_compare_reports_failures():
    cmp = oracle_compare(0.5, LanguageSpec.full_shift(), ZERO, [8])
    assert not cmp.passed


def test_entropy_from_block_count():
    c24 = len(enumerate_blocks(LanguageSpec.hereditary(B([2, 3]), 24)))
    assert abs(math.log2(c24) / 24 - 1 / 3) <= 0.15


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_enumeration_matches_brute_force(data):
    s = data.draw(st.integers(1, 6))
    x = data.draw(st.lists(st.integers(0, 1), min_size=s, max_size=s))
    mask = data.draw(st.lists(st.integers(0, 1), min_size=s, max_size=s))
    pair = SandwichPair(PeriodicWord([a & m for a, m in zip(x, mask)]), PeriodicWord(x))
    n = data.draw(st.integers(1, 8))
    assert enumerate_blocks(LanguageSpec.sandwich(pair, n)) == brute_blocks(pair.w, pair.x, n)


@pytest.mark.parametrize("moduli", [[2], [2, 3], [3, 4]])
def test_heredity(moduli):
    for n in range(1, 13):
        blocks = set(enumerate_blocks(LanguageSpec.hereditary(B(moduli), n)))
        for blk in blocks:
            for j, c in enumerate(blk):
                if c == "1":
                    assert blk[:j] + "0" + blk[j + 1 :] in blocks


@st.composite
def pairs_and_potentials(draw, max_period=12):
    s = draw(st.integers(1, max_period))
    x = draw(st.lists(st.integers(0, 1), min_size=s, max_size=s))
    mask = draw(st.lists(st.integers(0, 1), min_size=s, max_size=s))
    vals = draw(st.lists(st.floats(-2, 2), min_size=4, max_size=4))
    pair = SandwichPair(PeriodicWord([a & m for a, m in zip(x, mask)]), PeriodicWord(x))
    return pair, Potential2([vals[:2], vals[2:]])


@settings(max_examples=60, deadline=None)
@given(pairs_and_potentials())
def test_three_way_agreement(case):
    pair, phi = case
    closed = pressure_periodic_sandwich(pair, phi).value
    if not pair.is_full_shift:
        assert single_period_pressure(pair, phi) == pytest.approx(closed, abs=1e-9)
    dp = dp_shift_pressure(pair, phi, 30)
    assert abs(dp - closed) <= dp_error_bound(phi, 30, pair) + 1e-9


@settings(max_examples=40, deadline=None)
@given(pairs_and_potentials(max_period=6), st.integers(4, 12))
def test_naive_within_bound(case, n):
    pair, phi = case
    closed = pressure_periodic_sandwich(pair, phi).value
    est = naive_pressure(LanguageSpec.sandwich(pair), phi, n)
    assert -1e-9 <= est.estimate - closed <= est.bound + 1e-9
