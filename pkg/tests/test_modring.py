import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from modsubsetsum.modring import (
    MAX_MODULUS, SumSet, WrappedInterval, abs_val, check_modulus, gcd, interval_contains,
    contains_many, is_unit, normalize, rng_stream, sample_unit, sample_units,
)

from conftest import wrapped_members


@pytest.mark.parametrize("x, m, want", [(0, 7, 0), (-6, 7, 1), (15, 7, 1), (-7, 7, 0), (6, 1, 0)])
def test_normalize(x, m, want):
    assert normalize(x, m) == want


@pytest.mark.parametrize("x, want", [(0, 0), (5, 2), (3, 3)])
def test_abs_val_examples(x, want):
    assert abs_val(x, 7) == want


@given(st.integers(1, 1000), st.data())
def test_abs_val_symmetric_and_bounded(m, data):
    x = data.draw(st.integers(0, m - 1))
    assert abs_val(x, m) == abs_val((m - x) % m, m)
    assert 2 * abs_val(x, m) <= m


@pytest.mark.parametrize("a, b, want", [(12, 18, 6), (1, 7, 1), (0, 5, 5), (5, 0, 5)])
def test_gcd_examples(a, b, want):
    assert gcd(a, b) == want


def test_gcd_rejects_bad_input():
    with pytest.raises(ValueError):
        gcd(0, 0)
    with pytest.raises(ValueError):
        gcd(-4, 6)


def test_sample_unit_small_groups():
    rng = np.random.default_rng(1)
    assert {sample_unit(2, rng) for _ in range(50)} == {1}
    assert {sample_unit(6, rng) for _ in range(200)} == {1, 5}
    with pytest.raises(ValueError):
        sample_unit(1, rng)


def test_sample_unit_is_uniform_on_z7():
    # chi-square goodness of fit, 5 dof; 20.5 is the 0.999 quantile
    rng = np.random.default_rng(7)
    counts = Counter(sample_unit(7, rng) for _ in range(100_000))
    assert set(counts) == set(range(1, 7))
    freq = np.array([counts[k] for k in range(1, 7)]) / 100_000
    assert np.all(np.abs(freq - 1 / 6) < 0.01)
    expected = 100_000 / 6
    chi2 = sum((counts[k] - expected) ** 2 / expected for k in range(1, 7))
    assert chi2 < 20.5


@given(st.integers(2, 10**6), st.integers(0, 2**32))
def test_sampled_units_are_units(m, seed):
    rng = np.random.default_rng(seed)
    u = sample_unit(m, rng)
    assert 1 <= u < m and math.gcd(u, m) == 1
    us = sample_units(m, 16, rng)
    assert np.all(np.gcd(us, m) == 1) and np.all((us >= 1) & (us < m))
    assert all(is_unit(int(x), m) for x in us)


@pytest.mark.parametrize("iv, x, want", [((2, 5), 3, True), ((5, 2), 0, True), ((5, 2), 4, False)])
def test_interval_contains_examples(iv, x, want):
    assert interval_contains(iv, x, 7) is want
    assert WrappedInterval(*iv).contains(x, 7) is want


def test_interval_contains_matches_scan_exhaustively():
    for m in range(1, 33):
        xs = np.arange(m)
        for l in range(m):
            for r in range(m):
                members = set(wrapped_members(l, r, m))
                got = contains_many(l, r, xs, m)
                assert set(np.flatnonzero(got)) == members
                assert all(interval_contains((l, r), x, m) == (x in members) for x in range(m))
                assert WrappedInterval(l, r).residues(m) == wrapped_members(l, r, m)


def test_full_cover_interval():
    assert WrappedInterval(3, 2).length(7) == 7
    assert all(interval_contains((3, 2), x, 7) for x in range(7))


def test_check_modulus_bounds():
    assert check_modulus(1) == 1 and check_modulus(MAX_MODULUS) == MAX_MODULUS
    for bad in (0, -3, MAX_MODULUS + 1):
        with pytest.raises(ValueError):
            check_modulus(bad)
    with pytest.raises(TypeError):
        check_modulus(2.0)


def test_rng_streams_are_reproducible_and_distinct():
    a = rng_stream(5, "solver").integers(0, 2**62, size=4)
    b = rng_stream(5, "solver").integers(0, 2**62, size=4)
    c = rng_stream(5, "verifier").integers(0, 2**62, size=4)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


class TestSumSet:
    def test_starts_with_zero(self):
        s = SumSet(9)
        assert s.members() == [0] and len(s) == 1 and 0 in s

    def test_add_many_counts_new(self):
        s = SumSet(10)
        assert s.add_many([3, 3, 4, 0]) == 2
        assert s.members() == [0, 3, 4]
        assert s.add(3) is False and s.add(9) is True
        assert s.count == 4

    def test_equality_with_plain_sets(self):
        s = SumSet(5, [0, 2, 3, 4])
        assert s == {0, 2, 3, 4}
        assert s == SumSet(5, [4, 3, 2, 0])
        assert s != SumSet(6, [0, 2, 3, 4])
        assert SumSet(5, [0, 2]).issubset(s)
        assert not s.issubset(SumSet(5, [0, 2]))

    def test_copy_is_independent(self):
        s = SumSet(5)
        t = s.copy()
        t.add(1)
        assert 1 not in s and 1 in t
