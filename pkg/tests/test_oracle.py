import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modsubsetsum.oracle import (
    BRUTE_FORCE_MAX_N, bellman, bellman_count, brute_force, naive_range, step_sets,
    uniform_identity_test,
)

from conftest import set_bellman_steps, subset_sums


@st.composite
def instances(draw, m_max=200, n_max=12):
    m = draw(st.integers(1, m_max))
    ws = draw(st.lists(st.integers(0, m - 1), max_size=n_max))
    return m, ws


@pytest.mark.parametrize("ws, m", [([], 9), ([3, 4], 5), ([2, 4], 8), ([1, 1], 3), ([], 3), ([0, 0], 1)])
def test_bellman_small_cases(ws, m):
    want = subset_sums(ws, m)
    assert bellman(ws, m) == want
    assert brute_force(ws, m) == want
    assert bellman_count(ws, m) == len(want)


def test_documented_values():
    assert bellman([3, 4], 5).members() == [0, 2, 3, 4]
    assert bellman([2, 4], 8).members() == [0, 2, 4, 6]
    assert brute_force([1, 1], 3).members() == [0, 1, 2]


def test_bellman_agrees_with_brute_force(rng):
    for _ in range(1000):
        m = int(rng.integers(1, 300))
        ws = rng.integers(0, m, size=int(rng.integers(0, 17)))
        assert bellman(ws, m) == brute_force(ws, m)


def test_brute_force_size_cap():
    with pytest.raises(ValueError):
        brute_force([1] * (BRUTE_FORCE_MAX_N + 1), 7)


def test_weight_range_checked():
    with pytest.raises(ValueError):
        bellman([5], 5)
    with pytest.raises(ValueError):
        step_sets([-1], 5)


@settings(max_examples=150, deadline=None)
@given(instances(), st.randoms(use_true_random=False))
def test_bellman_order_invariant(inst, rnd):
    m, ws = inst
    perm = list(ws)
    rnd.shuffle(perm)
    assert bellman(ws, m) == bellman(perm, m)


@settings(max_examples=150, deadline=None)
@given(instances(), st.integers(0, 10**6))
def test_bellman_monotone_and_contains_zero(inst, extra):
    m, ws = inst
    before = bellman(ws, m)
    after = bellman(ws + [extra % m], m)
    assert 0 in before and before.issubset(after)


def test_step_sets_examples():
    tr = step_sets([3], 5)
    assert tr.nplus[0].tolist() == [3] and tr.nminus[0].tolist() == [0]
    tr = step_sets([0], 5)
    assert tr.nplus[0].size == 0 and tr.nminus[0].size == 0


@settings(max_examples=200, deadline=None)
@given(instances(m_max=120, n_max=15))
def test_step_sets_match_set_algebra(inst):
    m, ws = inst
    tr = step_sets(ws, m)
    assert len(tr.nplus) == len(ws) and len(tr.sums) == len(ws) + 1
    for i, (prev, nxt, plus, minus) in enumerate(set_bellman_steps(ws, m)):
        assert set(tr.nplus[i].tolist()) == plus
        assert set(tr.nminus[i].tolist()) == minus
        assert tr.sumset(i) == prev and tr.sumset(i + 1) == nxt
        # the newly reached sums and the sums not reached by the shift balance out
        assert len(plus) == len(minus)
    assert tr.final == bellman(ws, m)


def test_uniform_identity_test_edges():
    rng = np.random.default_rng(3)
    assert uniform_identity_test(np.zeros(50, dtype=int), 1000, rng) == 0.0
    v = np.zeros(50, dtype=int)
    v[17] = 1
    assert abs(uniform_identity_test(v, 10_000, rng) - 0.5) <= 0.02


def test_uniform_identity_test_random_vectors():
    rng = np.random.default_rng(4)
    for _ in range(10):
        v = rng.integers(-1, 2, size=300)
        if not v.any():
            v[0] = 1
        assert uniform_identity_test(v, 10_000, rng) >= 0.45


def test_naive_range_basics():
    assert naive_range([], (0, 6), 7) == (0, 0)
    assert naive_range([(3, (1, 3))], (2, 4), 7) == (1, 3)
    assert naive_range([(3, (1, 3))], (4, 2), 7) == (0, 0)
    assert naive_range([(5, (1, 5)), (1, (-1, -3))], (5, 2), 7) == (0, 2)
