"""Shared helpers: small independent reference implementations.

These deliberately use plain Python sets and loops so they share no code
with the package under test.
"""

from itertools import combinations

import numpy as np
import pytest


def subset_sums(weights, m):
    """Every subset sum mod m, by enumerating subsets explicitly."""
    out = set()
    for k in range(len(weights) + 1):
        for combo in combinations(weights, k):
            out.add(sum(combo) % m)
    return out


def set_bellman_steps(weights, m):
    """Yield ``(S_prev, S_next, nplus, nminus)`` using Python sets."""
    s = {0}
    for w in weights:
        shifted = {(x + w) % m for x in s}
        nxt = s | shifted
        yield s, nxt, nxt - s, nxt - shifted
        s = nxt


def set_bellman(weights, m):
    s = {0}
    for w in weights:
        s |= {(x + w) % m for x in s}
    return s


def wrapped_members(l, r, m):
    """Residues of the wrapped interval [l, r] by walking upward."""
    out = [l % m]
    while out[-1] != r % m:
        out.append((out[-1] + 1) % m)
    return out


def random_instance(rng, m_max=4096, n_max=128):
    m = int(rng.integers(2, m_max + 1))
    n = int(rng.integers(0, n_max + 1))
    return m, [int(w) for w in rng.integers(0, m, size=n)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
