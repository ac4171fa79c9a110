"""Ground-truth baselines used by the differential and statistical tests.

``bellman`` and ``step_sets`` run the textbook recurrence
``S_i = S_{i-1} | (S_{i-1} + w_i)`` on a Python integer used as an m-bit
vector, so each step is a word-parallel cyclic shift-or.  ``brute_force``
enumerates all subsets and shares no code with them.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .aggtree import SketchPair
from .modring import SumSet, check_modulus

BRUTE_FORCE_MAX_N = 24


def _check_weights(weights, m: int) -> list[int]:
    ws = [int(w) for w in weights]
    for w in ws:
        if not 0 <= w < m:
            raise ValueError(f"weight {w} outside [0, {m})")
    return ws


def _rotate(bits: int, w: int, m: int, mask: int) -> int:
    """Cyclic shift of an m-bit vector: bit x moves to (x + w) mod m."""
    if w == 0:
        return bits
    return ((bits << w) | (bits >> (m - w))) & mask


def bits_to_indices(bits: int, m: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((m + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")[:m])


def bellman(weights, m: int) -> SumSet:
    m = check_modulus(m)
    mask = (1 << m) - 1
    bits = 1
    for w in _check_weights(weights, m):
        bits |= _rotate(bits, w, m, mask)
    return SumSet(m, bits_to_indices(bits, m))


def bellman_count(weights, m: int) -> int:
    """Number of attainable sums, without materializing the set."""
    m = check_modulus(m)
    mask = (1 << m) - 1
    bits = 1
    for w in _check_weights(weights, m):
        bits |= _rotate(bits, w, m, mask)
    return bits.bit_count()


class StepTrace(NamedTuple):
    """Per-step difference sets of a Bellman run.

    ``nplus[i]`` is S^{i+1} minus S^i, ``nminus[i]`` is S^{i+1} minus
    (S^i + w_{i+1}) (zero-based list positions, sorted arrays).  ``sums[i]``
    is the bitmask of S^i, so ``sums`` has one more entry than the steps.
    """

    m: int
    weights: list[int]
    nplus: list[np.ndarray]
    nminus: list[np.ndarray]
    sums: list[int]

    def sumset(self, i: int) -> SumSet:
        return SumSet(self.m, bits_to_indices(self.sums[i], self.m))

    @property
    def final(self) -> SumSet:
        return self.sumset(len(self.sums) - 1)


def step_sets(weights, m: int) -> StepTrace:
    m = check_modulus(m)
    ws = _check_weights(weights, m)
    mask = (1 << m) - 1
    bits = 1
    nplus, nminus, sums = [], [], [bits]
    for w in ws:
        shifted = _rotate(bits, w, m, mask)
        nplus.append(bits_to_indices(shifted & ~bits & mask, m))
        nminus.append(bits_to_indices(bits & ~shifted & mask, m))
        bits |= shifted
        sums.append(bits)
    return StepTrace(m, ws, nplus, nminus, sums)


def brute_force(weights, m: int) -> SumSet:
    """Enumerate all 2^n subset sums explicitly."""
    m = check_modulus(m)
    ws = _check_weights(weights, m)
    if len(ws) > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force supports n <= {BRUTE_FORCE_MAX_N}, got {len(ws)}")
    sums = np.zeros(1, dtype=np.int64)
    for w in ws:
        sums = np.concatenate([sums, sums + w])
    return SumSet(m, np.unique(sums % m))


def uniform_identity_test(v, trials: int, rng: np.random.Generator, chunk: int = 2048) -> float:
    """Fraction of uniform 0/1 vectors r with <v, r> != 0."""
    v = np.asarray(v, dtype=np.int64)
    if v.size > 2**16:
        raise ValueError("dense identity test limited to m <= 2^16")
    hits = 0
    done = 0
    while done < trials:
        k = min(chunk, trials - done)
        r = rng.integers(0, 2, size=(k, v.size), dtype=np.int64)
        hits += int(np.count_nonzero(r @ v))
        done += k
    return hits / trials if trials else 0.0


def naive_range(entries, iv, m: int) -> SketchPair:
    """O(m) scan: pair sum of entries ``(key, (v, i*v))`` with key in the wrapped interval."""
    if m > 2**16:
        raise ValueError("naive scan limited to m <= 2^16")
    dense = np.zeros((m, 2), dtype=np.int64)
    for key, (v, iw) in entries:
        dense[key, 0] += v
        dense[key, 1] += iw
    l, r = iv
    inside = np.mod(np.arange(m) - l, m) <= (r - l) % m
    s1, s2 = dense[inside].sum(axis=0)
    return SketchPair(int(s1), int(s2))
