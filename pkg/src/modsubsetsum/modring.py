"""Arithmetic over Z_m: normalization, unit sampling, wrapped intervals."""

from __future__ import annotations

import math
import zlib
from typing import NamedTuple

import numpy as np

MAX_MODULUS = 2**31 - 1


def rng_stream(seed: int, name: str) -> np.random.Generator:
    """Independent generator for the named consumer of a master seed."""
    return np.random.default_rng([int(seed) & (2**64 - 1), zlib.crc32(name.encode())])


def check_modulus(m: int) -> int:
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool):
        raise TypeError(f"modulus must be an integer, got {type(m).__name__}")
    if m < 1 or m > MAX_MODULUS:
        raise ValueError(f"modulus must lie in [1, 2^31 - 1], got {m}")
    return int(m)


def normalize(x: int, m: int) -> int:
    """Return ``x mod m`` in ``[0, m)``; Python's ``%`` already handles negatives."""
    return x % m


def abs_val(x: int, m: int) -> int:
    """Distance of ``x`` from 0 around the cycle, ``min(x, m - x)``.

    >>> abs_val(5, 7), abs_val(3, 7), abs_val(0, 7)
    (2, 3, 0)
    """
    x %= m
    return min(x, m - x)


def gcd(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("gcd takes nonnegative arguments")
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def is_unit(x: int, m: int) -> bool:
    return math.gcd(x % m, m) == 1


def sample_unit(m: int, rng: np.random.Generator) -> int:
    """Draw a uniform element of Z_m^* by rejection from [1, m)."""
    if m < 2:
        raise ValueError(f"Z_m^* sampling needs m >= 2, got {m}")
    while True:
        x = int(rng.integers(1, m))
        if math.gcd(x, m) == 1:
            return x


def sample_units(m: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Vectorized :func:`sample_unit`; returns ``size`` independent draws."""
    if m < 2:
        raise ValueError(f"Z_m^* sampling needs m >= 2, got {m}")
    out = np.empty(size, dtype=np.int64)
    filled = 0
    while filled < size:
        need = size - filled
        cand = rng.integers(1, m, size=2 * need + 8, dtype=np.int64)
        cand = cand[np.gcd(cand, m) == 1][:need]
        out[filled:filled + cand.size] = cand
        filled += cand.size
    return out


class WrappedInterval(NamedTuple):
    """Residues reached walking upward from ``l`` to ``r``, wrapping past m - 1."""

    l: int
    r: int

    def length(self, m: int) -> int:
        return (self.r - self.l) % m + 1

    def contains(self, x: int, m: int) -> bool:
        return interval_contains(self, x, m)

    def residues(self, m: int) -> list[int]:
        return [(self.l + d) % m for d in range(self.length(m))]


def interval_contains(iv: WrappedInterval | tuple[int, int], x: int, m: int) -> bool:
    """
    >>> interval_contains((5, 2), 0, 7), interval_contains((5, 2), 4, 7)
    (True, False)
    """
    l, r = iv
    return (x - l) % m <= (r - l) % m


def contains_many(l, r, x, m: int) -> np.ndarray:
    """Elementwise :func:`interval_contains` over integer arrays."""
    l = np.asarray(l, dtype=np.int64)
    return np.mod(np.asarray(x, dtype=np.int64) - l, m) <= np.mod(np.asarray(r, dtype=np.int64) - l, m)


class SumSet:
    """Dense membership set over Z_m.

    Stores one byte per residue; ``count`` tracks the number of members.
    Compares equal to another ``SumSet`` with the same ``m`` and members, or
    to any plain set/frozenset of ints with the same members.
    """

    def __init__(self, m: int, members=(0,)):
        self.m = check_modulus(m)
        self.membership = np.zeros(self.m, dtype=np.int8)
        self.count = 0
        self.add_many(members)

    @classmethod
    def from_mask(cls, m: int, mask: np.ndarray) -> "SumSet":
        out = cls(m, ())
        out.membership[:] = np.asarray(mask, dtype=bool)
        out.count = int(out.membership.sum())
        return out

    def add_many(self, xs) -> int:
        """Insert residues; returns how many were new."""
        xs = np.asarray(list(xs) if not isinstance(xs, np.ndarray) else xs, dtype=np.int64)
        if not xs.size:
            return 0
        if xs.min() < 0 or xs.max() >= self.m:
            raise ValueError(f"residues outside [0, {self.m})")
        xs = np.unique(xs)
        fresh = xs[self.membership[xs] == 0]
        self.membership[fresh] = 1
        self.count += fresh.size
        return int(fresh.size)

    def add(self, x: int) -> bool:
        return self.add_many([x]) == 1

    def __contains__(self, x) -> bool:
        return 0 <= x < self.m and bool(self.membership[x])

    def __len__(self):
        return self.count

    def __iter__(self):
        return iter(self.members())

    def members(self) -> list[int]:
        return np.flatnonzero(self.membership).tolist()

    def copy(self) -> "SumSet":
        return SumSet.from_mask(self.m, self.membership)

    def issubset(self, other) -> bool:
        if isinstance(other, SumSet):
            return other.m == self.m and not np.any(self.membership > other.membership)
        return set(self.members()) <= set(other)

    def __eq__(self, other):
        if isinstance(other, SumSet):
            return self.m == other.m and np.array_equal(self.membership, other.membership)
        if isinstance(other, (set, frozenset)):
            return set(self.members()) == other
        return NotImplemented

    def __repr__(self):
        shown = self.members()
        if len(shown) > 12:
            return f"SumSet(m={self.m}, count={self.count})"
        return f"SumSet(m={self.m}, {shown})"
