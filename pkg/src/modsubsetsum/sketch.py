"""Linear sketches of vectors over Z_m under a permuted key order.

For a unit ``a`` every index ``i`` gets the key ``a*i mod m``.  The sketch of
a vector ``v`` over a wrapped key window ``[l, r]`` is the pair
``(sum v_i, sum i*v_i)`` taken over indices whose key falls in the window.
If exactly one nonzero lands in the window, ``s2 / s1`` is its index.

Shifting ``v`` by ``w`` moves every key by ``a*w``, so the sketch of the
shifted vector over ``[l, r]`` is ``(s1, w*s1 + s2)`` of the original over
``[l - a*w, r - a*w]``.  The index component then counts ``i + w`` without
reducing mod m, so recovered indices are always reduced mod m before use.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np

from .aggtree import AggTree, SketchPair, StaticAggregate
from .modring import WrappedInterval, contains_many, sample_unit, sample_units


def ceil_log2(x: int) -> int:
    return (int(x) - 1).bit_length() if x > 1 else 0


def ll(m: int) -> int:
    """Clamped log-log of m used by every probability threshold.

    >>> ll(2), ll(2**16), ll(10**6)
    (1, 4, 5)
    """
    return max(1, ceil_log2(max(2, ceil_log2(max(2, m)))))


class DParams(NamedTuple):
    a: int
    b: int
    c: int


def sample_d(m: int, rng: np.random.Generator) -> DParams:
    """Draw ``(a, b, c)``: a unit, an offset, and a power-of-two width."""
    if m < 2:
        raise ValueError(f"distribution D needs m >= 2, got {m}")
    a = sample_unit(m, rng)
    b = int(rng.integers(0, m))
    c = 1 << int(rng.integers(0, ceil_log2(m) + 1))
    return DParams(a, b, c)


def sample_d_many(m: int, size: int, rng: np.random.Generator):
    """Vectorized :func:`sample_d`; returns arrays ``(a, b, c)``."""
    if m < 2:
        raise ValueError(f"distribution D needs m >= 2, got {m}")
    a = sample_units(m, size, rng)
    b = rng.integers(0, m, size=size, dtype=np.int64)
    c = np.left_shift(1, rng.integers(0, ceil_log2(m) + 1, size=size, dtype=np.int64))
    return a, b, c


def d_window(b, c, m: int):
    """Key window ``[-b, -b + c]`` selected by offset b and width c.

    Widths of m - 1 or more cover the whole key space.  Works on scalars
    and arrays alike.
    """
    l = np.mod(-np.asarray(b, dtype=np.int64), m)
    r = np.where(np.asarray(c) >= m - 1, np.mod(l - 1, m), np.mod(l + c, m))
    if np.ndim(l) == 0:
        return WrappedInterval(int(l), int(r))
    return l, r


def d_indicator(params: DParams, m: int) -> np.ndarray:
    """Dense 0/1 vector of indices i with ``(a*i + b) mod m <= c``."""
    a, b, c = params
    i = np.arange(m, dtype=np.int64)
    return ((a * i + b) % m <= c).astype(np.int64)


def shift_transform(s: SketchPair, w: int, m: int | None = None) -> SketchPair:
    """Sketch of the w-shifted vector from the sketch over the pre-shift window."""
    return SketchPair(s[0], w * s[0] + s[1])


class KeyedView:
    """A vector over Z_m held in a pair aggregate keyed by ``a*i mod m``.

    ``store`` is an :class:`AggTree` (optionally one layer of a bank) or a
    :class:`StaticAggregate`; ``dense`` maps index to value directly.
    """

    def __init__(self, a: int, store, dense: np.ndarray, layer: int = 0):
        self.a = int(a)
        self.store = store
        self.dense = dense
        self.layer = layer
        self.m = store.m

    @classmethod
    def from_entries(cls, a: int, m: int, index, value, static: bool = False) -> "KeyedView":
        index = np.asarray(index, dtype=np.int64)
        value = np.asarray(value, dtype=np.int64)
        dense = np.zeros(m, dtype=np.int64)
        np.add.at(dense, index, value)
        keys = (a * index) % m
        if static:
            store = StaticAggregate(m, keys, value, index * value)
        else:
            store = AggTree(m)
            store.add_points(keys, value, index * value)
        return cls(a, store, dense)

    def key(self, i):
        return (self.a * np.asarray(i, dtype=np.int64)) % self.m

    def __getitem__(self, i):
        return int(self.dense[int(i) % self.m])

    def sketch(self, l: int, r: int) -> SketchPair:
        s1, s2 = self.store.range_aggregate_many(l, r, self.layer)
        return SketchPair(int(s1), int(s2))

    def sketch_many(self, l, r):
        return self.store.range_aggregate_many(l, r, self.layer)


def difference_sketch_many(ds: KeyedView, dn: KeyedView, l, r, w: int):
    """Sketch over windows ``[l, r]`` of ``1_{N-} + 1_{S+w} - 1_{N+} - 1_S``.

    ``ds`` holds ``1_S`` and ``dn`` holds ``1_{N+} - 1_{N-}``, both under the
    same unit.
    """
    m = ds.m
    l = np.asarray(l, dtype=np.int64)
    r = np.asarray(r, dtype=np.int64)
    aw = (ds.a * w) % m
    k = l.size
    both1, both2 = ds.sketch_many(np.concatenate([(l - aw) % m, l]), np.concatenate([(r - aw) % m, r]))
    n1, n2 = dn.sketch_many(l, r)
    s1 = both1[:k] - both1[k:] - n1
    s2 = w * both1[:k] + both2[:k] - both2[k:] - n2
    return s1, s2


def find_nonzero_many(ds: KeyedView, dn: KeyedView, l, r, w: int, nmap: np.ndarray | None = None):
    """Try to recover one nonzero of the difference vector per window.

    Returns ``(found, z, sign)`` arrays.  Every ``found`` entry has been
    checked against the dense membership arrays, so it is a genuine nonzero
    whose key lies in its window; the rest carry garbage in ``z``/``sign``.
    """
    if ds.a != dn.a:
        raise ValueError("DS and DN must share the same unit a")
    m = ds.m
    if nmap is None:
        nmap = dn.dense
    l = np.asarray(l, dtype=np.int64)
    r = np.asarray(r, dtype=np.int64)
    s1, s2 = difference_sketch_many(ds, dn, l, r, w)
    isolated = np.abs(s1) == 1
    z = (s1 * s2) % m
    member = ds.dense
    sign = member[(z - w) % m].astype(np.int64) - member[z] - nmap[z]
    found = isolated & (np.abs(sign) == 1) & contains_many(l, r, (ds.a * z) % m, m)
    return found, z, sign


def find_nonzero(ds: KeyedView, dn: KeyedView, window, w: int, nmap: np.ndarray | None = None) -> Optional[tuple[int, int]]:
    """Single-window form of :func:`find_nonzero_many`; ``None`` when nothing is recovered."""
    l, r = window
    found, z, sign = find_nonzero_many(ds, dn, [l], [r], w, nmap)
    if not found[0]:
        return None
    return int(z[0]), int(sign[0])


def windows(m: int, ell: int):
    """All windows ``[(p-1)*ell, min(p*ell, m) - 1]``; they partition ``[0, m)``."""
    l = np.arange(0, m, ell, dtype=np.int64)
    return l, np.minimum(l + ell, m) - 1


def estimate_window_size(ds: KeyedView, dn: KeyedView, w: int, T: int, rng: np.random.Generator,
                         nmap: np.ndarray | None = None) -> Optional[int]:
    """Smallest power-of-two window size at which sampled windows recover nonzeros often enough.

    For each size, ``T`` windows are drawn uniformly; the size is accepted
    once ``hits * 200 * ll(m) >= T``.
    """
    m = ds.m
    scale = 200 * ll(m)
    ell = 1
    while ell <= m:
        count = -(-m // ell)
        l = rng.integers(0, count, size=T, dtype=np.int64) * ell
        r = np.minimum(l + ell, m) - 1
        found, _, _ = find_nonzero_many(ds, dn, l, r, w, nmap)
        if int(found.sum()) * scale >= T:
            return ell
        ell *= 2
    return None


def probe_zero(ds: KeyedView, dn: KeyedView, w: int, probes: int, rng: np.random.Generator) -> bool:
    """Randomized zero test of the difference vector on windows drawn from D.

    Uses the unit of ``ds``.  A zero vector always passes: ``s1`` is then 0
    and ``s2`` a multiple of m (unreduced shifted indices).  ``False`` is a
    proof the vector is nonzero.
    """
    m = ds.m
    b = rng.integers(0, m, size=probes, dtype=np.int64)
    c = np.left_shift(1, rng.integers(0, ceil_log2(m) + 1, size=probes, dtype=np.int64))
    l, r = d_window(b, c, m)
    s1, s2 = difference_sketch_many(ds, dn, l, r, w)
    return not (np.any(s1) or np.any(s2 % m))


def valid_window_count(view: KeyedView, ell: int) -> int:
    """Windows of size ``ell`` whose sketch identifies a nonzero of ``view``."""
    m = view.m
    l, r = windows(m, ell)
    s1, s2 = view.sketch_many(l, r)
    nz = s1 != 0
    safe = np.where(nz, s1, 1)
    z = s2 // safe
    exact = nz & (z * safe == s2) & (z >= 0) & (z < m)
    z = np.where(exact, z, 0)
    ok = exact & (view.dense[z] != 0) & contains_many(l, r, view.key(z), m)
    return int(ok.sum())
