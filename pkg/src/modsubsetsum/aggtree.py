"""Key-indexed pair aggregates over Z_m with wrapped-interval queries.

Each stored entry is a key in ``[0, m)`` carrying a pair ``(v, i*v)``; a
query over a wrapped key interval returns the componentwise pair sum.  Two
backends share the query surface:

* :class:`AggTree` -- a binary indexed tree over the full key range,
  O(log m) point updates and queries.  It can hold several independent
  layers over the same key space so that a bank of trees is updated with a
  single vectorized pass.
* :class:`StaticAggregate` -- a sorted array of a fixed entry set with prefix
  sums, O(log k) queries and no updates.  Building it costs O(k log k)
  rather than O(m), which matters for the per-pass ``N`` structures.

Wrapped intervals ``[l, r]`` with ``l > r`` are answered as
``[l, m-1] + [0, r]``, i.e. ``prefix(r+1) - prefix(l) + total``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np


class SketchPair(NamedTuple):
    s1: int
    s2: int


def _as_i64(x) -> np.ndarray:
    return np.asarray(x, dtype=np.int64)


class AggTree:
    """Binary indexed tree of ``(v, i*v)`` pairs keyed by residues.

    Position ``k + 1`` of the internal array stores key ``k``; position 0
    is a permanent zero so vectorized prefix walks need no masking.

    >>> t = AggTree(7)
    >>> t.add_point(5, (1, 5))
    >>> t.add_point(1, (-1, -3))
    >>> t.range_aggregate(5, 2)
    SketchPair(s1=0, s2=2)
    """

    def __init__(self, m: int, layers: int = 1):
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        if layers < 1:
            raise ValueError(f"layers must be >= 1, got {layers}")
        self.m = int(m)
        self.layers = int(layers)
        self._size = self.m + 1
        self._tree = np.zeros((self.layers * self._size, 2), dtype=np.int64)
        self._total = np.zeros((self.layers, 2), dtype=np.int64)
        # node visits by the scalar operations; read by complexity tests
        self.touched = 0
        # plain per-key values, kept alongside the tree for bulk prefix tables
        self._flat_vals = np.zeros((self.layers, self.m, 2), dtype=np.int64)
        # layer -> prefix table, dropped on every update
        self._flat: dict[int, np.ndarray] = {}

    def __repr__(self):
        return f"AggTree(m={self.m}, layers={self.layers})"

    def _check_key(self, key: int) -> int:
        if not 0 <= key < self.m:
            raise IndexError(f"key {key} outside [0, {self.m})")
        return int(key)

    # -- scalar operations -------------------------------------------------

    def add_point(self, key: int, pair: tuple[int, int], layer: int = 0) -> None:
        key = self._check_key(key)
        v, iv = int(pair[0]), int(pair[1])
        self._flat.clear()
        self._flat_vals[layer, key] += (v, iv)
        base = layer * self._size
        pos = key + 1
        tree = self._tree
        while pos <= self.m:
            tree[base + pos, 0] += v
            tree[base + pos, 1] += iv
            self.touched += 1
            pos += pos & -pos
        self._total[layer, 0] += v
        self._total[layer, 1] += iv

    def prefix(self, stop: int, layer: int = 0) -> SketchPair:
        """Pair sum over keys ``[0, stop)``."""
        base = layer * self._size
        s1 = s2 = 0
        pos = stop
        while pos > 0:
            node = self._tree[base + pos]
            s1 += int(node[0])
            s2 += int(node[1])
            self.touched += 1
            pos &= pos - 1
        return SketchPair(s1, s2)

    def range_aggregate(self, l: int, r: int, layer: int = 0) -> SketchPair:
        l, r = self._check_key(l), self._check_key(r)
        hi = self.prefix(r + 1, layer)
        lo = self.prefix(l, layer)
        s1, s2 = hi.s1 - lo.s1, hi.s2 - lo.s2
        if l > r:
            s1 += int(self._total[layer, 0])
            s2 += int(self._total[layer, 1])
        return SketchPair(s1, s2)

    def total(self, layer: int = 0) -> SketchPair:
        return SketchPair(int(self._total[layer, 0]), int(self._total[layer, 1]))

    # -- vectorized operations ---------------------------------------------

    def add_points(self, keys, v, iv, layer=0) -> None:
        """Add many entries at once; ``keys``, ``v``, ``iv`` and ``layer`` broadcast."""
        keys, v, iv, layer = np.broadcast_arrays(_as_i64(keys), _as_i64(v), _as_i64(iv), _as_i64(layer))
        if keys.size == 0:
            return
        if keys.min() < 0 or keys.max() >= self.m:
            raise IndexError(f"keys outside [0, {self.m})")
        keys, v, iv, layer = keys.ravel(), v.ravel(), iv.ravel(), layer.ravel()
        vals = np.stack([v, iv], axis=1)
        self._flat.clear()
        np.add.at(self._flat_vals, (layer, keys), vals)
        np.add.at(self._total, layer, vals)
        if keys.size * max(1, self.m.bit_length()) > self._tree.shape[0]:
            self._add_dense(keys, layer, vals)
            return
        base = layer * self._size
        pos = keys + 1
        while pos.size:
            np.add.at(self._tree, base + pos, vals)
            pos = pos + (pos & -pos)
            keep = pos <= self.m
            if not keep.all():
                pos, base, vals = pos[keep], base[keep], vals[keep]

    def _add_dense(self, keys, layer, vals) -> None:
        # Large batch: scatter into a dense delta, turn it into Fenwick form in
        # O(m) per layer (children pushed to parents in order of lowbit), add.
        delta = np.zeros((self.layers, self._size, 2), dtype=np.int64)
        np.add.at(delta, (layer, keys + 1), vals)
        step = 1
        while 2 * step <= self.m:
            # odd multiples of step feed the next multiple of 2*step
            parents = delta[:, 2 * step::2 * step]
            parents += delta[:, step:step + 2 * step * parents.shape[1]:2 * step]
            step *= 2
        self._tree += delta.reshape(self._tree.shape)

    def prefix_table(self, layer: int = 0) -> np.ndarray:
        """Pair sums over ``[0, x)`` for every x in ``[0, m]``, shape ``(m + 1, 2)``.

        Built in O(m) from the per-key values; cached until the next update.
        """
        table = self._flat.get(layer)
        if table is None:
            table = np.zeros((self._size, 2), dtype=np.int64)
            np.cumsum(self._flat_vals[layer], axis=0, out=table[1:])
            if len(self._flat) >= 2:
                self._flat.pop(next(iter(self._flat)))
            self._flat[layer] = table
        return table

    def prefix_many(self, stop, layer=0) -> np.ndarray:
        """Pair sums over ``[0, stop)`` for each element; returns shape ``(..., 2)``."""
        pos = _as_i64(stop).copy()
        if np.ndim(layer) == 0 and pos.size * self.m.bit_length() > 4 * self.m:
            # many queries against one layer: a flat table is cheaper than walks
            return self.prefix_table(int(layer))[pos]
        base = _as_i64(layer) * self._size
        acc = np.zeros(pos.shape + (2,), dtype=np.int64)
        while pos.any():
            acc += self._tree[base + pos]
            pos &= pos - 1
        return acc

    def range_aggregate_many(self, l, r, layer=0) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized wrapped-interval query; returns ``(s1, s2)`` arrays."""
        l, r = np.broadcast_arrays(_as_i64(l), _as_i64(r))
        stops = np.concatenate([r.ravel() + 1, l.ravel()])
        if np.ndim(layer) == 0:
            pre = self.prefix_many(stops, int(layer))
        else:
            layer = np.broadcast_to(_as_i64(layer), l.shape)
            pre = self.prefix_many(stops, np.concatenate([layer.ravel(), layer.ravel()]))
        k = l.size
        out = pre[:k] - pre[k:]
        total = self._total[layer] if np.ndim(layer) == 0 else self._total[np.ravel(layer)]
        out += (l.ravel() > r.ravel())[:, None] * total
        return out[:, 0].reshape(l.shape), out[:, 1].reshape(l.shape)


class StaticAggregate:
    """Immutable pair aggregate over a fixed set of keyed entries.

    Entries sharing a key accumulate.  Supports the same query surface as
    :class:`AggTree` (single layer).
    """

    def __init__(self, m: int, keys, v, iv):
        self.m = int(m)
        keys, v, iv = _as_i64(keys).ravel(), _as_i64(v).ravel(), _as_i64(iv).ravel()
        if keys.size and (keys.min() < 0 or keys.max() >= self.m):
            raise IndexError(f"keys outside [0, {self.m})")
        order = np.argsort(keys, kind="stable")
        self._keys = keys[order]
        self._prefix = np.zeros((keys.size + 1, 2), dtype=np.int64)
        np.cumsum(v[order], out=self._prefix[1:, 0])
        np.cumsum(iv[order], out=self._prefix[1:, 1])

    def __len__(self):
        return self._keys.size

    def range_aggregate_many(self, l, r, layer=0) -> tuple[np.ndarray, np.ndarray]:
        l, r = np.broadcast_arrays(_as_i64(l), _as_i64(r))
        if not self._keys.size:
            z = np.zeros(l.shape, dtype=np.int64)
            return z, z.copy()
        hi = np.searchsorted(self._keys, r, side="right")
        lo = np.searchsorted(self._keys, l, side="left")
        out = self._prefix[hi] - self._prefix[lo]
        out += (l > r)[..., None] * self._prefix[-1]
        return out[..., 0], out[..., 1]

    def range_aggregate(self, l: int, r: int, layer: int = 0) -> SketchPair:
        s1, s2 = self.range_aggregate_many(l, r)
        return SketchPair(int(s1), int(s2))

    def total(self, layer: int = 0) -> SketchPair:
        return SketchPair(int(self._prefix[-1, 0]), int(self._prefix[-1, 1]))
