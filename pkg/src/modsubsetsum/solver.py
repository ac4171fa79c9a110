"""Online modular subset sum via windowed linear sketches.

The solver keeps the attainable set S together with L banks of keyed
aggregates of ``1_S``, one per random unit ``a_j``.  For each new weight w it
recovers the nonzeros of

    v = 1_{N-} + 1_{S+w} - 1_{N+} - 1_S

window by window, growing the signed set N until v vanishes; the positive
part of N is exactly the set of newly attainable sums.  Every reported sum
is checked directly against S, so the output never contains an unattainable
sum; randomness only affects whether some attainable sum could be missed.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Iterable, Optional

import numpy as np

from .aggtree import AggTree, StaticAggregate
from .modring import MAX_MODULUS, SumSet, check_modulus, rng_stream, sample_units
from .sketch import KeyedView, estimate_window_size, find_nonzero_many, probe_zero, windows

log = logging.getLogger(__name__)


class SelfCheckError(RuntimeError):
    """The post-run certificate check rejected the solver's own output."""


@dataclass(frozen=True)
class SolverParams:
    """Solver configuration.

    ``L`` (number of units) and ``T`` (samples per window-size probe) default
    to ``ceil(c * log2(n_hint * m + 4))`` with ``c_l = 4`` and ``c_t = 32``;
    ``n_hint`` defaults to m.  ``zero_probes`` sets how many D-windows the
    per-pass zero test draws (default T) and ``zero_confirm`` how many
    distinct units must agree before a step stops early.
    """

    L: Optional[int] = None
    T: Optional[int] = None
    seed: int = 0
    delta: float = 1e-6
    n_hint: Optional[int] = None
    c_l: float = 4.0
    c_t: float = 32.0
    zero_probes: Optional[int] = None
    zero_confirm: int = 2
    self_check: bool = False

    def resolve(self, m: int) -> "SolverParams":
        n_hint = self.n_hint if self.n_hint is not None else m
        span = math.log2(max(1, n_hint) * m + 4)
        L = self.L if self.L is not None else math.ceil(self.c_l * span)
        T = self.T if self.T is not None else math.ceil(self.c_t * span)
        if L < 1 or T < 1:
            raise ValueError(f"L and T must be positive, got L={L}, T={T}")
        if self.zero_confirm < 1:
            raise ValueError("zero_confirm must be positive")
        probes = self.zero_probes if self.zero_probes is not None else T
        return replace(self, L=L, T=T, n_hint=n_hint, zero_probes=probes)


class SolverState:
    """Running state of the online solver for one modulus.

    >>> st = SolverState(5, SolverParams(seed=1))
    >>> sorted(st.insert_weight(3)), sorted(st.insert_weight(4))
    ([3], [2, 4])
    >>> st.attainable().members()
    [0, 2, 3, 4]
    """

    def __init__(self, m: int, params: SolverParams | None = None):
        self.m = check_modulus(m)
        self.params = (params or SolverParams()).resolve(self.m)
        self.rng = rng_stream(self.params.seed, "solver")
        self.sums = SumSet(self.m)
        self.step = 0
        self.insertions = 0
        self.weights: list[int] = []
        # per-step (nplus, nminus) as sorted arrays
        self.trace: list[tuple[np.ndarray, np.ndarray]] = []
        self.stats = {"passes": 0, "windows": 0, "probes": 0}
        self._nmap = np.zeros(self.m, dtype=np.int8)
        if self.m == 1:
            self.units = np.zeros(0, dtype=np.int64)
            self.tree = None
            self.views = []
            return
        L = self.params.L
        self.units = sample_units(self.m, L, self.rng)
        self.tree = AggTree(self.m, layers=L)
        self.tree.add_points(0, 1, 0, layer=np.arange(L))
        self.views = [KeyedView(a, self.tree, self.sums.membership, layer=j) for j, a in enumerate(self.units)]

    def attainable(self) -> SumSet:
        return self.sums.copy()

    def _dn_view(self, a: int, z: np.ndarray, sign: np.ndarray) -> KeyedView:
        store = StaticAggregate(self.m, (a * z) % self.m, sign, z * sign)
        return KeyedView(a, store, self._nmap)

    def insert_weight(self, w: int) -> set[int]:
        """Process one weight; returns the sums it makes attainable for the first time."""
        m = self.m
        if not 0 <= w < m:
            raise ValueError(f"weight {w} outside [0, {m})")
        w = int(w)
        self.step += 1
        self.insertions += 1
        self.weights.append(w)
        empty = np.zeros(0, dtype=np.int64)
        # S + 0 = S, and a full S cannot grow
        if m == 1 or w == 0 or self.sums.count == m:
            self.trace.append((empty, empty))
            return set()

        p = self.params
        nmap = self._nmap
        found_z = empty
        found_s = empty
        check = True
        quiet = 0
        for view in self.views:
            dn = self._dn_view(view.a, found_z, found_s)
            if check:
                self.stats["probes"] += p.zero_probes
                if probe_zero(view, dn, w, p.zero_probes, self.rng):
                    quiet += 1
                    if quiet >= p.zero_confirm:
                        break
                    continue
                check = False
                quiet = 0
            ell = estimate_window_size(view, dn, w, p.T, self.rng, nmap)
            self.stats["passes"] += 1
            if ell is None:
                continue
            l, r = windows(m, ell)
            self.stats["windows"] += l.size
            ok, z, sign = find_nonzero_many(view, dn, l, r, w, nmap)
            if ok.any():
                z, sign = z[ok], sign[ok]
                nmap[z] = sign
                found_z = np.concatenate([found_z, z])
                found_s = np.concatenate([found_s, sign])
                check = True

        nmap[found_z] = 0
        plus = np.sort(found_z[found_s == 1])
        minus = np.sort(found_z[found_s == -1])
        if plus.size:
            self.sums.add_many(plus)
            L = self.units.size
            keys = (self.units[:, None] * plus[None, :]) % m
            self.tree.add_points(keys, 1, plus[None, :], layer=np.arange(L)[:, None])
        self.trace.append((plus, minus))
        return set(plus.tolist())

    def insert_repeated(self, w: int, mult: int) -> int:
        """Insert ``w`` up to ``mult`` times, stopping at the first unproductive copy.

        Returns the number of insertions performed.
        """
        if mult < 1:
            raise ValueError(f"multiplicity must be positive, got {mult}")
        done = 0
        while done < mult:
            done += 1
            if not self.insert_weight(w):
                break
        return done

    def certificate(self):
        from .certificate import Certificate

        return Certificate(self.m, [(p.copy(), n.copy()) for p, n in self.trace])

    def self_check(self) -> None:
        """Verify the run's own step outputs as a certificate; raises on rejection."""
        from .certificate import verify

        outcome = verify(self.weights, self.m, self.certificate(), delta=self.params.delta,
                         seed=self.params.seed)
        if not outcome.accepted:
            raise SelfCheckError(f"solver output failed verification at step {outcome.step}: {outcome.reason}")


def solve_all(weights: Iterable[int], m: int, params: SolverParams | None = None) -> SumSet:
    ws = [int(w) for w in weights]
    st = SolverState(m, params)
    for w in ws:
        st.insert_weight(w)
    if st.params.self_check:
        st.self_check()
    return st.attainable()


def solve_target(weights: Iterable[int], m: int, t: int, params: SolverParams | None = None) -> bool:
    if not 0 <= t < m:
        raise ValueError(f"target {t} outside [0, {m})")
    return t in solve_all(weights, m, params)


def solve_multiset(pairs, m: int, params: SolverParams | None = None) -> SumSet:
    """Solve for a multiset given as ``(weight, multiplicity)`` pairs.

    A weight is retried only while it keeps producing new sums, so the
    number of insertions is at most m plus the number of distinct weights.
    """
    pairs = [(int(w), int(k)) for w, k in pairs]
    for w, k in pairs:
        if k < 1:
            raise ValueError(f"multiplicity must be positive, got {k} for weight {w}")
    st = SolverState(m, params)
    for w, k in pairs:
        st.insert_repeated(w, k)
    return st.attainable()


def solve_nonmodular(weights: Iterable[int], t: int, params: SolverParams | None = None) -> bool:
    """Plain subset sum, run modulo ``sum(weights) + 1`` so no two sums collide."""
    ws = [int(w) for w in weights]
    if any(w < 0 for w in ws):
        raise ValueError("weights must be nonnegative")
    if t < 0:
        raise ValueError("target must be nonnegative")
    total = sum(ws)
    if total + 1 > MAX_MODULUS:
        raise ValueError(f"sum of weights {total} exceeds the modulus cap")
    if t > total:
        return False
    return solve_target(ws, total + 1, t, params)
