"""Certificates for a run of the Bellman recurrence, and their verifier.

A certificate lists, for every weight w_i, the sets

    nplus_i  = S^i minus S^{i-1}            (the newly attainable sums)
    nminus_i = S^i minus (S^{i-1} + w_i)

Verification runs in two phases.  The deterministic phase checks that every
listed element satisfies its membership conditions, which makes the lists
subsets of the true ones.  The randomized phase checks that nothing is
missing: the vector ``1_{N-} + 1_{S+w} - 1_{N+} - 1_S`` must vanish, and it
is tested against indicator vectors of ``{x : (a*x + b) mod m <= c}``.  Its
inner product with the shifted set reduces to counting the keys ``a*x`` of
S inside a wrapped interval, answered by an :class:`AggTree` per repetition.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .aggtree import AggTree
from .modring import check_modulus, rng_stream
from .oracle import step_sets
from .sketch import d_window, ll, sample_d_many

FORMAT_VERSION = 1

SUBSET_PLUS = "subset-plus-violation"
SUBSET_MINUS = "subset-minus-violation"
SIZE_MISMATCH = "size-mismatch"
IDENTITY_NONZERO = "identity-test-nonzero"


class MalformedCertificate(ValueError):
    pass


@dataclass
class Certificate:
    m: int
    steps: list[tuple[np.ndarray, np.ndarray]] = field(default_factory=list)

    def __post_init__(self):
        self.steps = [(np.asarray(p, dtype=np.int64), np.asarray(q, dtype=np.int64)) for p, q in self.steps]

    @property
    def n(self) -> int:
        return len(self.steps)

    def validate(self, n: Optional[int] = None) -> None:
        """Raise :class:`MalformedCertificate` unless every step is well formed."""
        if n is not None and n != self.n:
            raise MalformedCertificate(f"certificate has {self.n} steps, instance has {n} weights")
        for i, (plus, minus) in enumerate(self.steps, 1):
            for name, arr in (("nplus", plus), ("nminus", minus)):
                if arr.ndim != 1:
                    raise MalformedCertificate(f"step {i}: {name} is not a flat list")
                if arr.size and (arr.min() < 0 or arr.max() >= self.m):
                    raise MalformedCertificate(f"step {i}: {name} has residues outside [0, {self.m})")
                if np.any(np.diff(arr) <= 0):
                    raise MalformedCertificate(f"step {i}: {name} is not strictly ascending")

    def to_dict(self) -> dict:
        return {
            "version": FORMAT_VERSION,
            "m": self.m,
            "n": self.n,
            "steps": [{"nplus": p.tolist(), "nminus": q.tolist()} for p, q in self.steps],
        }

    @classmethod
    def from_dict(cls, data) -> "Certificate":
        try:
            if data["version"] != FORMAT_VERSION:
                raise MalformedCertificate(f"unsupported certificate version {data['version']!r}")
            m = check_modulus(data["m"])
            steps = [(step["nplus"], step["nminus"]) for step in data["steps"]]
            n = data["n"]
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedCertificate):
                raise
            raise MalformedCertificate(f"bad certificate structure: {exc}") from exc
        for plus, minus in steps:
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in list(plus) + list(minus)):
                raise MalformedCertificate("certificate residues must be integers")
        cert = cls(m, steps)
        cert.validate(n)
        return cert

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def loads(cls, text: str) -> "Certificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedCertificate(f"certificate is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


class VerifyOutcome(NamedTuple):
    accepted: bool
    step: Optional[int] = None  # 1-based
    reason: Optional[str] = None

    def __str__(self):
        if self.accepted:
            return "accept"
        return f"reject step={self.step} reason={self.reason}"


def generate(weights, m: int) -> Certificate:
    trace = step_sets(weights, m)
    return Certificate(trace.m, list(zip(trace.nplus, trace.nminus)))


def check_target(cert: Certificate, t: int) -> bool:
    return t == 0 or any(np.any(plus == t) for plus, _ in cert.steps)


def repetitions(m: int, delta: float, c_r: float = 2.0) -> int:
    """Independent identity tests needed for failure probability ``delta``."""
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    return max(1, math.ceil(math.log(1 / delta) * c_r * math.log2(m + 4) * ll(m)))


def _check_inputs(weights, m: int, cert: Certificate) -> list[int]:
    m = check_modulus(m)
    if cert.m != m:
        raise MalformedCertificate(f"certificate modulus {cert.m} does not match instance modulus {m}")
    ws = [int(w) for w in weights]
    if any(not 0 <= w < m for w in ws):
        raise ValueError(f"weights must lie in [0, {m})")
    cert.validate(len(ws))
    return ws


def subset_phase(weights, m: int, cert: Certificate) -> VerifyOutcome:
    """Deterministic membership checks of every listed element."""
    member = np.zeros(m, dtype=bool)
    member[0] = True
    for i, (w, (plus, minus)) in enumerate(zip(weights, cert.steps), 1):
        if not (np.all(member[(plus - w) % m]) and not np.any(member[plus])):
            return VerifyOutcome(False, i, SUBSET_PLUS)
        if not (np.all(member[minus]) and not np.any(member[(minus - w) % m])):
            return VerifyOutcome(False, i, SUBSET_MINUS)
        if plus.size != minus.size:
            return VerifyOutcome(False, i, SIZE_MISMATCH)
        member[plus] = True
    return VerifyOutcome(True)


def identity_products(weights, m: int, cert: Certificate, a, b, c):
    """Yield, per step, the inner products of the step's difference vector with each test vector.

    The test vectors are the indicators of ``(a_r*x + b_r) mod m <= c_r``
    for the arrays ``a``, ``b``, ``c``.  S is taken to be the union of the
    certificate's ``nplus`` lists, as the verifier sees it.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    c = np.asarray(c, dtype=np.int64)
    reps = a.size
    layer = np.arange(reps)
    tree = AggTree(m, layers=reps)
    tree.add_points(0, 1, 0, layer=layer)  # S^0 = {0}, key a*0 = 0
    lo, hi = d_window(b, c, m)
    for w, (plus, minus) in zip(weights, cert.steps):
        aw = (a * w) % m
        counts, _ = tree.range_aggregate_many(np.concatenate([(lo - aw) % m, lo]),
                                              np.concatenate([(hi - aw) % m, hi]),
                                              np.concatenate([layer, layer]))
        shifted, unshifted = counts[:reps], counts[reps:]
        hit_minus = ((a[:, None] * minus[None, :] + b[:, None]) % m <= c[:, None]).sum(axis=1)
        hit_plus = ((a[:, None] * plus[None, :] + b[:, None]) % m <= c[:, None]).sum(axis=1)
        yield hit_minus + shifted - hit_plus - unshifted
        if plus.size:
            tree.add_points((a[:, None] * plus[None, :]) % m, 1, plus[None, :], layer=layer[:, None])


def verify(weights, m: int, cert: Certificate, delta: float = 1e-6, seed: int = 0,
           c_r: float = 2.0, max_layers: Optional[int] = None) -> VerifyOutcome:
    """Check a certificate; valid certificates are always accepted.

    An invalid certificate that survives the membership checks is rejected
    with probability at least ``1 - delta``.
    """
    ws = _check_inputs(weights, m, cert)
    outcome = subset_phase(ws, m, cert)
    if not outcome.accepted or m == 1:
        return outcome
    rng = rng_stream(seed, "verifier")
    total = repetitions(m, delta, c_r)
    if max_layers is None:
        max_layers = max(1, (1 << 22) // (m + 1))
    done = 0
    while done < total:
        chunk = min(max_layers, total - done)
        a, b, c = sample_d_many(m, chunk, rng)
        for i, products in enumerate(identity_products(ws, m, cert, a, b, c), 1):
            if np.any(products):
                return VerifyOutcome(False, i, IDENTITY_NONZERO)
        done += chunk
    return VerifyOutcome(True)
