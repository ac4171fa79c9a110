"""Command line interface: ``modsubsetsum {gen,solve,certify,verify,bench}``.

Exit codes: 0 success / YES / accept, 1 NO / reject, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import oracle
from .certificate import Certificate, MalformedCertificate, generate, verify
from .modring import MAX_MODULUS, rng_stream
from .solver import SelfCheckError, SolverParams, SolverState

log = logging.getLogger("modsubsetsum")

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2
DISTRIBUTIONS = ("uniform", "small-support", "dense")
BENCH_HEADER = ["algo", "m", "n", "rep", "elapsed_ms", "new_sums_total"]


class InputError(ValueError):
    pass


@dataclass
class Instance:
    m: int
    weights: list[int] = field(default_factory=list)
    # set when read from the "m k multiset" form: [(weight, multiplicity), ...]
    multiset: Optional[list[tuple[int, int]]] = None

    @property
    def n(self) -> int:
        if self.multiset is not None:
            return sum(k for _, k in self.multiset)
        return len(self.weights)

    def expanded(self) -> list[int]:
        if self.multiset is None:
            return list(self.weights)
        return [w for w, k in self.multiset for _ in range(k)]

    def dumps(self) -> str:
        if self.multiset is not None:
            lines = [f"{self.m} {len(self.multiset)} multiset"]
            lines += [f"{w} {k}" for w, k in self.multiset]
            return "\n".join(lines) + "\n"
        return f"{self.m} {len(self.weights)}\n" + " ".join(map(str, self.weights)) + "\n"


def _int(tok: str, what: str) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise InputError(f"{what}: {tok!r} is not a base-10 integer") from None


def parse_instance(text: str) -> Instance:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise InputError("empty instance file")
    head = lines[0].split()
    if len(head) == 3 and head[2] == "multiset":
        m, k = _int(head[0], "m"), _int(head[1], "k")
        _check_m(m)
        if k < 0:
            raise InputError("k must be nonnegative")
        body = [ln for ln in lines[1:] if ln.strip()]
        if len(body) != k:
            raise InputError(f"expected {k} multiset lines, found {len(body)}")
        pairs = []
        for ln in body:
            toks = ln.split()
            if len(toks) != 2:
                raise InputError(f"multiset line {ln!r} must be 'w mult'")
            w, mult = _int(toks[0], "weight"), _int(toks[1], "multiplicity")
            if not 0 <= w < m:
                raise InputError(f"weight {w} outside [0, {m})")
            if mult < 1:
                raise InputError(f"multiplicity {mult} must be positive")
            pairs.append((w, mult))
        return Instance(m, multiset=pairs)
    if len(head) != 2:
        raise InputError("header must be 'm n' or 'm k multiset'")
    m, n = _int(head[0], "m"), _int(head[1], "n")
    _check_m(m)
    if n < 0:
        raise InputError("n must be nonnegative")
    toks = " ".join(lines[1:]).split()
    if len(toks) != n:
        raise InputError(f"expected {n} weights, found {len(toks)}")
    weights = [_int(t, "weight") for t in toks]
    for w in weights:
        if not 0 <= w < m:
            raise InputError(f"weight {w} outside [0, {m})")
    return Instance(m, weights)


def _check_m(m: int) -> None:
    if not 1 <= m <= MAX_MODULUS:
        raise InputError(f"m must lie in [1, {MAX_MODULUS}], got {m}")


def generate_instance(m: int, n: int, dist: str, seed: int) -> Instance:
    """Random instance; identical for identical arguments.

    ``small-support`` draws from at most 5 distinct values; ``dense`` draws
    small nonzero weights from ``[1, ceil(2m/n)]`` so their total is about m.
    """
    _check_m(m)
    if n < 0:
        raise InputError("n must be nonnegative")
    rng = rng_stream(seed, f"generator/{dist}/{m}/{n}")
    if dist == "uniform":
        ws = rng.integers(0, m, size=n)
    elif dist == "small-support":
        support = rng.choice(m, size=min(5, m), replace=False)
        ws = rng.choice(support, size=n)
    elif dist == "dense":
        hi = min(m - 1, max(1, -(-2 * m // max(n, 1))))
        ws = rng.integers(1, hi + 1, size=n) if m > 1 else np.zeros(n, dtype=np.int64)
    else:
        raise InputError(f"unknown distribution {dist!r}")
    return Instance(m, [int(w) for w in ws])


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


def _params(args) -> SolverParams:
    return SolverParams(L=args.L, T=args.T, seed=args.seed, self_check=getattr(args, "self_check", False))


def run_algo(inst: Instance, algo: str, params: SolverParams):
    """Attainable set of an instance with the chosen algorithm."""
    if algo == "bellman":
        return oracle.bellman(inst.expanded(), inst.m)
    if algo == "brute":
        ws = inst.expanded()
        if len(ws) > oracle.BRUTE_FORCE_MAX_N:
            raise InputError(f"brute force supports n <= {oracle.BRUTE_FORCE_MAX_N}, instance has {len(ws)}")
        return oracle.brute_force(ws, inst.m)
    st = SolverState(inst.m, params)
    if inst.multiset is not None:
        for w, k in inst.multiset:
            st.insert_repeated(w, k)
    else:
        for w in inst.weights:
            st.insert_weight(w)
    if st.params.self_check:
        st.self_check()
    return st.attainable()


def cmd_gen(args) -> int:
    inst = generate_instance(args.m, args.n, args.dist, args.seed)
    if args.multiset:
        inst = Instance(inst.m, multiset=sorted(Counter(inst.weights).items()))
    _write(args.out, inst.dumps())
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    if args.target is not None and not 0 <= args.target < inst.m:
        raise InputError(f"target {args.target} outside [0, {inst.m})")
    start = time.perf_counter()
    sums = run_algo(inst, args.algo, _params(args))
    elapsed = (time.perf_counter() - start) * 1000
    members = sums.members()
    if args.json:
        report = {
            "m": inst.m,
            "n": inst.n,
            "algo": args.algo,
            "seed": args.seed,
            "attainable_count": len(members),
            "attainable": members,
            "elapsed_ms": round(elapsed, 3),
        }
        if args.target is not None:
            report["target"] = args.target
            report["target_attainable"] = args.target in sums
        print(json.dumps(report))
    elif args.target is not None:
        print("YES" if args.target in sums else "NO")
    else:
        print(" ".join(map(str, members)))
    if args.target is not None and args.target not in sums:
        return EXIT_NO
    return EXIT_OK


def cmd_certify(args) -> int:
    inst = parse_instance(_read(args.instance))
    cert = generate(inst.expanded(), inst.m)
    _write(args.out, cert.dumps() + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = parse_instance(_read(args.instance))
    cert = Certificate.loads(_read(args.certificate))
    outcome = verify(inst.expanded(), inst.m, cert, delta=args.delta, seed=args.seed)
    print(outcome)
    return EXIT_OK if outcome.accepted else EXIT_NO


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def bench_rows(ms, ns, reps: int, seed: int, dist: str = "uniform",
               L: Optional[int] = None, T: Optional[int] = None):
    """Yield benchmark rows; both algorithms see the same generated instance.

    Repetition ``rep`` uses ``seed + rep`` for both the instance and the solver.
    """
    for m in ms:
        for n in ns:
            for rep in range(reps):
                inst = generate_instance(m, n, dist, seed + rep)
                p = SolverParams(L=L, T=T, seed=seed + rep)
                for algo in ("sketch", "bellman"):
                    start = time.perf_counter()
                    sums = run_algo(inst, algo, p)
                    elapsed = (time.perf_counter() - start) * 1000
                    yield {"algo": algo, "m": m, "n": n, "rep": rep,
                           "elapsed_ms": f"{elapsed:.3f}", "new_sums_total": len(sums) - 1}


def cmd_bench(args) -> int:
    if args.reps < 1:
        raise InputError("--reps must be positive")
    out = sys.stdout if args.csv in (None, "-") else None
    try:
        fh = out or open(args.csv, "w", newline="")
    except OSError as exc:
        raise InputError(f"cannot write {args.csv}: {exc}") from exc
    try:
        writer = csv.DictWriter(fh, fieldnames=BENCH_HEADER, lineterminator="\n")
        writer.writeheader()
        for row in bench_rows(args.m, args.n, args.reps, args.seed, args.dist, args.L, args.T):
            writer.writerow(row)
            fh.flush()
    finally:
        if out is None:
            fh.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modsubsetsum", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--L", type=int, default=None, help="number of random units (default from m)")
        p.add_argument("--T", type=int, default=None, help="samples per window-size probe (default from m)")

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--multiset", action="store_true", help="write the 'm k multiset' form")
    p.add_argument("--out", "-o", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="list attainable sums or decide one target")
    p.add_argument("instance")
    p.add_argument("--algo", choices=("sketch", "bellman", "brute"), default="sketch")
    p.add_argument("--target", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--self-check", action="store_true", help="verify the sketch result with a certificate")
    solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("certify", help="write a certificate of the Bellman run")
    p.add_argument("instance")
    p.add_argument("out", nargs="?", default=None)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="check a certificate against an instance")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.add_argument("--delta", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time sketch vs bellman, CSV output")
    p.add_argument("--m", type=_int_list, required=True, help="comma-separated moduli")
    p.add_argument("--n", type=_int_list, required=True, help="comma-separated sizes")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform")
    p.add_argument("--csv", default=None, help="output path (default stdout)")
    solver_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except SelfCheckError as exc:
        print(f"self-check failed: {exc}", file=sys.stderr)
        return EXIT_NO
    except (InputError, MalformedCertificate, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
