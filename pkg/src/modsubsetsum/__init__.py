"""Modular subset sum in near-linear time through linear sketching."""

from .modring import SumSet, WrappedInterval
from .oracle import bellman, brute_force, step_sets
from .solver import SolverParams, SolverState, solve_all, solve_multiset, solve_nonmodular, solve_target

__all__ = [
    "SolverParams",
    "SolverState",
    "SumSet",
    "WrappedInterval",
    "bellman",
    "brute_force",
    "solve_all",
    "solve_multiset",
    "solve_nonmodular",
    "solve_target",
    "step_sets",
]

__version__ = "0.1.0"
