"""Exact solvers: greedy special case, brute-force oracle and branch and bound."""

from ._backend import BACKEND, available as available_backends
from .bnb import branch_and_bound
from .exact import (
    PRUNE_TOL,
    SearchOptions,
    Solution,
    brute_force,
    optimistic_bound,
    optimistic_values,
    solve_no_alliance,
    subset_count,
)

__all__ = [
    "BACKEND",
    "PRUNE_TOL",
    "SearchOptions",
    "Solution",
    "available_backends",
    "branch_and_bound",
    "brute_force",
    "optimistic_bound",
    "optimistic_values",
    "solve_no_alliance",
    "subset_count",
]
