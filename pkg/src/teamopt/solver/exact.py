from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from ..errors import InvalidBranch, NotApplicable, TooLarge
from ..evaluator import Team, as_team, team_objective
from ..instance import Instance

PRUNE_TOL = 1e-12
DEFAULT_SUBSET_GUARD = 10**7


@dataclass(frozen=True)
class Solution:
    team: Team
    objective: float
    proven_optimal: bool
    nodes_explored: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class SearchOptions:
    time_limit: float | None = None
    node_limit: int | None = None
    parallel_workers: int = 1
    backend: str | None = None  # "cython", "python" or None for the import-time default

    def __post_init__(self):
        if self.parallel_workers < 1:
            raise ValueError("parallel_workers must be >= 1")


def better(value: float, team: Team, best_value: float, best_team: Team | None) -> bool:
    """Total order used by every solver: higher objective, then lexicographically smaller team."""
    if best_team is None or value > best_value:
        return True
    return value == best_value and team < best_team


def solve_no_alliance(instance: Instance) -> Solution:
    """Top-m heroes by power (ties to the smaller id); only valid without bonuses."""
    if instance.bonuses:
        raise NotApplicable("instance has alliance bonuses; greedy selection is not exact")
    start = time.perf_counter()
    ranked = sorted(range(instance.n), key=lambda i: (-instance.powers[i], i))
    team = tuple(sorted(ranked[: max(instance.team_cap, 0)]))
    value = team_objective(instance, team)
    return Solution(team, value, True, 0, time.perf_counter() - start)


def subset_count(n: int, m: int) -> int:
    return sum(math.comb(n, r) for r in range(0, min(m, n) + 1))


def brute_force(instance: Instance, max_subsets: int = DEFAULT_SUBSET_GUARD, exact_size: bool = False) -> Solution:
    """Enumerate every team of size <= m (or exactly m) and keep the best.

    Independent of the branch-and-bound machinery; used as its oracle.
    """
    n, m = instance.n, max(instance.team_cap, 0)
    sizes = [min(m, n)] if exact_size else range(0, min(m, n) + 1)
    total = sum(math.comb(n, r) for r in sizes)
    if total > max_subsets:
        raise TooLarge(f"{total} subsets exceed the brute-force guard of {max_subsets}")
    start = time.perf_counter()
    best_value, best_team = -math.inf, None
    count = 0
    for r in sizes:
        for team in combinations(range(n), r):
            count += 1
            value = team_objective(instance, team)
            if better(value, team, best_value, best_team):
                best_value, best_team = value, team
    return Solution(best_team, best_value, True, count, time.perf_counter() - start)


def optimistic_values(instance: Instance, fixed_in: Iterable[int], fixed_out: Iterable[int]) -> list[float]:
    """Per-hero value assuming every still-reachable bonus of that hero fires.

    A bonus (i, j, k) counts as reachable when the fixed-in members of j plus
    the free members of j that fit in the remaining slots number at least k.
    Heroes in ``fixed_out`` get 0.
    """
    fin, fout = set(fixed_in), set(fixed_out)
    slots = instance.team_cap - len(fin)
    reach = []
    for members in instance.members:
        have = sum(1 for i in members if i in fin)
        free = sum(1 for i in members if i not in fin and i not in fout)
        reach.append(have + min(free, max(slots, 0)))
    values = []
    for i in range(instance.n):
        if i in fout:
            values.append(0.0)
            continue
        v = instance.powers[i]
        for e in instance.entries_by_hero[i]:
            if reach[e.alliance] >= e.threshold:
                v += e.value
        values.append(v)
    return values


def optimistic_bound(instance: Instance, fixed_in: Iterable[int], fixed_out: Iterable[int]) -> float:
    """Upper bound on any team containing ``fixed_in``, avoiding ``fixed_out``, of size <= m."""
    fin = as_team(instance, fixed_in)
    fout = as_team(instance, fixed_out)
    if set(fin) & set(fout):
        raise InvalidBranch(f"heroes {sorted(set(fin) & set(fout))} are both fixed in and out")
    if len(fin) > instance.team_cap:
        raise InvalidBranch(f"{len(fin)} heroes fixed in exceed the cap {instance.team_cap}")
    values = optimistic_values(instance, fin, fout)
    taken = set(fin) | set(fout)
    free = [values[i] for i in range(instance.n) if i not in taken]
    bound = 0.0
    for i in fin:
        bound += values[i]
    for v in heapq.nlargest(instance.team_cap - len(fin), free):
        bound += v
    return bound
