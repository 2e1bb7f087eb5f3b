"""Branch-and-bound driver: problem compilation, work splitting and worker threads."""

from __future__ import annotations

import threading
import time
from collections import deque
from dataclasses import dataclass

import numpy as np

from ..evaluator import team_objective
from ..instance import Instance
from . import _backend
from .exact import SearchOptions, Solution, optimistic_values


@dataclass(frozen=True)
class KernelProblem:
    """Flat arrays consumed by the search kernels (hero-indexed unless noted)."""

    n: int
    m: int
    t: int
    order: np.ndarray  # position -> hero id, descending optimistic value
    power: np.ndarray
    ha_ptr: np.ndarray
    ha_idx: np.ndarray
    he_ptr: np.ndarray
    he_alli: np.ndarray
    he_k: np.ndarray
    he_val: np.ndarray


def compile_problem(instance: Instance, m: int) -> KernelProblem:
    root = optimistic_values(instance.with_team_cap(m), (), ())
    order = sorted(range(instance.n), key=lambda i: (-root[i], i))
    ha_ptr, ha_idx = [0], []
    he_ptr, he_alli, he_k, he_val = [0], [], [], []
    for i in range(instance.n):
        ha_idx.extend(instance.hero_alliances[i])
        ha_ptr.append(len(ha_idx))
        for e in instance.entries_by_hero[i]:
            he_alli.append(e.alliance)
            he_k.append(e.threshold)
            he_val.append(e.value)
        he_ptr.append(len(he_alli))
    i32 = np.int32
    return KernelProblem(
        n=instance.n,
        m=m,
        t=instance.t,
        order=np.asarray(order, dtype=i32),
        power=np.asarray(instance.powers, dtype=np.float64),
        ha_ptr=np.asarray(ha_ptr, dtype=i32),
        ha_idx=np.asarray(ha_idx, dtype=i32),
        he_ptr=np.asarray(he_ptr, dtype=i32),
        he_alli=np.asarray(he_alli, dtype=i32),
        he_k=np.asarray(he_k, dtype=i32),
        he_val=np.asarray(he_val, dtype=np.float64),
    )


def split_work(n: int, m: int, workers: int) -> tuple[int, list[tuple[int, ...]]]:
    """Decide the first few positions in every way (include first); one item per prefix."""
    if workers <= 1 or n == 0:
        return 0, [()]
    depth = 0
    while (1 << depth) < 8 * workers and depth < n:
        depth += 1
    items: list[tuple[int, ...]] = []

    def walk(p, chosen):
        if p == depth:
            items.append(tuple(chosen))
            return
        if len(chosen) < m:
            walk(p + 1, chosen + [p])
        walk(p + 1, chosen)

    walk(0, [])
    return depth, items


def branch_and_bound(instance: Instance, options: SearchOptions | None = None) -> Solution:
    options = options or SearchOptions()
    kernel = _backend.get_kernel(options.backend)
    start = time.perf_counter()
    m = max(0, min(instance.team_cap, instance.n))
    if m == 0:
        return Solution((), 0.0, True, 0, time.perf_counter() - start)

    problem = compile_problem(instance, m)
    seed = tuple(sorted(int(h) for h in problem.order[:m]))
    deadline = -1.0
    if options.time_limit is not None:
        deadline = time.monotonic() + options.time_limit
    node_limit = -1 if options.node_limit is None else int(options.node_limit)
    shared = kernel.SharedState(team_objective(instance, seed), seed, node_limit, deadline)

    depth, items = split_work(problem.n, m, options.parallel_workers)
    if len(items) == 1:
        kernel.search(problem, shared, items[0], depth)
    else:
        queue = deque(items)
        queue_lock = threading.Lock()
        errors: list[BaseException] = []

        def worker():
            while True:
                with queue_lock:
                    if not queue or errors:
                        return
                    item = queue.popleft()
                try:
                    kernel.search(problem, shared, item, depth)
                except BaseException as exc:  # surfaced after join
                    with queue_lock:
                        errors.append(exc)
                    return

        threads = [threading.Thread(target=worker) for _ in range(options.parallel_workers)]
        for th in threads:
            th.start()
        for th in threads:
            th.join()
        if errors:
            raise errors[0]

    team = tuple(int(h) for h in shared.best_team())
    value = team_objective(instance, team)
    return Solution(team, value, not shared.stopped, int(shared.nodes), time.perf_counter() - start)
