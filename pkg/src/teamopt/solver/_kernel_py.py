"""Pure-Python depth-first search kernel; mirrors ``_kernel.pyx`` line for line."""

from __future__ import annotations

import heapq
import threading
import time

PRUNE_TOL = 1e-12


class SharedState:
    """Incumbent, node counter and stop flag shared by all workers."""

    def __init__(self, best_value, best_team, node_limit=-1, deadline=-1.0):
        self._lock = threading.Lock()
        self.best_value = float(best_value)
        self._best_team = tuple(best_team)
        self.nodes = 0
        self.node_limit = node_limit
        self.deadline = deadline
        self.stopped = False

    def best_team(self):
        return self._best_team

    def tick(self):
        """Count one node; return the incumbent value or None once stopped."""
        with self._lock:
            if self.stopped:
                return None
            self.nodes += 1
            if 0 <= self.node_limit < self.nodes:
                self.stopped = True
                return None
            if self.deadline >= 0 and time.monotonic() > self.deadline:
                self.stopped = True
                return None
            return self.best_value

    def offer(self, value, team):
        with self._lock:
            if value > self.best_value or (value == self.best_value and team < self._best_team):
                self.best_value = value
                self._best_team = team


def search(problem, shared, prefix_in, depth):
    """Explore the subtree whose first ``depth`` positions are decided.

    ``prefix_in`` lists the positions (< depth) that are included.
    """
    n, m, t = problem.n, problem.m, problem.t
    order = problem.order.tolist()
    power = problem.power.tolist()
    ha_ptr, ha_idx = problem.ha_ptr.tolist(), problem.ha_idx.tolist()
    he_ptr, he_alli = problem.he_ptr.tolist(), problem.he_alli.tolist()
    he_k, he_val = problem.he_k.tolist(), problem.he_val.tolist()

    count_in = [0] * t
    free_members = [0] * t
    team = []
    for p in range(depth, n):
        h = order[p]
        for a in range(ha_ptr[h], ha_ptr[h + 1]):
            free_members[ha_idx[a]] += 1
    for p in prefix_in:
        h = order[p]
        team.append(h)
        for a in range(ha_ptr[h], ha_ptr[h + 1]):
            count_in[ha_idx[a]] += 1

    def evaluate():
        acc = 0.0
        for h in sorted(team):
            acc += power[h]
            for e in range(he_ptr[h], he_ptr[h + 1]):
                if count_in[he_alli[e]] >= he_k[e]:
                    acc += he_val[e]
        return acc

    def hero_value(h, reach):
        v = power[h]
        for e in range(he_ptr[h], he_ptr[h + 1]):
            if reach[he_alli[e]] >= he_k[e]:
                v += he_val[e]
        return v

    def bound(p):
        slots = m - len(team)
        reach = [c + min(f, slots) for c, f in zip(count_in, free_members)]
        total = 0.0
        for h in team:
            total += hero_value(h, reach)
        if slots > 0:
            free = [hero_value(order[r], reach) for r in range(p, n)]
            for v in heapq.nlargest(slots, free):
                total += v
        return total

    def dfs(p):
        inc = shared.tick()
        if inc is None:
            return
        if p == n or len(team) == m:
            return
        if bound(p) <= inc - PRUNE_TOL:
            return
        h = order[p]
        hs = range(ha_ptr[h], ha_ptr[h + 1])
        for a in hs:
            free_members[ha_idx[a]] -= 1

        team.append(h)
        for a in hs:
            count_in[ha_idx[a]] += 1
        shared.offer(evaluate(), tuple(sorted(team)))
        dfs(p + 1)
        for a in hs:
            count_in[ha_idx[a]] -= 1
        team.pop()

        dfs(p + 1)
        for a in hs:
            free_members[ha_idx[a]] += 1

    if len(team) <= m:
        shared.offer(evaluate(), tuple(sorted(team)))
        dfs(depth)
