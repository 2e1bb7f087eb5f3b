# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled depth-first search kernel; same contract as ``_kernel_py``.

Objective sums follow the evaluator's order exactly (heroes by id, power then
bonuses by (alliance, threshold)); do not build with -ffast-math.
"""

cimport cython
from libc.stdlib cimport malloc, free
from libc.string cimport memset
from posix.time cimport clock_gettime, timespec, CLOCK_MONOTONIC

import numpy as np

cdef double PRUNE_TOL = 1e-12


cdef inline double _now() noexcept nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + ts.tv_nsec * 1e-9


cdef class SharedState:
    cdef cython.pymutex lock
    cdef public double best_value
    cdef int *team
    cdef int team_len
    cdef int capacity
    cdef public long long nodes
    cdef public long long node_limit
    cdef public double deadline
    cdef int _stopped

    def __cinit__(self, best_value, best_team, node_limit=-1, deadline=-1.0):
        best_team = list(best_team)
        self.capacity = max(len(best_team), 1) + 64
        self.team = <int *> malloc(self.capacity * sizeof(int))
        if self.team == NULL:
            raise MemoryError()
        self.best_value = best_value
        self.team_len = len(best_team)
        for k, h in enumerate(best_team):
            self.team[k] = h
        self.nodes = 0
        self.node_limit = node_limit
        self.deadline = deadline
        self._stopped = 0

    def __dealloc__(self):
        free(self.team)

    @property
    def stopped(self):
        return bool(self._stopped)

    def best_team(self):
        return tuple(self.team[k] for k in range(self.team_len))

    cdef bint tick(self, double *inc) noexcept nogil:
        cdef bint ok = True
        with self.lock:
            if self._stopped:
                ok = False
            else:
                self.nodes += 1
                if self.node_limit >= 0 and self.nodes > self.node_limit:
                    self._stopped = 1
                    ok = False
                elif self.deadline >= 0 and _now() > self.deadline:
                    self._stopped = 1
                    ok = False
                else:
                    inc[0] = self.best_value
        return ok

    cdef void offer(self, double value, int *team, int length) noexcept nogil:
        cdef int k
        cdef bint take
        with self.lock:
            take = value > self.best_value
            if not take and value == self.best_value:
                take = _lex_less(team, length, self.team, self.team_len)
            if take and length <= self.capacity:
                self.best_value = value
                for k in range(length):
                    self.team[k] = team[k]
                self.team_len = length


cdef inline bint _lex_less(int *a, int na, int *b, int nb) noexcept nogil:
    cdef int k
    cdef int lim = na if na < nb else nb
    for k in range(lim):
        if a[k] != b[k]:
            return a[k] < b[k]
    return na < nb


cdef struct Ctx:
    int n
    int m
    int t
    const int *order
    const double *power
    const int *ha_ptr
    const int *ha_idx
    const int *he_ptr
    const int *he_alli
    const int *he_k
    const double *he_val
    int *count_in
    int *free_members
    int *reach
    int *team      # insertion order
    int *sorted_team
    int n_in
    double *top    # scratch, descending, length m


cdef void _sort_team(Ctx *c) noexcept nogil:
    cdef int k, j, v
    for k in range(c.n_in):
        v = c.team[k]
        j = k - 1
        while j >= 0 and c.sorted_team[j] > v:
            c.sorted_team[j + 1] = c.sorted_team[j]
            j -= 1
        c.sorted_team[j + 1] = v


cdef double _evaluate(Ctx *c) noexcept nogil:
    cdef int k, h, e
    cdef double acc = 0.0
    _sort_team(c)
    for k in range(c.n_in):
        h = c.sorted_team[k]
        acc += c.power[h]
        for e in range(c.he_ptr[h], c.he_ptr[h + 1]):
            if c.count_in[c.he_alli[e]] >= c.he_k[e]:
                acc += c.he_val[e]
    return acc


cdef inline double _hero_value(Ctx *c, int h) noexcept nogil:
    cdef int e
    cdef double v = c.power[h]
    for e in range(c.he_ptr[h], c.he_ptr[h + 1]):
        if c.reach[c.he_alli[e]] >= c.he_k[e]:
            v += c.he_val[e]
    return v


cdef double _bound(Ctx *c, int p) noexcept nogil:
    cdef int slots = c.m - c.n_in
    cdef int j, k, r, filled = 0
    cdef double total = 0.0, v
    for j in range(c.t):
        c.reach[j] = c.count_in[j] + (c.free_members[j] if c.free_members[j] < slots else slots)
    for k in range(c.n_in):
        total += _hero_value(c, c.team[k])
    if slots > 0:
        for r in range(p, c.n):
            v = _hero_value(c, c.order[r])
            if filled < slots:
                k = filled
                filled += 1
            elif v > c.top[slots - 1]:
                k = slots - 1
            else:
                continue
            while k > 0 and c.top[k - 1] < v:
                c.top[k] = c.top[k - 1]
                k -= 1
            c.top[k] = v
        for k in range(filled):
            total += c.top[k]
    return total


cdef void _dfs(Ctx *c, SharedState shared, int p) noexcept nogil:
    cdef double inc = 0.0
    cdef int h, a
    if not shared.tick(&inc):
        return
    if p == c.n or c.n_in == c.m:
        return
    if _bound(c, p) <= inc - PRUNE_TOL:
        return
    h = c.order[p]
    for a in range(c.ha_ptr[h], c.ha_ptr[h + 1]):
        c.free_members[c.ha_idx[a]] -= 1

    c.team[c.n_in] = h
    c.n_in += 1
    for a in range(c.ha_ptr[h], c.ha_ptr[h + 1]):
        c.count_in[c.ha_idx[a]] += 1
    shared.offer(_evaluate(c), c.sorted_team, c.n_in)
    _dfs(c, shared, p + 1)
    for a in range(c.ha_ptr[h], c.ha_ptr[h + 1]):
        c.count_in[c.ha_idx[a]] -= 1
    c.n_in -= 1

    _dfs(c, shared, p + 1)
    for a in range(c.ha_ptr[h], c.ha_ptr[h + 1]):
        c.free_members[c.ha_idx[a]] += 1


def search(problem, SharedState shared, prefix_in, int depth):
    """Explore the subtree whose first ``depth`` positions are decided."""
    cdef const int[::1] order = np.ascontiguousarray(problem.order, dtype=np.int32)
    cdef const double[::1] power = np.ascontiguousarray(problem.power, dtype=np.float64)
    cdef const int[::1] ha_ptr = np.ascontiguousarray(problem.ha_ptr, dtype=np.int32)
    cdef const int[::1] ha_idx = np.ascontiguousarray(problem.ha_idx, dtype=np.int32)
    cdef const int[::1] he_ptr = np.ascontiguousarray(problem.he_ptr, dtype=np.int32)
    cdef const int[::1] he_alli = np.ascontiguousarray(problem.he_alli, dtype=np.int32)
    cdef const int[::1] he_k = np.ascontiguousarray(problem.he_k, dtype=np.int32)
    cdef const double[::1] he_val = np.ascontiguousarray(problem.he_val, dtype=np.float64)
    # keep empty arrays addressable
    cdef int dummy_i = 0
    cdef double dummy_d = 0.0
    cdef Ctx c
    cdef int p, a, h
    prefix = list(prefix_in)

    c.n = problem.n
    c.m = problem.m
    c.t = problem.t
    c.order = &order[0] if order.shape[0] else &dummy_i
    c.power = &power[0] if power.shape[0] else &dummy_d
    c.ha_ptr = &ha_ptr[0]
    c.ha_idx = &ha_idx[0] if ha_idx.shape[0] else &dummy_i
    c.he_ptr = &he_ptr[0]
    c.he_alli = &he_alli[0] if he_alli.shape[0] else &dummy_i
    c.he_k = &he_k[0] if he_k.shape[0] else &dummy_i
    c.he_val = &he_val[0] if he_val.shape[0] else &dummy_d

    cdef int tt = c.t if c.t > 0 else 1
    cdef int mm = (c.m if c.m > 0 else 1) + 1
    c.count_in = <int *> malloc(tt * sizeof(int))
    c.free_members = <int *> malloc(tt * sizeof(int))
    c.reach = <int *> malloc(tt * sizeof(int))
    c.team = <int *> malloc(mm * sizeof(int))
    c.sorted_team = <int *> malloc(mm * sizeof(int))
    c.top = <double *> malloc(mm * sizeof(double))
    if (c.count_in == NULL or c.free_members == NULL or c.reach == NULL or c.team == NULL
            or c.sorted_team == NULL or c.top == NULL):
        free(c.count_in); free(c.free_members); free(c.reach)
        free(c.team); free(c.sorted_team); free(c.top)
        raise MemoryError()
    try:
        memset(c.count_in, 0, tt * sizeof(int))
        memset(c.free_members, 0, tt * sizeof(int))
        c.n_in = 0
        if len(prefix) > c.m:
            return
        for p in range(depth, c.n):
            h = c.order[p]
            for a in range(c.ha_ptr[h], c.ha_ptr[h + 1]):
                c.free_members[c.ha_idx[a]] += 1
        for p in prefix:
            h = c.order[p]
            c.team[c.n_in] = h
            c.n_in += 1
            for a in range(c.ha_ptr[h], c.ha_ptr[h + 1]):
                c.count_in[c.ha_idx[a]] += 1
        with nogil:
            shared.offer(_evaluate(&c), c.sorted_team, c.n_in)
            _dfs(&c, shared, depth)
    finally:
        free(c.count_in); free(c.free_members); free(c.reach)
        free(c.team); free(c.sorted_team); free(c.top)
