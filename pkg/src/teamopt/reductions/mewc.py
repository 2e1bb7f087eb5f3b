"""Small exact maximum edge-weighted clique solver used to verify the reductions."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import TooLarge
from .graph import WeightedGraph

DEFAULT_SIZE_LIMIT = 64
_TOL = 1e-9


@dataclass(frozen=True)
class CliqueSolution:
    vertices: tuple[int, ...]
    weight: float
    proven_optimal: bool
    nodes_explored: int = 0


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def solve_mewc_exact(graph: WeightedGraph, size_limit: int = DEFAULT_SIZE_LIMIT) -> CliqueSolution:
    """Maximum-weight clique by depth-first vertex inclusion.

    The bound colours the candidates greedily into independent sets (at most
    one vertex per class can join) and credits each class with its best
    vertex: the edge weight to the current clique plus half the best edge to
    every other class.  Ties prefer larger cliques, then the lexicographically
    smallest vertex list, so with non-negative weights the answer is maximal.
    """
    n = graph.vertex_count
    if n > size_limit:
        raise TooLarge(f"{n} vertices exceed the exact clique solver limit {size_limit}")
    W = [[0.0] * n for _ in range(n)]
    for (u, v), w in graph.edges.items():
        W[u][v] = W[v][u] = w
    adj = graph.adjacency

    best_key = [None]  # (weight, size, vertices)
    nodes = [0]

    def offer(weight, clique):
        key = best_key[0]
        if (
            key is None
            or weight > key[0]
            or (weight == key[0] and (len(clique) > key[1] or (len(clique) == key[1] and tuple(clique) < key[2])))
        ):
            best_key[0] = (weight, len(clique), tuple(clique))

    def bound(cand_list, to_clique):
        classes: list[list[int]] = []
        masks: list[int] = []
        for v in cand_list:
            for c, mask in enumerate(masks):
                if not adj[v] & mask:
                    classes[c].append(v)
                    masks[c] |= 1 << v
                    break
            else:
                classes.append([v])
                masks.append(1 << v)
        total = 0.0
        for c, members in enumerate(classes):
            best = 0.0
            for v in members:
                row = W[v]
                g = to_clique[v]
                for d, others in enumerate(classes):
                    if d == c:
                        continue
                    top = 0.0
                    for u in others:
                        if row[u] > top and adj[v] >> u & 1:
                            top = row[u]
                    g += 0.5 * top
                if g > best:
                    best = g
            total += best
        return total

    def expand(clique, weight, cand, to_clique):
        nodes[0] += 1
        offer(weight, clique)
        if not cand:
            return
        cand_list = list(_bits(cand))
        if best_key[0] is not None and weight + bound(cand_list, to_clique) < best_key[0][0] - _TOL:
            return
        for v in cand_list:
            higher = cand & adj[v] & ~((1 << (v + 1)) - 1)
            nxt = dict(to_clique)
            row = W[v]
            for u in _bits(higher):
                nxt[u] = to_clique[u] + row[u]
            expand(clique + [v], weight + to_clique[v], higher, nxt)

    everything = (1 << n) - 1
    expand([], 0.0, everything, {v: 0.0 for v in range(n)})
    weight, _, verts = best_key[0]
    return CliqueSolution(verts, weight, True, nodes[0])


def brute_force_mewc(graph: WeightedGraph) -> tuple[float, tuple[int, ...]]:
    """Enumerate every clique (tiny graphs only); returns the best weight and a witness."""
    adj = graph.adjacency
    best = (-math.inf, ())

    def rec(clique, cand):
        nonlocal best
        w = graph.clique_weight(clique)
        if w > best[0]:
            best = (w, tuple(clique))
        for v in _bits(cand):
            rec(clique + [v], cand & adj[v] & ~((1 << (v + 1)) - 1))

    rec([], (1 << graph.vertex_count) - 1)
    return best
