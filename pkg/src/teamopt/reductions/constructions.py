"""Reduction constructions between the team-selection problem and graph problems.

* densest k-subgraph -> team selection (pair alliances, equal powers)
* team selection -> maximum edge-weighted clique, for no bonuses, pair
  alliances, and q-member alliances that pay out only when complete.

In the clique graphs, slot sets ``V^1..V^m`` hold one vertex per hero and
the ``W`` sets (one per q-subset of slots) one vertex per q-subset of heroes.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from ..errors import (
    DegenerateCap,
    FormatError,
    InconsistentClique,
    InvalidK,
    LabelMismatch,
    NotEnoughHeroes,
    NotPairForm,
    TooLarge,
)
from ..evaluator import Team
from ..instance import BonusEntry, Instance, build_instance, make_heroes
from .graph import F, FQ, VertexLabel, WeightedGraph

DEFAULT_VERTEX_GUARD = 10**5


@dataclass(frozen=True)
class DksInstance:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    k: int

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise FormatError(f"self-loop on vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise FormatError(f"edge ({u}, {v}) outside 0..{self.vertex_count - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise FormatError(f"duplicate edge {key}")
            seen.add(key)

    @property
    def normalized_edges(self) -> list[tuple[int, int]]:
        return sorted((min(u, v), max(u, v)) for u, v in self.edges)


def dks_to_du(dks: DksInstance, base_power: float = 1.0, edge_bonus: float = 1.0) -> Instance:
    """One hero per vertex, one two-member alliance per edge paying ``edge_bonus`` to both ends."""
    if not 1 <= dks.k <= dks.vertex_count:
        raise InvalidK(f"k={dks.k} must lie in 1..{dks.vertex_count}")
    if base_power < 0 or edge_bonus <= 0:
        raise FormatError("base_power must be >= 0 and edge_bonus > 0")
    edges = dks.normalized_edges
    names = [f"e{u}-{v}" for u, v in edges]
    incident = defaultdict(list)
    for name, (u, v) in zip(names, edges):
        incident[u].append(name)
        incident[v].append(name)
    heroes = make_heroes((f"v{i}", base_power, incident[i]) for i in range(dks.vertex_count))
    alliance_ids = {a: j for j, a in enumerate(sorted(names))}
    entries = [
        BonusEntry(end, alliance_ids[name], 2, float(edge_bonus))
        for name, (u, v) in zip(names, edges)
        for end in (u, v)
    ]
    return build_instance(heroes, dks.k, entries=entries, max_alliance_size=2)


def induced_edge_count(dks: DksInstance, vertices: Iterable[int]) -> int:
    chosen = set(vertices)
    return sum(1 for u, v in dks.edges if u in chosen and v in chosen)


def choose_big_N(instance: Instance) -> float:
    """1 + all powers + all bonuses: exceeds any clique weight made of non-heavy edges."""
    return 1.0 + math.fsum(instance.powers) + math.fsum(e.value for e in instance.bonuses)


def _slot_vertices(n: int, m: int) -> list[VertexLabel]:
    return [VertexLabel(F, (a,), (i,)) for i in range(m) for a in range(n)]


def _basic_edges(instance: Instance, labels: Sequence[VertexLabel], m: int) -> dict[tuple[int, int], float]:
    s = instance.powers
    edges = {}
    for u in range(len(labels)):
        (a,), (i,) = labels[u].heroes, labels[u].slots
        for v in range(u + 1, len(labels)):
            (b,), (k,) = labels[v].heroes, labels[v].slots
            if a != b and i != k:
                edges[(u, v)] = s[a] / (m - 1) + s[b] / (m - 1)
    return edges


def _check_cap(instance: Instance, m: int) -> None:
    if m < 2:
        raise DegenerateCap(f"team cap {m} < 2: the clique graph has no edges")
    if instance.n < m:
        raise NotEnoughHeroes(f"{instance.n} heroes cannot fill a team of {m}")


def du_to_mewc_basic(instance: Instance) -> WeightedGraph:
    """No bonuses: m copies of the hero set; a clique picks distinct heroes in distinct slots."""
    if instance.bonuses:
        raise NotPairForm("the basic reduction requires an instance without bonuses")
    m = instance.team_cap
    _check_cap(instance, m)
    labels = _slot_vertices(instance.n, m)
    return WeightedGraph(tuple(labels), _basic_edges(instance, labels, m), frozenset(), 0.0)


def _check_uniform(instance: Instance, q: int) -> None:
    bad = [instance.alliances[j] for j, size in enumerate(instance.column_sums) if size != q]
    if bad:
        raise NotPairForm(f"alliances {bad[:5]} do not have exactly {q} members")
    early = [e for e in instance.entries if e.threshold != q]
    if early:
        e = early[0]
        raise NotPairForm(
            f"bonus for hero {e.hero} from alliance {instance.alliances[e.alliance]!r} "
            f"activates at {e.threshold} < {q} members"
        )


def du_to_mewc_general(instance: Instance, q: int, max_vertices: int = DEFAULT_VERTEX_GUARD) -> WeightedGraph:
    """q-member alliances paying out only when complete.

    Heavy edges (weight N) join ``v_x^k`` to ``w_S^K`` when hero x is in S and
    slot k is in K, so a W vertex touches exactly q heavy edges iff it names
    the heroes actually sitting in its slots.  Alliance bonuses ride on the
    ``v_c^k``--``w_S^K`` edges.
    """
    m = instance.team_cap
    if q < 2:
        raise NotPairForm(f"q must be >= 2, got {q}")
    _check_cap(instance, m)
    if m < q:
        raise NotPairForm(f"team cap {m} is smaller than the alliance size {q}")
    _check_uniform(instance, q)
    n = instance.n
    total = m * n + math.comb(m, q) * math.comb(n, q)
    if total > max_vertices:
        raise TooLarge(f"reduction graph would have {total} vertices (guard {max_vertices})")

    big_n = choose_big_N(instance)
    labels = _slot_vertices(n, m)
    edges = _basic_edges(instance, labels, m)
    n_f = len(labels)
    slot_sets = list(combinations(range(m), q))
    hero_sets = list(combinations(range(n), q))
    for slots in slot_sets:
        labels.extend(VertexLabel(FQ, heroes, slots) for heroes in hero_sets)

    bonus: dict[tuple[tuple[int, ...], int], float] = defaultdict(float)
    for e in instance.entries:
        bonus[(instance.members[e.alliance], e.hero)] += e.value

    heavy = set()
    for w in range(n_f, len(labels)):
        S, K = labels[w].heroes, labels[w].slots
        for v in range(n_f):
            (x,), (k,) = labels[v].heroes, labels[v].slots
            weight = bonus.get((S, x), 0.0)
            if x in S and k in K:
                weight += big_n
                heavy.add((v, w))
            edges[(v, w)] = weight
    for w1 in range(n_f, len(labels)):
        S1, K1 = labels[w1].heroes, labels[w1].slots
        for w2 in range(w1 + 1, len(labels)):
            if S1 != labels[w2].heroes and K1 != labels[w2].slots:
                edges[(w1, w2)] = 0.0
    return WeightedGraph(tuple(labels), edges, frozenset(heavy), big_n)


def du_to_mewc_pairs(instance: Instance) -> WeightedGraph:
    """Two-member alliances; identical to the general construction with q = 2."""
    return du_to_mewc_general(instance, 2)


def consistent_heavy_count(graph: WeightedGraph) -> int:
    """Heavy edges in a consistent clique: q per W vertex, one W vertex per slot q-set."""
    w_sets = {lab.slots for lab in graph.labels if lab.family == FQ}
    q = len(next(iter(w_sets))) if w_sets else 0
    return q * len(w_sets)


def clique_to_team(graph: WeightedGraph, clique_vertices: Iterable[int]) -> Team:
    heroes = []
    for v in clique_vertices:
        if not isinstance(v, int) or not 0 <= v < graph.vertex_count:
            raise LabelMismatch(f"vertex {v!r} does not belong to the graph")
        lab = graph.labels[v]
        if lab.family not in (F, FQ):
            raise LabelMismatch(f"vertex {v} carries an unknown family {lab.family!r}")
        if lab.family == F:
            heroes.append(lab.heroes[0])
    if len(set(heroes)) != len(heroes):
        raise InconsistentClique(f"hero repeated across slots: {sorted(heroes)}")
    return tuple(sorted(heroes))
