from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

F = "F"
FQ = "Fq"


@dataclass(frozen=True, order=True)
class VertexLabel:
    """``F`` vertices hold one hero in one slot; ``Fq`` vertices a hero q-set in a slot q-set."""

    family: str
    heroes: tuple[int, ...]
    slots: tuple[int, ...]

    @property
    def text(self) -> str:
        if self.family == F:
            return f"v_{self.heroes[0]}@{self.slots[0]}"
        return "w_{}@{}".format("+".join(map(str, self.heroes)), "+".join(map(str, self.slots)))


@dataclass(frozen=True, eq=True)
class WeightedGraph:
    labels: tuple[VertexLabel, ...]
    edges: Mapping[tuple[int, int], float]
    heavy: frozenset[tuple[int, int]] = frozenset()
    heavy_N: float = 0.0

    __hash__ = None

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> dict[VertexLabel, int]:
        return {lab: v for v, lab in enumerate(self.labels)}

    @cached_property
    def adjacency(self) -> list[int]:
        """Neighbour bitmask per vertex."""
        adj = [0] * self.vertex_count
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def weight(self, u: int, v: int) -> float:
        return self.edges[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def is_clique(self, vertices) -> bool:
        vs = sorted(vertices)
        return all(self.has_edge(a, b) for k, a in enumerate(vs) for b in vs[k + 1 :])

    def clique_weight(self, vertices) -> float:
        """Induced edge weight summed in ascending vertex order (matches the solver)."""
        vs = sorted(vertices)
        acc = 0.0
        for k, v in enumerate(vs):
            inc = 0.0
            for u in vs[:k]:
                inc += self.weight(u, v)
            acc += inc
        return acc

    def heavy_count(self, vertices) -> int:
        vs = sorted(vertices)
        return sum(1 for k, a in enumerate(vs) for b in vs[k + 1 :] if (a, b) in self.heavy)

    def family_sizes(self) -> dict[str, int]:
        sizes = {F: 0, FQ: 0}
        for lab in self.labels:
            sizes[lab.family] += 1
        return sizes


def _num(value: float) -> str:
    value = float(value)
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def to_dot(graph: WeightedGraph, name: str = "reduction") -> str:
    """DOT text with vertices and edges ordered by label; heavy edges flagged."""
    texts = [lab.text for lab in graph.labels]
    lines = [f"graph {name} {{"]
    for t in sorted(texts):
        lines.append(f'  "{t}";')
    rows = []
    for (u, v), w in graph.edges.items():
        a, b = sorted((texts[u], texts[v]))
        attrs = f"weight={_num(w)}"
        if (u, v) in graph.heavy:
            attrs += ", heavy=true"
        rows.append((a, b, attrs))
    for a, b, attrs in sorted(rows):
        lines.append(f'  "{a}" -- "{b}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
