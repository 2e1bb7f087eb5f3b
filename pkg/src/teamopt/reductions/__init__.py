"""Reductions between team selection, densest k-subgraph and maximum edge-weighted clique."""

from .constructions import (
    DksInstance,
    choose_big_N,
    clique_to_team,
    consistent_heavy_count,
    dks_to_du,
    du_to_mewc_basic,
    du_to_mewc_general,
    du_to_mewc_pairs,
    induced_edge_count,
)
from .graph import F, FQ, VertexLabel, WeightedGraph, to_dot
from .mewc import CliqueSolution, brute_force_mewc, solve_mewc_exact

__all__ = [
    "CliqueSolution",
    "DksInstance",
    "F",
    "FQ",
    "VertexLabel",
    "WeightedGraph",
    "brute_force_mewc",
    "choose_big_N",
    "clique_to_team",
    "consistent_heavy_count",
    "dks_to_du",
    "du_to_mewc_basic",
    "du_to_mewc_general",
    "du_to_mewc_pairs",
    "induced_edge_count",
    "solve_mewc_exact",
    "to_dot",
]
