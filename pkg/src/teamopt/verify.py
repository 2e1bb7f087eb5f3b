"""Random instance generators and the cross-oracle verification suite.

Every case is checked against independent routes: branch and bound versus
exhaustive enumeration, the 0/1 model versus the evaluator, and the clique
reductions versus exactly-m enumeration whenever their preconditions hold.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from . import ilp
from .evaluator import alliance_counts, evaluate_team, team_objective
from .instance import BonusEntry, BonusRule, Instance, build_instance, dump_instance, make_heroes
from .reductions import (
    DksInstance,
    choose_big_N,
    clique_to_team,
    consistent_heavy_count,
    du_to_mewc_basic,
    du_to_mewc_general,
    solve_mewc_exact,
)
from .solver import SearchOptions, branch_and_bound, brute_force, solve_no_alliance

TOL = 1e-9
MEWC_VERTEX_LIMIT = 64
KINDS = ("general", "general", "general", "empty", "pairs", "triples")


def _power(rng: random.Random) -> float:
    if rng.random() < 0.5:
        return float(rng.randint(0, 5))
    return round(rng.uniform(0, 5), 1)


def random_general(rng: random.Random, n: int | None = None, m: int | None = None) -> Instance:
    n = n or rng.randint(2, 12)
    m = m or rng.randint(1, 5)
    t = rng.randint(1, 4)
    names = [f"a{j}" for j in range(t)]
    rows = []
    for i in range(n):
        als = rng.sample(names, rng.randint(1, min(2, t)))
        rows.append((f"h{i}", _power(rng), als))
    heroes = make_heroes(rows)
    present = sorted({a for h in heroes for a in h.alliances})
    size = {a: sum(a in h.alliances for h in heroes) for a in present}
    rules = []
    for a in present:
        for _ in range(rng.randint(0, 2)):
            rules.append(
                BonusRule(
                    a,
                    rng.randint(1, size[a]),
                    rng.choice([0.0, 0.1, 0.2, 0.3]),
                    rng.choice([0.0, 0.0, 0.1]),
                )
            )
    entries = []
    if rng.random() < 0.3:
        for _ in range(rng.randint(1, 3)):
            j = rng.randrange(len(present))
            entries.append(
                BonusEntry(rng.randrange(n), j, rng.randint(1, size[present[j]]), rng.choice([0.5, 1.0]))
            )
    return build_instance(heroes, m, rules, entries)


def random_empty(rng: random.Random, n_range=(2, 6), m_choices=(2, 3)) -> Instance:
    m = rng.choice(m_choices)
    n = rng.randint(max(n_range[0], m), n_range[1])
    heroes = make_heroes((f"h{i}", _power(rng), [f"a{rng.randint(0, 2)}"]) for i in range(n))
    return build_instance(heroes, m)


def random_q_form(rng: random.Random, q: int, n_range=(2, 5), m_range=(2, 3)) -> Instance:
    """Alliances of exactly q members whose bonuses fire only when complete."""
    m = rng.randint(max(m_range[0], q), m_range[1])
    n = rng.randint(max(n_range[0], m), n_range[1])
    all_sets = list(combinations(range(n), q))
    chosen = rng.sample(all_sets, rng.randint(1, min(4, len(all_sets))))
    als: dict[int, list[str]] = {i: [] for i in range(n)}
    names = []
    for S in chosen:
        name = "g" + "_".join(map(str, S))
        names.append(name)
        for i in S:
            als[i].append(name)
    heroes = make_heroes((f"h{i}", _power(rng), als[i]) for i in range(n))
    index = {a: j for j, a in enumerate(sorted(names))}
    entries = []
    for S, name in zip(chosen, names):
        for c in range(n):
            p = 0.7 if c in S else 0.3
            if rng.random() < p:
                entries.append(BonusEntry(c, index[name], q, rng.choice([0.5, 1.0, 1.5, 2.0])))
    return build_instance(heroes, m, entries=entries, max_alliance_size=q)


def random_instance(rng: random.Random, kind: str | None = None) -> Instance:
    kind = kind or rng.choice(KINDS)
    if kind == "general":
        return random_general(rng)
    if kind == "empty":
        return random_empty(rng)
    if kind == "pairs":
        return random_q_form(rng, 2)
    if kind == "triples":
        return random_q_form(rng, 3, n_range=(3, 5), m_range=(3, 3))
    raise ValueError(f"unknown instance kind {kind!r}")


def random_graph(rng: random.Random, max_vertices: int = 8) -> DksInstance:
    nv = rng.randint(1, max_vertices)
    p = rng.random()
    edges = tuple((u, v) for u, v in combinations(range(nv), 2) if rng.random() < p)
    return DksInstance(nv, edges, rng.randint(1, nv))


# ----------------------------------------------------------------- checks

def q_uniform(instance: Instance) -> int | None:
    """The common alliance size when every alliance has it and bonuses fire only at it."""
    sizes = set(instance.column_sums)
    if len(sizes) != 1:
        return None
    q = sizes.pop()
    if q < 2 or any(e.threshold != q for e in instance.entries):
        return None
    return q


def sample_assignment(instance: Instance, model: ilp.LinearModel, rng: random.Random) -> dict[str, int]:
    """Random x of size <= m+1 (so the cap row is exercised) and random indicators on chosen heroes."""
    size = rng.randint(0, min(instance.n, instance.team_cap + 1))
    chosen = set(rng.sample(range(instance.n), size))
    values = {ilp.x_name(i): int(i in chosen) for i in range(instance.n)}
    for e in instance.entries:
        on = e.hero in chosen and rng.random() < 0.5
        if rng.random() < 0.05:
            on = True  # occasionally violate the activation row too
        values[ilp.indicator_name(e)] = int(on)
    return values


def bigm_violations(instance: Instance, model: ilp.LinearModel, assignment: dict[str, int]) -> list[str]:
    """Soundness: a feasible assignment must never activate an unearned bonus."""
    if ilp.check_feasible(model, assignment):
        return []
    team = ilp.assignment_team(model, assignment)
    counts = alliance_counts(instance, team)
    out = []
    for e in instance.entries:
        if assignment[ilp.indicator_name(e)]:
            if counts[e.alliance] < e.threshold:
                out.append(f"feasible assignment activates {ilp.indicator_name(e)} with count {counts[e.alliance]}")
            if e.hero not in team:
                out.append(f"feasible assignment activates {ilp.indicator_name(e)} without its hero")
    if len(team) > instance.team_cap:
        out.append(f"feasible assignment fields {len(team)} heroes")
    return out


def random_team(instance: Instance, rng: random.Random) -> tuple[int, ...]:
    size = rng.randint(0, min(instance.n, instance.team_cap))
    return tuple(sorted(rng.sample(range(instance.n), size)))


def check_reductions(instance: Instance) -> tuple[list[str], list[str]]:
    """Returns (failures, names of the reductions that applied)."""
    failures, applied = [], []
    m, n = instance.team_cap, instance.n
    if m < 2 or n < m:
        return failures, applied
    if not instance.bonuses:
        if m * n <= MEWC_VERTEX_LIMIT:
            applied.append("basic")
            graph = du_to_mewc_basic(instance)
            clique = solve_mewc_exact(graph)
            best = brute_force(instance, exact_size=True)
            if abs(clique.weight - best.objective) > TOL:
                failures.append(f"basic reduction: clique {clique.weight} != optimum {best.objective}")
            team = clique_to_team(graph, clique.vertices)
            if abs(team_objective(instance, team) - best.objective) > TOL:
                failures.append(f"basic reduction: recovered team {team} is not optimal")
        return failures, applied
    q = q_uniform(instance)
    if q is None or m < q:
        return failures, applied
    size = m * n + math.comb(m, q) * math.comb(n, q)
    if size > MEWC_VERTEX_LIMIT:
        return failures, applied
    applied.append(f"q={q}")
    graph = du_to_mewc_general(instance, q)
    clique = solve_mewc_exact(graph)
    best = brute_force(instance, exact_size=True)
    shifted = clique.weight - consistent_heavy_count(graph) * graph.heavy_N
    if abs(shifted - best.objective) > TOL:
        failures.append(f"q={q} reduction: shifted clique weight {shifted} != optimum {best.objective}")
    team = clique_to_team(graph, clique.vertices)
    if len(team) != m or abs(team_objective(instance, team) - best.objective) > TOL:
        failures.append(f"q={q} reduction: recovered team {team} is not an optimal m-team")
    if graph.heavy_count(clique.vertices) != consistent_heavy_count(graph):
        failures.append(f"q={q} reduction: optimal clique is not consistent")
    return failures, applied


def check_case(
    instance: Instance,
    rng: random.Random,
    solver: Callable | None = None,
    workers: int = 1,
    bigm_samples: int = 50,
) -> tuple[list[str], list[str]]:
    solver = solver or branch_and_bound
    failures: list[str] = []
    applied: list[str] = []

    oracle = brute_force(instance)
    sol = solver(instance, SearchOptions(parallel_workers=workers))
    if not sol.proven_optimal:
        failures.append("branch and bound did not prove optimality")
    if abs(sol.objective - oracle.objective) > TOL:
        failures.append(f"objective {sol.objective!r} != brute force {oracle.objective!r}")
    if tuple(sol.team) != tuple(oracle.team):
        failures.append(f"team {tuple(sol.team)} != brute force {tuple(oracle.team)}")
    if len(sol.team) > instance.team_cap:
        failures.append(f"team of {len(sol.team)} exceeds cap {instance.team_cap}")

    if not instance.bonuses:
        applied.append("greedy")
        greedy = solve_no_alliance(instance)
        if abs(greedy.objective - oracle.objective) > TOL:
            failures.append(f"greedy {greedy.objective} != brute force {oracle.objective}")

    model = ilp.build_model(instance)
    try:
        assignment = ilp.team_assignment(instance, sol.team)
        bad = ilp.check_feasible(model, assignment)
        if bad:
            failures.append(f"solver team assignment infeasible: {bad[:3]}")
        if abs(ilp.objective_value(model, assignment) - evaluate_team(instance, sol.team).total) > TOL:
            failures.append("model objective disagrees with evaluator on the solver team")
    except Exception as exc:  # a corrupted solver may return garbage
        failures.append(f"solver team unusable: {exc!r}")

    for _ in range(bigm_samples):
        failures += bigm_violations(instance, model, sample_assignment(instance, model, rng))
        team = random_team(instance, rng)
        assignment = ilp.team_assignment(instance, team)
        if ilp.check_feasible(model, assignment):
            failures.append(f"greedy activation for team {team} rejected by the model")
        elif abs(ilp.objective_value(model, assignment) - team_objective(instance, team)) > TOL:
            failures.append(f"model objective disagrees with evaluator for team {team}")

    if ilp.import_lp(ilp.export_lp(model)) != model:
        failures.append("LP export/import round trip changed the model")

    red_failures, red_applied = check_reductions(instance)
    return failures + red_failures, applied + red_applied


@dataclass
class VerifyReport:
    seed: int
    cases: int
    passed: int = 0
    failed: int = 0
    reductions: dict[str, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def case_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index)


def run_verify(seed: int, cases: int, solver: Callable | None = None, workers: int = 1) -> VerifyReport:
    report = VerifyReport(seed, cases)
    for index in range(cases):
        rng = case_rng(seed, index)
        instance = random_instance(rng)
        try:
            failures, applied = check_case(instance, rng, solver=solver, workers=workers)
        except Exception as exc:
            failures, applied = [f"exception: {exc!r}"], []
        for name in applied:
            report.reductions[name] = report.reductions.get(name, 0) + 1
        if failures:
            report.failed += 1
            report.failures.append(
                {"seed": seed, "case": index, "failures": failures, "instance": dump_instance(instance)}
            )
        else:
            report.passed += 1
    return report
