"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the lines are written straight
to the terminal even when output capture is on.  Set ``TEAMOPT_FULL_RULES`` to
a dataset carrying the complete upstream bonus-rule set to enable the exact
team-recovery part of criterion 2.
"""

import json
import math
import os
import random
import time
from itertools import combinations

import pytest

from teamopt import ilp, verify
from teamopt.cli import main
from teamopt.evaluator import breakdown_rows, evaluate_team, team_objective
from teamopt.instance import load_instance
from teamopt.reductions import (
    DksInstance,
    clique_to_team,
    consistent_heavy_count,
    dks_to_du,
    du_to_mewc_basic,
    du_to_mewc_general,
    du_to_mewc_pairs,
    induced_edge_count,
    solve_mewc_exact,
    to_dot,
)
from teamopt.solver import SearchOptions, branch_and_bound, brute_force

from conftest import FIXTURES, ROSTER, BEST_TEAM
from best_team import ROWS, TOTAL

TOL = 1e-9
SEED = 42


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail

    return emit


def _solve_json(capsys, *argv):
    code = main([str(a) for a in argv] + ["--format", "json"])
    out, _ = capsys.readouterr()
    return code, json.loads(out) if code == 0 else None


def test_criterion_01_best_team_rows(report, roster):
    start = time.perf_counter()
    ev = evaluate_team(roster, [roster.hero_index[name] for name in BEST_TEAM])
    rows = {r["hero"]: r for r in breakdown_rows(roster, ev)}
    elapsed = time.perf_counter() - start
    bad = [
        name
        for name, (contrib, power, total) in ROWS.items()
        if abs(rows[name]["alliance_contribution"] - contrib) > TOL
        or abs(rows[name]["hero_power"] - power) > TOL
        or abs(rows[name]["sum"] - total) > TOL
    ]
    ok = not bad and abs(ev.total - TOTAL) <= TOL and elapsed < 1.0
    report(1, ok, f"total={ev.total!r}, mismatched rows={bad}, {elapsed:.3f}s")


def test_criterion_02_full_solve(report, capsys):
    start = time.perf_counter()
    code, doc = _solve_json(capsys, "solve", ROSTER, "--cap", 10)
    elapsed = time.perf_counter() - start
    ok = code == 0 and doc["proven_optimal"] and doc["objective"] >= TOTAL - TOL and elapsed < 900
    detail = f"objective={doc['objective']!r}, proven={doc['proven_optimal']}, {elapsed:.2f}s"
    report(2, ok, detail)


def test_criterion_02_soft_full_rules(report, capsys):
    path = os.environ.get("TEAMOPT_FULL_RULES")
    if not path:
        with capsys.disabled():
            print("\nCRITERION 2 (soft): SKIPPED (TEAMOPT_FULL_RULES not set)")
        pytest.skip("complete bonus-rule dataset not supplied")
    code, doc = _solve_json(capsys, "solve", path, "--cap", 10)
    ok = code == 0 and sorted(doc["team"]) == sorted(BEST_TEAM) and abs(doc["objective"] - TOTAL) <= TOL
    report("2 (soft)", ok, f"team={doc and doc['team']}, objective={doc and doc['objective']}")


def test_criterion_03_oracle_equivalence(report):
    start = time.perf_counter()
    rep = verify.run_verify(SEED, 200)
    elapsed = time.perf_counter() - start
    ok = rep.passed == 200 and rep.failed == 0 and elapsed < 120
    report(3, ok, f"{rep.passed} passed, {rep.failed} failed, {elapsed:.1f}s")


def test_criterion_04_big_m(report):
    violations = 0
    feasible_active = 0
    completeness = 0
    for index in range(100):
        rng = verify.case_rng(SEED, index)
        inst = verify.random_instance(rng)
        model = ilp.build_model(inst)
        for _ in range(1000):
            values = verify.sample_assignment(inst, model, rng)
            bad = verify.bigm_violations(inst, model, values)
            violations += len(bad)
            if not ilp.check_feasible(model, values) and any(values[ilp.indicator_name(e)] for e in inst.entries):
                feasible_active += 1
            team = verify.random_team(inst, rng)
            if ilp.check_feasible(model, ilp.team_assignment(inst, team)):
                completeness += 1
    ok = violations == 0 and completeness == 0 and feasible_active > 0
    report(
        4,
        ok,
        f"soundness violations={violations} over {feasible_active} feasible active samples, "
        f"completeness violations={completeness}",
    )


def test_criterion_05_basic_reduction(report):
    rng = random.Random(SEED)
    worst = 0.0
    for _ in range(50):
        inst = verify.random_empty(rng, n_range=(2, 6), m_choices=(2, 3))
        clique = solve_mewc_exact(du_to_mewc_basic(inst))
        worst = max(worst, abs(clique.weight - brute_force(inst, exact_size=True).objective))
    report(5, worst <= TOL, f"50 instances, max |clique - optimum| = {worst:.3g}")


def test_criterion_06_pairs_reduction(report):
    rng = random.Random(SEED)
    worst, unrecovered = 0.0, 0
    for _ in range(30):
        inst = verify.random_q_form(rng, 2, n_range=(2, 5), m_range=(2, 3))
        graph = du_to_mewc_pairs(inst)
        clique = solve_mewc_exact(graph)
        best = brute_force(inst, exact_size=True).objective
        shift = 2 * math.comb(inst.team_cap, 2) * graph.heavy_N
        worst = max(worst, abs(clique.weight - shift - best))
        if abs(team_objective(inst, clique_to_team(graph, clique.vertices)) - best) > TOL:
            unrecovered += 1
    fig = du_to_mewc_pairs(load_instance(FIXTURES / "pair_cycle.json"))
    fig_clique = solve_mewc_exact(fig)
    fig_ok = fig.vertex_count == 30 and len(fig_clique.vertices) == 6
    ok = worst <= TOL and unrecovered == 0 and fig_ok
    report(
        6,
        ok,
        f"30 instances, max shifted gap {worst:.3g}, unrecovered={unrecovered}; "
        f"4-cycle config {fig.vertex_count} vertices, clique size {len(fig_clique.vertices)}",
    )


def test_criterion_07_triples_reduction(report):
    rng = random.Random(SEED)
    worst = 0.0
    for _ in range(10):
        inst = verify.random_q_form(rng, 3, n_range=(3, 5), m_range=(3, 3))
        graph = du_to_mewc_general(inst, 3)
        clique = solve_mewc_exact(graph)
        assert consistent_heavy_count(graph) == 3 * math.comb(3, 3)
        shift = 3 * math.comb(inst.team_cap, 3) * graph.heavy_N
        worst = max(worst, abs(clique.weight - shift - brute_force(inst, exact_size=True).objective))
    report(7, worst <= TOL, f"10 instances, max shifted gap {worst:.3g}")


def test_criterion_08_dks(report):
    rng = random.Random(SEED)
    mismatches, checked = 0, 0
    for _ in range(30):
        g = verify.random_graph(rng, max_vertices=8)
        for k in range(1, g.vertex_count + 1):
            dks = DksInstance(g.vertex_count, g.edges, k)
            inst = dks_to_du(dks)
            subsets = list(combinations(range(g.vertex_count), k))
            dense = max(induced_edge_count(dks, s) for s in subsets)
            densest = {s for s in subsets if induced_edge_count(dks, s) == dense}
            scores = {s: team_objective(inst, s) for s in subsets}
            top = max(scores.values())
            optimal = {s for s, v in scores.items() if v == top}
            best = brute_force(inst)
            checked += 1
            if optimal != densest or best.team not in densest or best.objective != top:
                mismatches += 1
    report(8, mismatches == 0, f"{checked} (graph, k) pairs, mismatches={mismatches}")


def test_criterion_09_determinism(report, roster):
    one = branch_and_bound(roster, SearchOptions(parallel_workers=1))
    four = branch_and_bound(roster, SearchOptions(parallel_workers=4))
    solve_same = (one.team, one.objective) == (four.team, four.objective)
    diffs = 0
    for index in range(200):
        inst = verify.random_instance(verify.case_rng(SEED, index))
        a = branch_and_bound(inst, SearchOptions(parallel_workers=1))
        b = branch_and_bound(inst, SearchOptions(parallel_workers=4))
        diffs += (a.team, a.objective) != (b.team, b.objective)
    report(9, solve_same and diffs == 0, f"full solve identical={solve_same}, verify-suite differences={diffs}")


def test_criterion_10_format_stability(report):
    broken = 0
    for index in range(200):
        model = ilp.build_model(verify.random_instance(verify.case_rng(SEED, index)))
        broken += ilp.import_lp(ilp.export_lp(model)) != model
    lp_golden = ilp.export_lp(ilp.build_model(load_instance(FIXTURES / "two_hero.json"))).encode()
    dot_golden = to_dot(du_to_mewc_pairs(load_instance(FIXTURES / "pairs_small.json"))).encode()
    goldens = (
        lp_golden == (FIXTURES / "two_hero.lp").read_bytes()
        and dot_golden == (FIXTURES / "pairs_small.dot").read_bytes()
    )
    report(10, broken == 0 and goldens, f"round-trip failures={broken}, goldens stable={goldens}")
