import json
import os
import subprocess
import sys

import pytest

from teamopt import verify
from teamopt.cli import main, read_edge_list
from teamopt.errors import FormatError
from teamopt.instance import load_instance
from teamopt.solver import Solution, brute_force

from conftest import FIXTURES, ROSTER, BEST_TEAM


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_roster_json(capsys):
    code, out, _ = run(capsys, "solve", ROSTER, "--cap", 10, "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert sorted(doc["team"]) == sorted(BEST_TEAM)
    assert doc["objective"] == pytest.approx(80.7, abs=1e-9)
    assert doc["proven_optimal"] is True
    assert {"breakdown", "nodes", "wall_time"} <= doc.keys()


def test_solve_table_matches_json(capsys):
    _, table, _ = run(capsys, "solve", FIXTURES / "three_hero.json")
    _, js, _ = run(capsys, "solve", FIXTURES / "three_hero.json", "--format", "json")
    doc = json.loads(js)
    assert f"Total: {doc['objective']:.10g}" in table
    assert "Proven optimal: yes" in table


def test_solve_cap_zero(capsys):
    code, out, _ = run(capsys, "solve", FIXTURES / "two_hero.json", "--cap", 0, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["team"] == [] and doc["objective"] == 0


def test_solve_small_matches_brute_force(capsys):
    path = FIXTURES / "pairs_small.json"
    _, out, _ = run(capsys, "solve", path, "--format", "json")
    assert json.loads(out)["objective"] == brute_force(load_instance(path)).objective


def test_solve_node_limit_not_an_error(capsys):
    code, out, _ = run(capsys, "solve", ROSTER, "--node-limit", 10, "--format", "json")
    assert code == 0 and json.loads(out)["proven_optimal"] is False


def test_solve_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "solve", tmp_path / "nope.json")
    assert code == 2 and "error" in err


def test_solve_bad_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "solve", bad)[0] == 2


def test_evaluate_best_team(capsys):
    code, out, _ = run(capsys, "evaluate", ROSTER, *BEST_TEAM, "--format", "json")
    assert code == 0
    assert json.loads(out)["objective"] == pytest.approx(80.7, abs=1e-9)


def test_evaluate_tusk(capsys):
    code, out, _ = run(capsys, "evaluate", ROSTER, "tusk", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["objective"] == 1.0 and doc["breakdown"][0]["bonuses"] == []


def test_evaluate_unknown_hero(capsys):
    code, _, err = run(capsys, "evaluate", ROSTER, "tusk", "nobody", "ghost")
    assert code == 2 and "nobody" in err and "ghost" in err


def test_evaluate_team_too_large(capsys):
    names = [h.name for h in load_instance(ROSTER).heroes[:11]]
    code, _, err = run(capsys, "evaluate", ROSTER, *names)
    assert code == 2 and "TeamTooLarge" in err


def test_export_lp_is_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a.lp", tmp_path / "b.lp"
    assert run(capsys, "export", FIXTURES / "two_hero.json", "lp", a)[0] == 0
    assert run(capsys, "export", FIXTURES / "two_hero.json", "lp", b)[0] == 0
    assert a.read_bytes() == b.read_bytes() == (FIXTURES / "two_hero.lp").read_bytes()


def test_export_dot_pairs_cycle(capsys, tmp_path):
    out = tmp_path / "g.dot"
    assert run(capsys, "export", FIXTURES / "pair_cycle.json", "dot-pairs", out)[0] == 0
    body = out.read_text().splitlines()
    assert sum(1 for line in body if line.endswith('";') and "--" not in line) == 30


def test_export_dot_pairs_rejects_roster(capsys, tmp_path):
    code, _, err = run(capsys, "export", ROSTER, "dot-pairs", tmp_path / "g.dot")
    assert code == 2 and "NotPairForm" in err


def test_export_dot_general_needs_q(capsys, tmp_path):
    assert run(capsys, "export", FIXTURES / "pair_cycle.json", "dot-general", tmp_path / "g.dot")[0] == 2
    assert run(capsys, "export", FIXTURES / "pair_cycle.json", "dot-general", tmp_path / "g.dot", "--q", 2)[0] == 0


def test_export_dot_basic(capsys, tmp_path):
    out = tmp_path / "g.dot"
    assert run(capsys, "export", FIXTURES / "three_hero.json", "dot-basic", out)[0] == 0
    assert out.read_text().startswith("graph reduction {")


def test_verify_zero_cases(capsys):
    code, out, _ = run(capsys, "verify", "--cases", 0)
    assert code == 0 and "0 passed, 0 failed" in out


def test_verify_small_run(capsys):
    code, out, _ = run(capsys, "verify", "--seed", 1, "--cases", 20, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] == 20


def test_verify_catches_corrupted_solver(capsys, monkeypatch):
    real = verify.branch_and_bound

    def corrupted(instance, options=None):
        sol = real(instance, options)
        return Solution(sol.team[:-1], sol.objective, True)  # drops a hero, keeps the score

    monkeypatch.setattr(verify, "branch_and_bound", corrupted)
    code, _, err = run(capsys, "verify", "--seed", 3, "--cases", 10)
    assert code == 1
    assert "FAIL seed=3 case=" in err
    assert '"heroes"' in err  # serialized instance for reproduction


def test_verify_worker_determinism():
    a = verify.run_verify(42, 40, workers=1)
    b = verify.run_verify(42, 40, workers=4)
    assert a.ok and b.ok and a.reductions == b.reductions


def test_workers_must_be_positive(capsys):
    assert run(capsys, "solve", FIXTURES / "two_hero.json", "--workers", 0)[0] == 2


@pytest.mark.parametrize(
    "graph,k,expected",
    [("triangle.edges", 2, 4.0), ("edgeless4.edges", 3, 3.0), ("k4.edges", 3, 9.0)],
)
def test_reduce_dks_then_solve(capsys, tmp_path, graph, k, expected):
    out = tmp_path / "dks.json"
    assert run(capsys, "reduce-dks", FIXTURES / graph, k, out)[0] == 0
    _, js, _ = run(capsys, "solve", out, "--format", "json")
    assert json.loads(js)["objective"] == expected


def test_reduce_dks_k_too_large(capsys, tmp_path):
    code, _, err = run(capsys, "reduce-dks", FIXTURES / "triangle.edges", 4, tmp_path / "x.json")
    assert code == 2 and "InvalidK" in err


def test_reduce_dks_custom_weights(capsys, tmp_path):
    out = tmp_path / "dks.json"
    run(capsys, "reduce-dks", FIXTURES / "triangle.edges", 2, out, "--base-power", 2, "--edge-bonus", 0.5)
    _, js, _ = run(capsys, "solve", out, "--format", "json")
    assert json.loads(js)["objective"] == 5.0


def test_edge_list_parsing(tmp_path):
    path = tmp_path / "g.edges"
    path.write_text("# comment\n0 1\n\n5\n2 3  # trailing\n")
    assert read_edge_list(path) == (6, [(0, 1), (2, 3)])
    path.write_text("0 x\n")
    with pytest.raises(FormatError) as info:
        read_edge_list(path)
    assert info.value.line == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "teamopt", "evaluate", str(ROSTER), "tusk"],
        capture_output=True,
        text=True,
        env={**os.environ, "TEAMOPT_BACKEND": "python"},
    )
    assert proc.returncode == 0 and "Total: 1" in proc.stdout
