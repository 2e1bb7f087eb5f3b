import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teamopt.errors import TeamTooLarge, UnknownHero
from teamopt.evaluator import (
    alliance_counts,
    breakdown_rows,
    check_decision,
    evaluate_team,
    render_breakdown,
    team_objective,
)
from teamopt.verify import random_general

from best_team import ROWS, TOTAL


def test_best_team_counts(roster, best_ids):
    counts = alliance_counts(roster, best_ids)
    by_name = {roster.alliances[j]: c for j, c in counts.items()}
    assert by_name["warlock"] == 4
    assert by_name["scaled"] >= 2 and by_name["troll"] >= 2


def test_counts_empty_and_full(three_hero):
    assert set(alliance_counts(three_hero, ()).values()) == {0}
    full = alliance_counts(three_hero, range(3))
    assert [full[j] for j in range(three_hero.t)] == list(three_hero.column_sums)


def test_best_team_rows(roster, best_ids):
    rows = {r["hero"]: r for r in breakdown_rows(roster, evaluate_team(roster, best_ids))}
    assert rows.keys() == ROWS.keys()
    for name, (contrib, power, total) in ROWS.items():
        assert rows[name]["alliance_contribution"] == pytest.approx(contrib, abs=1e-9)
        assert rows[name]["hero_power"] == pytest.approx(power, abs=1e-9)
        assert rows[name]["sum"] == pytest.approx(total, abs=1e-9)


def test_best_team_total(roster, best_ids):
    assert evaluate_team(roster, best_ids).total == pytest.approx(TOTAL, abs=1e-9)


def test_witch_doctor_bonuses(roster, best_ids):
    rows = {r["hero"]: r for r in breakdown_rows(roster, evaluate_team(roster, best_ids))}
    cells = [(b["alliance"], b["threshold"], round(b["value"], 12)) for b in rows["witch doctor"]["bonuses"]]
    assert cells == [
        ("heartless", 2, 0.2),
        ("human", 2, 0.2),
        ("insect", 2, 0.2),
        ("scaled", 2, 0.4),
        ("troll", 2, 0.4),
        ("warlock", 2, 0.4),
        ("warlock", 4, 0.4),
    ]


def test_empty_team(roster):
    ev = evaluate_team(roster, ())
    assert ev.total == 0.0 and ev.per_hero == {}


def test_two_hero_subsets(two_hero):
    assert evaluate_team(two_hero, [0]).total == 1.0
    assert evaluate_team(two_hero, [1]).total == 1.0
    assert evaluate_team(two_hero, [0, 1]).total == 2.5


def test_team_too_large(roster):
    with pytest.raises(TeamTooLarge):
        evaluate_team(roster, range(11))


def test_unknown_hero(two_hero):
    with pytest.raises(UnknownHero):
        evaluate_team(two_hero, [5])


def test_decision(roster, best_ids, two_hero):
    assert check_decision(roster, best_ids, 80.0)
    assert not check_decision(roster, best_ids, 80.7)
    assert not check_decision(roster, (), 0.0)
    assert check_decision(two_hero, (0, 1), 2.0)


def test_render_has_total(roster, best_ids):
    text = render_breakdown(roster, evaluate_team(roster, best_ids))
    lines = text.splitlines()
    assert lines[0].startswith("Hero")
    assert lines[-1].startswith("Total: 80.7")
    assert any(line.startswith("witch doctor") and line.endswith("4.2") for line in lines)


def _naive(instance, team):
    counts = alliance_counts(instance, team)
    total = sum(instance.powers[i] for i in team)
    total += sum(e.value for e in instance.bonuses if e.hero in team and counts[e.alliance] >= e.threshold)
    return total


@given(st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_objective_matches_naive_sum(seed):
    rng = random.Random(seed)
    inst = random_general(rng)
    team = tuple(sorted(rng.sample(range(inst.n), rng.randint(0, min(inst.n, inst.team_cap)))))
    ev = evaluate_team(inst, team)
    assert ev.total == pytest.approx(_naive(inst, team), abs=1e-9)
    assert ev.total == team_objective(inst, team)
    assert ev.total == pytest.approx(sum(r["sum"] for r in breakdown_rows(inst, ev)), abs=1e-9)


@given(st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_adding_a_hero_never_hurts(seed):
    # non-negative powers and bonuses make the objective monotone
    rng = random.Random(seed)
    inst = random_general(rng).with_team_cap(12)
    team = set(rng.sample(range(inst.n), rng.randint(0, inst.n - 1)))
    extra = rng.choice([i for i in range(inst.n) if i not in team])
    assert team_objective(inst, tuple(sorted(team | {extra}))) >= team_objective(inst, tuple(sorted(team)))
