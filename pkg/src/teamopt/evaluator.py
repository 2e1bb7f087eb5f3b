"""Objective evaluation of a fixed team (the polynomial certificate check).

All bonuses whose threshold is met fire simultaneously.  The total is a
left-to-right float sum in a fixed order (heroes by id, then each hero's
power followed by its active bonuses by (alliance, threshold)); the search
kernels reproduce this order exactly so objectives compare bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import TeamTooLarge, UnknownHero
from .instance import Instance

Team = tuple[int, ...]


def as_team(instance: Instance, members: Iterable[int]) -> Team:
    team = tuple(sorted(set(members)))
    for i in team:
        if not isinstance(i, int) or not 0 <= i < instance.n:
            raise UnknownHero(f"hero id {i!r} is not valid for an instance of {instance.n} heroes")
    return team


@dataclass(frozen=True)
class Evaluation:
    team: Team
    total: float
    base_power: float
    per_hero: dict[int, list[tuple[int, int, float]]]
    active_counts: dict[int, int]

    def contribution(self, hero: int) -> float:
        total = 0.0
        for _, _, v in self.per_hero[hero]:
            total += v
        return total


def alliance_counts(instance: Instance, members: Iterable[int]) -> dict[int, int]:
    team = as_team(instance, members)
    counts = dict.fromkeys(range(instance.t), 0)
    for i in team:
        for j in instance.hero_alliances[i]:
            counts[j] += 1
    return counts


def team_objective(instance: Instance, team: Team, counts=None) -> float:
    """Objective of an already-normalised (sorted, valid) team, no size check."""
    if counts is None:
        counts = [0] * instance.t
        for i in team:
            for j in instance.hero_alliances[i]:
                counts[j] += 1
    powers = instance.powers
    by_hero = instance.entries_by_hero
    acc = 0.0
    for i in team:
        acc += powers[i]
        for e in by_hero[i]:
            if counts[e.alliance] >= e.threshold:
                acc += e.value
    return acc


def evaluate_team(instance: Instance, members: Iterable[int]) -> Evaluation:
    team = as_team(instance, members)
    if len(team) > instance.team_cap:
        raise TeamTooLarge(f"team has {len(team)} heroes, cap is {instance.team_cap}")
    counts = alliance_counts(instance, team)
    per_hero: dict[int, list[tuple[int, int, float]]] = {}
    acc = 0.0
    base = 0.0
    for i in team:
        p = instance.powers[i]
        acc += p
        base += p
        fired = []
        for e in instance.entries_by_hero[i]:
            if counts[e.alliance] >= e.threshold:
                acc += e.value
                fired.append((e.alliance, e.threshold, e.value))
        per_hero[i] = fired
    return Evaluation(team, acc, base, per_hero, counts)


def check_decision(instance: Instance, members: Iterable[int], bound: float) -> bool:
    """Is the team's total power strictly greater than ``bound``?"""
    return evaluate_team(instance, members).total > bound


def _fmt(value: float) -> str:
    return f"{value:.10g}"


def breakdown_rows(instance: Instance, evaluation: Evaluation) -> list[dict]:
    """One record per hero, bonuses sorted by alliance name then threshold."""
    rows = []
    for i in sorted(evaluation.team, key=lambda h: instance.heroes[h].name):
        bonuses = sorted(
            evaluation.per_hero[i], key=lambda b: (instance.alliances[b[0]], b[1])
        )
        contribution = evaluation.contribution(i)
        power = instance.powers[i]
        rows.append(
            {
                "hero": instance.heroes[i].name,
                "bonuses": [
                    {"alliance": instance.alliances[j], "threshold": k, "value": v}
                    for j, k, v in bonuses
                ],
                "alliance_contribution": contribution,
                "hero_power": power,
                "sum": power + contribution,
            }
        )
    return rows


def render_breakdown(instance: Instance, evaluation: Evaluation) -> str:
    rows = breakdown_rows(instance, evaluation)
    width = max([len(r["bonuses"]) for r in rows] + [0])
    header = ["Hero"] + [""] * width + ["Alliance contribution", "Hero power", "Sum"]
    table = [header]
    for r in rows:
        cells = [f"{b['alliance']} {b['threshold']} +{_fmt(b['value'])}" for b in r["bonuses"]]
        cells += [""] * (width - len(cells))
        table.append(
            [r["hero"], *cells, _fmt(r["alliance_contribution"]), _fmt(r["hero_power"]), _fmt(r["sum"])]
        )
    widths = [max(len(row[c]) for row in table) for c in range(len(header))]
    lines = [" | ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in table]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    lines.append(f"Total: {_fmt(evaluation.total)}")
    return "\n".join(lines) + "\n"
