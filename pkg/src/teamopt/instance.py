"""Problem data model, dataset ingestion and bonus-rule compilation.

An :class:`Instance` holds the heroes (power and alliance memberships), the
sparse bonus tensor and the team cap.  Heroes and alliances are referred to by
dense 0-based ids everywhere downstream; names only matter at the file and CLI
boundary.
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .errors import (
    DuplicateHero,
    EmptyInstance,
    FormatError,
    InvalidInstance,
    NegativeBonus,
    UnknownAlliance,
)


@dataclass(frozen=True)
class Hero:
    id: int
    name: str
    power: float
    alliances: frozenset[str]


@dataclass(frozen=True)
class BonusRule:
    """Percentage bonus granted once ``threshold`` members of ``alliance`` are fielded.

    Members of the alliance receive ``member_percent`` of their own power,
    every other hero on the team receives ``global_percent`` of theirs.
    """

    alliance: str
    threshold: int
    member_percent: float = 0.0
    global_percent: float = 0.0


@dataclass(frozen=True, order=True)
class BonusEntry:
    hero: int
    alliance: int
    threshold: int
    value: float


@dataclass(frozen=True)
class Instance:
    heroes: tuple[Hero, ...]
    alliances: tuple[str, ...]
    bonuses: frozenset[BonusEntry]
    team_cap: int
    max_alliance_size: int

    @property
    def n(self) -> int:
        return len(self.heroes)

    @property
    def t(self) -> int:
        return len(self.alliances)

    @property
    def q(self) -> int:
        return self.max_alliance_size

    @cached_property
    def alliance_index(self) -> dict[str, int]:
        return {name: j for j, name in enumerate(self.alliances)}

    @cached_property
    def hero_index(self) -> dict[str, int]:
        return {h.name: h.id for h in self.heroes}

    @cached_property
    def powers(self) -> tuple[float, ...]:
        return tuple(h.power for h in self.heroes)

    @cached_property
    def hero_alliances(self) -> tuple[tuple[int, ...], ...]:
        """Alliance ids of each hero, ascending."""
        index = self.alliance_index
        return tuple(
            tuple(sorted(index[a] for a in h.alliances if a in index)) for h in self.heroes
        )

    @cached_property
    def members(self) -> tuple[tuple[int, ...], ...]:
        """Hero ids of each alliance, ascending."""
        cols: list[list[int]] = [[] for _ in self.alliances]
        for i, js in enumerate(self.hero_alliances):
            for j in js:
                cols[j].append(i)
        return tuple(tuple(c) for c in cols)

    @cached_property
    def membership(self) -> tuple[tuple[int, ...], ...]:
        """The n x t binary matrix a_ij."""
        rows = []
        for js in self.hero_alliances:
            row = [0] * self.t
            for j in js:
                row[j] = 1
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def column_sums(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.members)

    @cached_property
    def entries(self) -> tuple[BonusEntry, ...]:
        """Bonus tensor entries sorted by (hero, alliance, threshold)."""
        return tuple(sorted(self.bonuses))

    @cached_property
    def entries_by_hero(self) -> tuple[tuple[BonusEntry, ...], ...]:
        per: list[list[BonusEntry]] = [[] for _ in self.heroes]
        for e in self.entries:
            per[e.hero].append(e)
        return tuple(tuple(p) for p in per)

    def with_team_cap(self, team_cap: int) -> "Instance":
        return Instance(self.heroes, self.alliances, self.bonuses, team_cap, self.max_alliance_size)

    def with_powers(self, powers: Sequence[float]) -> "Instance":
        heroes = tuple(
            Hero(h.id, h.name, float(p), h.alliances) for h, p in zip(self.heroes, powers)
        )
        return Instance(heroes, self.alliances, self.bonuses, self.team_cap, self.max_alliance_size)


def make_heroes(rows: Iterable[tuple[str, float, Iterable[str]]]) -> list[Hero]:
    return [Hero(i, name, float(p), frozenset(al)) for i, (name, p, al) in enumerate(rows)]


def compile_bonus_rules(heroes: Sequence[Hero], rules: Sequence[BonusRule]) -> set[BonusEntry]:
    """Expand percentage rules into tensor entries ``percent * power``.

    Alliance ids are the positions in the sorted list of alliance names seen
    among ``heroes``.  Entries sharing a key are summed; zero entries are
    dropped.
    """
    alliances = sorted({a for h in heroes for a in h.alliances})
    index = {a: j for j, a in enumerate(alliances)}
    acc: dict[tuple[int, int, int], float] = defaultdict(float)
    for rule in rules:
        if rule.alliance not in index:
            raise UnknownAlliance(f"bonus rule references unknown alliance {rule.alliance!r}")
        if rule.member_percent < 0 or rule.global_percent < 0:
            raise NegativeBonus(f"negative percentage in rule for {rule.alliance!r}")
        if rule.threshold < 1:
            raise FormatError(f"rule threshold must be >= 1, got {rule.threshold}")
        j = index[rule.alliance]
        for h in heroes:
            pct = rule.member_percent if rule.alliance in h.alliances else rule.global_percent
            value = pct * h.power
            if value > 0:
                acc[(h.id, j, rule.threshold)] += value
    return {BonusEntry(i, j, k, v) for (i, j, k), v in acc.items() if v > 0}


def build_instance(
    heroes: Sequence[Hero],
    team_cap: int,
    rules: Sequence[BonusRule] = (),
    entries: Iterable[BonusEntry] = (),
    max_alliance_size: int | None = None,
) -> Instance:
    """Assemble and validate an instance; q is the larger of the declared and observed alliance size.

    ``entries`` must use the sorted-alliance-name ids; they are summed with
    the entries compiled from ``rules``.
    """
    alliances = tuple(sorted({a for h in heroes for a in h.alliances}))
    acc: dict[tuple[int, int, int], float] = defaultdict(float)
    for e in compile_bonus_rules(heroes, rules):
        acc[(e.hero, e.alliance, e.threshold)] += e.value
    for e in entries:
        if e.value < 0:
            raise NegativeBonus(f"negative bonus value {e.value} for hero {e.hero}")
        acc[(e.hero, e.alliance, e.threshold)] += e.value
    bonuses = frozenset(BonusEntry(i, j, k, v) for (i, j, k), v in acc.items() if v > 0)
    sizes = defaultdict(int)
    for h in heroes:
        for a in h.alliances:
            sizes[a] += 1
    observed = max(sizes.values(), default=0)
    q = max(max_alliance_size or 0, observed, 1)
    inst = Instance(tuple(heroes), alliances, bonuses, int(team_cap), q)
    require_valid(inst)
    return inst


def validate_instance(instance: Instance) -> list[str]:
    """Return one message per violated invariant; empty means valid."""
    out: list[str] = []
    seen: dict[str, int] = {}
    alliance_set = set(instance.alliances)
    for pos, h in enumerate(instance.heroes):
        if h.id != pos:
            out.append(f"hero ids not contiguous: position {pos} has id {h.id}")
        if h.name in seen:
            out.append(f"duplicate hero name {h.name!r} at ids {seen[h.name]} and {pos}")
        seen.setdefault(h.name, pos)
        if not (h.power >= 0 and math.isfinite(h.power)):
            out.append(f"hero {pos} has invalid power {h.power}")
        for a in sorted(h.alliances - alliance_set):
            out.append(f"hero {pos} references alliance {a!r} missing from the alliance list")
    if len(set(instance.alliances)) != len(instance.alliances):
        out.append("alliance names are not unique")
    for j, size in enumerate(instance.column_sums):
        if size > instance.q:
            out.append(
                f"alliance {j} ({instance.alliances[j]!r}) has {size} members, exceeding q={instance.q}"
            )
    for e in instance.entries:
        if not 0 <= e.hero < instance.n:
            out.append(f"bonus entry {e} references unknown hero {e.hero}")
        if not 0 <= e.alliance < instance.t:
            out.append(f"bonus entry {e} references unknown alliance {e.alliance}")
        if e.threshold < 1:
            out.append(f"bonus entry {e} has threshold below 1")
        if e.threshold > instance.q:
            out.append(f"bonus entry {e}: threshold exceeds q={instance.q}")
        if not (e.value > 0 and math.isfinite(e.value)):
            out.append(f"bonus entry {e} has non-positive or non-finite value")
    if instance.team_cap < 1:
        out.append(f"team_cap must be >= 1, got {instance.team_cap}")
    return out


def require_valid(instance: Instance) -> None:
    problems = validate_instance(instance)
    if problems:
        raise InvalidInstance("; ".join(problems))


# ---------------------------------------------------------------- file format

def _number(value: Any, field_path: str, *, integer: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FormatError("expected a number", field=field_path)
    if integer and (not isinstance(value, int) and not float(value).is_integer()):
        raise FormatError("expected an integer", field=field_path)
    if not math.isfinite(value):
        raise FormatError("expected a finite number", field=field_path)
    return int(value) if integer else float(value)


def _string(value: Any, field_path: str) -> str:
    if not isinstance(value, str) or not value.strip():
        raise FormatError("expected a non-empty string", field=field_path)
    return value.strip()


def instance_from_dict(doc: Mapping[str, Any]) -> Instance:
    """Build an instance from the parsed dataset document."""
    if not isinstance(doc, Mapping):
        raise FormatError("top-level value must be an object")
    if "team_cap" not in doc:
        raise FormatError("missing required key", field="team_cap")
    team_cap = _number(doc["team_cap"], "team_cap", integer=True)
    raw_heroes = doc.get("heroes")
    if not isinstance(raw_heroes, list):
        raise FormatError("expected a list", field="heroes")
    if not raw_heroes:
        raise EmptyInstance("dataset contains no heroes")

    rows = []
    names: set[str] = set()
    for pos, raw in enumerate(raw_heroes):
        where = f"heroes[{pos}]"
        if not isinstance(raw, Mapping):
            raise FormatError("expected an object", field=where)
        name = _string(raw.get("name"), f"{where}.name")
        if name in names:
            raise DuplicateHero(f"duplicate hero name {name!r} ({where})")
        names.add(name)
        power = _number(raw.get("power"), f"{where}.power")
        if power < 0:
            raise FormatError("power must be non-negative", field=f"{where}.power")
        als = raw.get("alliances", [])
        if not isinstance(als, list):
            raise FormatError("expected a list", field=f"{where}.alliances")
        alliances = [_string(a, f"{where}.alliances[{k}]") for k, a in enumerate(als)]
        rows.append((name, power, alliances))
    heroes = make_heroes(rows)
    known = {a for h in heroes for a in h.alliances}

    rules = []
    for pos, raw in enumerate(doc.get("bonus_rules", []) or []):
        where = f"bonus_rules[{pos}]"
        if not isinstance(raw, Mapping):
            raise FormatError("expected an object", field=where)
        alliance = _string(raw.get("alliance"), f"{where}.alliance")
        if alliance not in known:
            raise UnknownAlliance(f"{where} references unknown alliance {alliance!r}")
        threshold = _number(raw.get("threshold"), f"{where}.threshold", integer=True)
        if threshold < 1:
            raise FormatError("threshold must be >= 1", field=f"{where}.threshold")
        member = _number(raw.get("member_percent", 0.0), f"{where}.member_percent")
        glob = _number(raw.get("global_percent", 0.0), f"{where}.global_percent")
        if member < 0 or glob < 0:
            raise NegativeBonus(f"{where} has a negative percentage")
        rules.append(BonusRule(alliance, threshold, member, glob))

    alliance_ids = {a: j for j, a in enumerate(sorted(known))}
    hero_ids = {h.name: h.id for h in heroes}
    entries = []
    for pos, raw in enumerate(doc.get("bonus_entries", []) or []):
        where = f"bonus_entries[{pos}]"
        if not isinstance(raw, Mapping):
            raise FormatError("expected an object", field=where)
        hero = _string(raw.get("hero"), f"{where}.hero")
        if hero not in hero_ids:
            raise FormatError(f"unknown hero {hero!r}", field=f"{where}.hero")
        alliance = _string(raw.get("alliance"), f"{where}.alliance")
        if alliance not in alliance_ids:
            raise UnknownAlliance(f"{where} references unknown alliance {alliance!r}")
        threshold = _number(raw.get("threshold"), f"{where}.threshold", integer=True)
        value = _number(raw.get("value"), f"{where}.value")
        if value < 0:
            raise NegativeBonus(f"{where} has a negative value")
        entries.append(BonusEntry(hero_ids[hero], alliance_ids[alliance], threshold, value))

    declared = doc.get("max_alliance_size")
    if declared is not None:
        declared = _number(declared, "max_alliance_size", integer=True)

    inst = build_instance(heroes, team_cap, rules, entries, declared)
    require_valid(inst)
    return inst


def load_instance(path: str | Path) -> Instance:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    return instance_from_dict(doc)


def instance_to_dict(instance: Instance) -> dict[str, Any]:
    """Serialise with explicit bonus entries (rules are not recoverable from the tensor)."""
    return {
        "team_cap": instance.team_cap,
        "max_alliance_size": instance.max_alliance_size,
        "heroes": [
            {"name": h.name, "power": h.power, "alliances": sorted(h.alliances)}
            for h in instance.heroes
        ],
        "bonus_entries": [
            {
                "hero": instance.heroes[e.hero].name,
                "alliance": instance.alliances[e.alliance],
                "threshold": e.threshold,
                "value": e.value,
            }
            for e in instance.entries
        ],
    }


def dump_instance(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), indent=2) + "\n"


def save_instance(instance: Instance, path: str | Path) -> None:
    Path(path).write_text(dump_instance(instance), encoding="utf-8")
