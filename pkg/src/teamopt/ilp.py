"""Solver-agnostic 0/1 model of the team-selection problem and LP-format I/O.

Variables are ``x_<hero>`` (hero fielded) and ``I_<hero>_<alliance>_<k>``
(bonus activated), one indicator per stored bonus entry.  Rows:

* ``cap``: sum of x <= team cap
* ``link_i_j_k``: sum_{i' in j} x_i' - M * I_ijk >= k - M   (big-M, M = q + 1)
* ``act_i_j_k``: I_ijk - x_i <= 0
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import EmptyInstance, FormatError, IncompleteAssignment
from .evaluator import alliance_counts, as_team
from .instance import BonusEntry, Instance

LE = "<="
GE = ">="
_FEAS_TOL = 1e-9
_WRAP = 200


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple[tuple[str, float], ...]
    sense: str
    rhs: float


@dataclass(frozen=True)
class LinearModel:
    variables: tuple[str, ...]
    objective: tuple[tuple[str, float], ...]
    constraints: tuple[Constraint, ...]
    big_M: float

    @property
    def objective_map(self) -> dict[str, float]:
        return dict(self.objective)


def x_name(i: int) -> str:
    return f"x_{i}"


def indicator_name(e: BonusEntry) -> str:
    return f"I_{e.hero}_{e.alliance}_{e.threshold}"


def build_model(instance: Instance) -> LinearModel:
    if instance.n == 0:
        raise EmptyInstance("cannot build a model without heroes")
    big_m = float(instance.q + 1)
    xs = [x_name(i) for i in range(instance.n)]
    entries = instance.entries
    inds = [indicator_name(e) for e in entries]

    objective = [(x, p) for x, p in zip(xs, instance.powers)]
    objective += [(v, e.value) for v, e in zip(inds, entries)]

    rows = [Constraint("cap", tuple((x, 1.0) for x in xs), LE, float(instance.team_cap))]
    suffix = [f"{e.hero}_{e.alliance}_{e.threshold}" for e in entries]
    for e, ind, tag in zip(entries, inds, suffix):
        terms = tuple((x_name(i), 1.0) for i in instance.members[e.alliance]) + ((ind, -big_m),)
        rows.append(Constraint(f"link_{tag}", terms, GE, e.threshold - big_m))
    for e, ind, tag in zip(entries, inds, suffix):
        rows.append(Constraint(f"act_{tag}", ((ind, 1.0), (x_name(e.hero), -1.0)), LE, 0.0))

    return LinearModel(tuple(xs + inds), tuple(objective), tuple(rows), big_m)


def _require_complete(model: LinearModel, assignment: Mapping[str, int]) -> None:
    missing = [v for v in model.variables if v not in assignment]
    if missing:
        raise IncompleteAssignment(f"{len(missing)} variables unassigned, e.g. {missing[:3]}")


def check_feasible(model: LinearModel, assignment: Mapping[str, int]) -> list[str]:
    """Names of the constraints violated by ``assignment`` (binary domains included)."""
    _require_complete(model, assignment)
    violated = [f"binary:{v}" for v in model.variables if assignment[v] not in (0, 1)]
    for c in model.constraints:
        lhs = sum(coef * assignment[v] for v, coef in c.terms)
        if c.sense == LE and lhs > c.rhs + _FEAS_TOL:
            violated.append(c.name)
        elif c.sense == GE and lhs < c.rhs - _FEAS_TOL:
            violated.append(c.name)
    return violated


def objective_value(model: LinearModel, assignment: Mapping[str, int]) -> float:
    _require_complete(model, assignment)
    acc = 0.0
    for v, coef in model.objective:
        acc += coef * assignment[v]
    return acc


def team_assignment(instance: Instance, members: Iterable[int], greedy: bool = True) -> dict[str, int]:
    """Assignment with x = team and every admissible indicator switched on (if ``greedy``)."""
    team = as_team(instance, members)
    chosen = set(team)
    counts = alliance_counts(instance, team)
    values = {x_name(i): int(i in chosen) for i in range(instance.n)}
    for e in instance.entries:
        on = greedy and e.hero in chosen and counts[e.alliance] >= e.threshold
        values[indicator_name(e)] = int(on)
    return values


def assignment_team(model: LinearModel, assignment: Mapping[str, int]) -> tuple[int, ...]:
    return tuple(
        sorted(int(v[2:]) for v in model.variables if v.startswith("x_") and assignment[v])
    )


# ------------------------------------------------------------------ LP format

def _num(value: float) -> str:
    value = float(value)
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def _expression(terms: Iterable[tuple[str, float]]) -> list[str]:
    pieces = []
    for k, (var, coef) in enumerate(terms):
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        body = var if mag == 1 else f"{_num(mag)} {var}"
        if k == 0:
            pieces.append(body if sign == "+" else f"- {body}")
        else:
            pieces.append(f"{sign} {body}")
    return pieces


def _wrap(head: str, pieces: list[str]) -> list[str]:
    lines = []
    current = head
    for p in pieces:
        if len(current) + 1 + len(p) > _WRAP and current.strip():
            lines.append(current)
            current = "   " + p
        else:
            current = f"{current} {p}" if current else p
    lines.append(current)
    return lines


def export_lp(model: LinearModel) -> str:
    out = [f"\\ big_M {_num(model.big_M)}", "Maximize"]
    out += _wrap(" obj:", _expression(model.objective))
    out.append("Subject To")
    for c in model.constraints:
        out += _wrap(f" {c.name}:", _expression(c.terms) + [c.sense, _num(c.rhs)])
    out.append("Binary")
    out += _wrap("", list(model.variables))
    out.append("End")
    return "\n".join(out) + "\n"


_SECTIONS = {"maximize": "max", "subject to": "st", "binary": "bin", "end": "end"}
_ROW_START = re.compile(r"^\s*([A-Za-z_][\w.]*)\s*:(.*)$")
_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$|^[+-]?(inf|nan)$")


def _parse_terms(tokens: list[str], where: str) -> list[tuple[str, float]]:
    terms = []
    sign = 1.0
    coef = None
    for tok in tokens:
        if tok in ("+", "-"):
            if coef is not None:
                raise FormatError(f"dangling coefficient before {tok!r}", field=where)
            sign = -sign if tok == "-" else sign
            continue
        if _NUMBER.match(tok):
            if coef is not None:
                raise FormatError(f"two coefficients in a row ({tok!r})", field=where)
            coef = float(tok)
            continue
        if not re.match(r"^[A-Za-z_][\w.]*$", tok):
            raise FormatError(f"unexpected token {tok!r}", field=where)
        terms.append((tok, sign * (1.0 if coef is None else coef)))
        sign, coef = 1.0, None
    if coef is not None:
        raise FormatError("coefficient without variable", field=where)
    return terms


def import_lp(text: str) -> LinearModel:
    big_m = None
    section = None
    seen_end = False
    obj_tokens: list[str] = []
    rows: list[tuple[str, list[str], int]] = []
    variables: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("\\"):
            m = re.match(r"^\\\s*big_M\s+(\S+)$", stripped)
            if m:
                big_m = float(m.group(1))
            continue
        key = stripped.lower()
        if key in _SECTIONS:
            section = _SECTIONS[key]
            if section == "end":
                seen_end = True
            continue
        if seen_end:
            raise FormatError("content after End", line=lineno)
        if section is None:
            raise FormatError("content before the Maximize section", line=lineno)
        if section == "max":
            m = _ROW_START.match(line)
            obj_tokens += (m.group(2) if m else line).split()
        elif section == "st":
            m = _ROW_START.match(line)
            if m and not raw.startswith("   "):
                rows.append((m.group(1), m.group(2).split(), lineno))
            elif rows:
                rows[-1][1].extend(stripped.split())
            else:
                raise FormatError("constraint without a name", line=lineno)
        elif section == "bin":
            variables += stripped.split()
        else:  # pragma: no cover
            raise FormatError(f"unexpected section state {section}", line=lineno)
    if not seen_end:
        raise FormatError("missing End section")
    if big_m is None:
        raise FormatError("missing big_M header comment")

    objective = _parse_terms(obj_tokens, "objective")
    constraints = []
    for name, tokens, lineno in rows:
        rel = [k for k, tok in enumerate(tokens) if tok in ("<=", ">=", "=<", "=>")]
        if len(rel) != 1 or rel[0] != len(tokens) - 2:
            raise FormatError(f"row {name!r} lacks a single trailing relation", line=lineno)
        sense = LE if tokens[rel[0]] in ("<=", "=<") else GE
        try:
            rhs = float(tokens[-1])
        except ValueError as exc:
            raise FormatError(f"bad right-hand side in row {name!r}", line=lineno) from exc
        terms = _parse_terms(tokens[: rel[0]], name)
        constraints.append(Constraint(name, tuple(terms), sense, rhs))

    declared = set(variables)
    for name, terms in [("objective", objective)] + [(c.name, c.terms) for c in constraints]:
        unknown = [v for v, _ in terms if v not in declared]
        if unknown:
            raise FormatError(f"undeclared variables {unknown[:3]}", field=name)
    return LinearModel(tuple(variables), tuple(objective), tuple(constraints), big_m)
