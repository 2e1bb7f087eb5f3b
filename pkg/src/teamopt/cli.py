"""Command-line interface: solve, evaluate, export, verify, reduce-dks.

Exit codes: 0 success, 1 verification mismatch, 2 data error, 3 guard/limit abort.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import ilp, verify
from .errors import DataError, FormatError, LimitError, TeamTooLarge
from .evaluator import breakdown_rows, evaluate_team, render_breakdown
from .instance import load_instance, save_instance
from .reductions import (
    DksInstance,
    dks_to_du,
    du_to_mewc_basic,
    du_to_mewc_general,
    du_to_mewc_pairs,
    to_dot,
)
from .solver import SearchOptions, branch_and_bound

EXIT_OK, EXIT_MISMATCH, EXIT_DATA, EXIT_LIMIT = 0, 1, 2, 3


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def cmd_solve(args) -> int:
    instance = load_instance(args.dataset)
    if args.cap is not None:
        if args.cap < 0:
            raise FormatError("--cap must be non-negative")
        instance = instance.with_team_cap(args.cap)
    options = SearchOptions(
        time_limit=args.time_limit, node_limit=args.node_limit, parallel_workers=args.workers
    )
    sol = branch_and_bound(instance, options)
    evaluation = evaluate_team(instance, sol.team)
    if args.format == "json":
        _emit(
            {
                "team": [instance.heroes[i].name for i in sol.team],
                "objective": sol.objective,
                "proven_optimal": sol.proven_optimal,
                "breakdown": breakdown_rows(instance, evaluation),
                "nodes": sol.nodes_explored,
                "wall_time": sol.wall_time,
            }
        )
    else:
        sys.stdout.write(render_breakdown(instance, evaluation))
        print(f"Proven optimal: {'yes' if sol.proven_optimal else 'no'}")
        print(f"Nodes: {sol.nodes_explored}  Wall time: {sol.wall_time:.3f}s")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    instance = load_instance(args.dataset)
    unknown = [name for name in args.heroes if name not in instance.hero_index]
    if unknown:
        print(f"error: unknown heroes: {', '.join(unknown)}", file=sys.stderr)
        return EXIT_DATA
    evaluation = evaluate_team(instance, [instance.hero_index[name] for name in args.heroes])
    if args.format == "json":
        _emit(
            {
                "team": [instance.heroes[i].name for i in evaluation.team],
                "objective": evaluation.total,
                "breakdown": breakdown_rows(instance, evaluation),
            }
        )
    else:
        sys.stdout.write(render_breakdown(instance, evaluation))
    return EXIT_OK


def cmd_export(args) -> int:
    instance = load_instance(args.dataset)
    if args.what == "lp":
        text = ilp.export_lp(ilp.build_model(instance))
    elif args.what == "dot-basic":
        text = to_dot(du_to_mewc_basic(instance))
    elif args.what == "dot-pairs":
        text = to_dot(du_to_mewc_pairs(instance))
    else:
        if args.q is None:
            raise FormatError("dot-general needs --q")
        text = to_dot(du_to_mewc_general(instance, args.q))
    Path(args.out).write_bytes(text.encode("utf-8"))
    if args.format == "json":
        _emit({"written": str(args.out), "bytes": len(text.encode("utf-8"))})
    else:
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify.run_verify(args.seed, args.cases, workers=args.workers)
    if args.format == "json":
        _emit(
            {
                "seed": report.seed,
                "cases": report.cases,
                "passed": report.passed,
                "failed": report.failed,
                "reductions": report.reductions,
                "failures": report.failures,
            }
        )
    else:
        print(f"verify seed={report.seed} cases={report.cases}: {report.passed} passed, {report.failed} failed")
        if report.reductions:
            applied = ", ".join(f"{k}: {v}" for k, v in sorted(report.reductions.items()))
            print(f"reduction checks applied: {applied}")
        for failure in report.failures:
            print(f"FAIL seed={failure['seed']} case={failure['case']}", file=sys.stderr)
            for line in failure["failures"]:
                print(f"  {line}", file=sys.stderr)
            print(failure["instance"], file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def read_edge_list(path) -> tuple[int, list[tuple[int, int]]]:
    """``u v`` per line, 0-based, ``#`` comments; a lone ``v`` declares an isolated vertex."""
    vertices = -1
    edges = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            ids = [int(p) for p in parts]
        except ValueError as exc:
            raise FormatError("expected integer vertex ids", line=lineno) from exc
        if len(ids) not in (1, 2) or min(ids) < 0:
            raise FormatError("expected 'u v' or 'v' with non-negative ids", line=lineno)
        vertices = max(vertices, *ids)
        if len(ids) == 2:
            edges.append((ids[0], ids[1]))
    return vertices + 1, edges


def cmd_reduce_dks(args) -> int:
    count, edges = read_edge_list(args.graph)
    instance = dks_to_du(DksInstance(count, tuple(edges), args.k), args.base_power, args.edge_bonus)
    save_instance(instance, args.out)
    if args.format == "json":
        _emit({"written": str(args.out), "heroes": instance.n, "alliances": instance.t})
    else:
        print(f"wrote {args.out}: {instance.n} heroes, {instance.t} alliances, team cap {instance.team_cap}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--time-limit", type=float, default=None, help="seconds")

    parser = argparse.ArgumentParser(prog="teamopt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="optimal team by branch and bound")
    p.add_argument("dataset")
    p.add_argument("--cap", type=int, default=None, help="override the dataset team cap")
    p.add_argument("--node-limit", type=int, default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("evaluate", parents=[common], help="objective and breakdown of a given team")
    p.add_argument("dataset")
    p.add_argument("heroes", nargs="*", help="hero names (quote names containing spaces)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("export", parents=[common], help="write the LP model or a clique reduction graph")
    p.add_argument("dataset")
    p.add_argument("what", choices=("lp", "dot-basic", "dot-pairs", "dot-general"))
    p.add_argument("out")
    p.add_argument("--q", type=int, default=None, help="alliance size for dot-general")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", parents=[common], help="cross-check solvers and reductions on random instances")
    p.add_argument("--cases", type=int, default=200)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce-dks", parents=[common], help="densest k-subgraph edge list to a dataset")
    p.add_argument("graph")
    p.add_argument("k", type=int)
    p.add_argument("out")
    p.add_argument("--base-power", type=float, default=1.0)
    p.add_argument("--edge-bonus", type=float, default=1.0)
    p.set_defaults(func=cmd_reduce_dks)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_DATA
    try:
        return args.func(args)
    except LimitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except TeamTooLarge as exc:
        print(f"error: TeamTooLarge: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DataError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
