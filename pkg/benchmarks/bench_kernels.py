"""Compare the compiled and pure-Python search kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--caps 6 8 10]

Both kernels explore the same tree, so node counts must match; only the
wall time differs.
"""

from __future__ import annotations

import argparse
import statistics
import time
from pathlib import Path

from teamopt.instance import load_instance
from teamopt.solver import SearchOptions, available_backends, branch_and_bound

DATASET = Path(__file__).resolve().parents[1] / "data" / "underlords.json"


def timed(instance, backend, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        sol = branch_and_bound(instance, SearchOptions(backend=backend))
        times.append(time.perf_counter() - start)
    return sol, statistics.median(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--caps", type=int, nargs="+", default=[6, 8, 10])
    args = parser.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; only the Python kernel is available")
    roster = load_instance(DATASET)
    print(f"{'cap':>4} {'backend':>8} {'nodes':>9} {'median s':>10} {'objective':>12}")
    for cap in args.caps:
        instance = roster.with_team_cap(cap)
        results = {}
        for backend in backends:
            # the python kernel is slow; one run is enough to see the gap
            sol, secs = timed(instance, backend, args.repeat if backend == "cython" else 1)
            results[backend] = (sol, secs)
            print(f"{cap:>4} {backend:>8} {sol.nodes_explored:>9} {secs:>10.4f} {sol.objective:>12.6g}")
        if len(results) == 2:
            (a, ta), (b, tb) = results["cython"], results["python"]
            assert (a.team, a.objective, a.nodes_explored) == (b.team, b.objective, b.nodes_explored)
            print(f"{cap:>4} speedup  {tb / ta:>8.1f}x")


if __name__ == "__main__":
    main()
