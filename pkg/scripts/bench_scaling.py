"""Work and wall-clock scaling of both solvers on seeded random families.

Prints one CSV row per (solver, n, seed): guards, bound, seconds, counted
operations and operations per vertex.

    python scripts/bench_scaling.py --sizes 1000,10000,100000 --seeds 3
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from edgeguard.counters import OpCounter
from edgeguard.generators import gen_random_quad_2deg, gen_random_stacked
from edgeguard.quad_guard import guard_quadrangulation
from edgeguard.stacked_guard import guard_stacked


@dataclass(frozen=True)
class ScalingConfig:
    sizes: tuple[int, ...] = (1_000, 10_000, 100_000)
    seeds: int = 3


SOLVERS = {
    "quad": (gen_random_quad_2deg, lambda g, c: guard_quadrangulation(g, c), lambda n: n // 3),
    "stacked": (gen_random_stacked, lambda g, c: guard_stacked(g, c)[0], lambda n: 2 * n // 7),
}


def run(cfg: ScalingConfig) -> None:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["solver", "n", "seed", "guards", "bound", "seconds", "ops", "ops_per_n"])
    for name, (gen, solve, bound) in SOLVERS.items():
        for n in cfg.sizes:
            for seed in range(cfg.seeds):
                g = gen(n, seed)
                counter = OpCounter()
                t0 = time.perf_counter()
                guards = solve(g, counter)
                secs = time.perf_counter() - t0
                w.writerow([name, n, seed, len(guards), bound(n), f"{secs:.3f}",
                            counter.total, f"{counter.total / n:.3f}"])


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default="1000,10000,100000")
    p.add_argument("--seeds", type=int, default=3)
    a = p.parse_args()
    run(ScalingConfig(tuple(int(s) for s in a.sizes.split(",")), a.seeds))


if __name__ == "__main__":
    main()
