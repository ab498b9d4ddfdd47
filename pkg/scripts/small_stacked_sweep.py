"""Solver size versus exact optimum on every small stacked triangulation.

Enumerates all stacked triangulations up to n vertices (one per class of
embedding with its outer face) and tabulates, per n, how often the solver
matches the optimum, how far above it lands, and the worst case against
floor(2n/7).

    python scripts/small_stacked_sweep.py --max-n 10
"""

from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass

from edgeguard.generators import enumerate_stacked
from edgeguard.oracle import min_edge_guards
from edgeguard.stacked_guard import guard_stacked


@dataclass(frozen=True)
class SweepConfig:
    max_n: int = 10


def run(cfg: SweepConfig) -> None:
    levels = enumerate_stacked(cfg.max_n)
    print(f"{'n':>3}{'classes':>9}{'optimal':>9}{'gap hist':>24}{'max size':>10}{'bound':>7}")
    for n in range(4, cfg.max_n + 1):
        gaps = Counter()
        worst = 0
        for g in levels[n]:
            size = len(guard_stacked(g)[0])
            gaps[size - min_edge_guards(g, edge_limit=None).minimum] += 1
            worst = max(worst, size)
        hist = " ".join(f"+{k}:{v}" for k, v in sorted(gaps.items()))
        print(f"{n:>3}{len(levels[n]):>9}{gaps[0]:>9}{hist:>24}{worst:>10}{2 * n // 7:>7}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=10)
    run(SweepConfig(p.parse_args().max_n))


if __name__ == "__main__":
    main()
