"""Exact minima of the lower-bound families next to the solver outputs.

    python scripts/lower_bound_families.py --qk 3 --stacked 4
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from edgeguard.generators import gen_qk, gen_stacked_lower
from edgeguard.oracle import min_edge_guards
from edgeguard.quad_guard import guard_quadrangulation
from edgeguard.stacked_guard import guard_stacked


@dataclass(frozen=True)
class FamilyConfig:
    max_qk: int = 3
    max_stacked: int = 4


def run(cfg: FamilyConfig) -> None:
    print(f"{'family':<16}{'n':>5}{'optimum':>9}{'solver':>8}{'bound':>7}{'secs':>8}")
    rows = [(f"Q_{k}", gen_qk(k), guard_quadrangulation, lambda n: n // 3)
            for k in range(1, cfg.max_qk + 1)]
    rows += [(f"stacked_lower({k})", gen_stacked_lower(k),
              lambda g: guard_stacked(g)[0], lambda n: 2 * n // 7)
             for k in range(2, cfg.max_stacked + 1, 2)]
    for name, g, solve, bound in rows:
        t0 = time.perf_counter()
        opt = min_edge_guards(g, edge_limit=None).minimum
        secs = time.perf_counter() - t0
        print(f"{name:<16}{g.n:>5}{opt:>9}{len(solve(g)):>8}{bound(g.n):>7}{secs:>8.2f}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--qk", type=int, default=3, help="largest k for Q_k")
    p.add_argument("--stacked", type=int, default=4, help="largest even k")
    a = p.parse_args()
    run(FamilyConfig(a.qk, a.stacked))


if __name__ == "__main__":
    main()
