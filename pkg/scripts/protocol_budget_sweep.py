"""Measure protocol payloads against their announced budgets.

Sweeps random graphs over a size and density grid, runs both listing
protocols on a random half split, and prints the worst observed
payload-to-budget ratio per cell together with the round ceiling the
budget implies for a bandwidth-limited simulator.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass

from congestlab.graphs import crossing_edges, random_graph
from congestlab.twoparty import (
    cycle_listing_protocol,
    diamond_listing_protocol,
    limitation_bound_report,
)


@dataclass(frozen=True)
class SweepConfig:
    sizes: tuple[int, ...] = (24, 48, 64)
    densities: tuple[float, ...] = (0.05, 0.15, 0.3)
    cycle_length: int = 4
    trials: int = 5
    seed: int = 0


def _cell(config: SweepConfig, n: int, density: float) -> dict[str, float]:
    worst = {"cycles": 0.0, "diamonds": 0.0, "round_ceiling": 0.0}
    for trial in range(config.trials):
        rng = random.Random(f"{config.seed}:{n}:{density}:{trial}")
        g = random_graph(n, density, rng)
        side = frozenset(rng.sample(range(n), n // 2))
        cut = len(crossing_edges(g, side))
        if cut == 0:
            continue
        cyc = cycle_listing_protocol(g, side, config.cycle_length)
        dia = diamond_listing_protocol(g, side)
        worst["cycles"] = max(worst["cycles"], cyc.transcript.payload_bits() / cyc.bound_bits)
        worst["diamonds"] = max(worst["diamonds"], dia.transcript.payload_bits() / dia.bound_bits)
        ceiling = limitation_bound_report(n, cut, "cycle")["round_ceiling"]
        worst["round_ceiling"] = max(worst["round_ceiling"], ceiling)
    return worst


def main(argv: list[str] | None = None) -> int:
    defaults = SweepConfig()
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=defaults.trials)
    parser.add_argument("--seed", type=int, default=defaults.seed)
    parser.add_argument("--cycle-length", type=int, default=defaults.cycle_length)
    args = parser.parse_args(argv)
    config = SweepConfig(
        trials=args.trials, seed=args.seed, cycle_length=args.cycle_length
    )

    print(f"{'n':>4} {'density':>8} {'cycles':>8} {'diamonds':>9} {'rounds<=':>9}")
    for n in config.sizes:
        for density in config.densities:
            w = _cell(config, n, density)
            print(
                f"{n:>4} {density:>8.2f} {w['cycles']:>8.3f} "
                f"{w['diamonds']:>9.3f} {w['round_ceiling']:>9.0f}"
            )
    print("cycles/diamonds: worst payload as a fraction of the announced budget")
    return 0


if __name__ == "__main__":
    sys.exit(main())
