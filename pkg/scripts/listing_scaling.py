"""Profile the distributed diamond listing as graphs grow.

For each size in the grid, runs the full pipeline on a seeded random
graph, checks the result against the brute-force oracle, and prints
how the decomposition and the phase accounting scale: cluster count,
peeled fraction, charged rounds, and the gathered-volume and
query-length headroom under their caps.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from congestlab.diamond_congest import list_induced_diamonds_congest
from congestlab.graphs import list_induced_diamonds, random_graph


@dataclass(frozen=True)
class ScalingConfig:
    sizes: tuple[int, ...] = (32, 64, 96, 128, 192)
    density: float = 0.2
    delta: Fraction = Fraction(5, 6)
    epsilon: Fraction = Fraction(1, 2)
    seed: int = 0
    check_oracle: bool = True


def main(argv: list[str] | None = None) -> int:
    defaults = ScalingConfig()
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--density", type=float, default=defaults.density)
    parser.add_argument("--delta", type=Fraction, default=defaults.delta)
    parser.add_argument("--epsilon", type=Fraction, default=defaults.epsilon)
    parser.add_argument("--seed", type=int, default=defaults.seed)
    parser.add_argument(
        "--skip-oracle", dest="check_oracle", action="store_false",
        help="skip the brute-force cross-check (for large sizes)",
    )
    args = parser.parse_args(argv)
    config = ScalingConfig(
        density=args.density,
        delta=args.delta,
        epsilon=args.epsilon,
        seed=args.seed,
        check_oracle=args.check_oracle,
    )

    header = (
        f"{'n':>4} {'found':>6} {'oracle':>6} {'clusters':>8} "
        f"{'peeled':>6} {'rounds':>6} {'gather':>13} {'query':>9} {'secs':>6}"
    )
    print(header)
    exit_code = 0
    for n in config.sizes:
        g = random_graph(n, config.density, random.Random(f"{config.seed}:{n}"))
        t0 = time.perf_counter()
        found, stats = list_induced_diamonds_congest(
            g, delta=config.delta, epsilon=config.epsilon, seed=config.seed
        )
        seconds = time.perf_counter() - t0
        oracle = len(list_induced_diamonds(g)) if config.check_oracle else None
        if oracle is not None and oracle != len(found):
            exit_code = 1
        print(
            f"{n:>4} {len(found):>6} {oracle if oracle is not None else '-':>6} "
            f"{stats.cluster_count:>8} {stats.outsider_count:>6} "
            f"{stats.heavy_charged_rounds_sum:>6} "
            f"{stats.gathered_entries_max:>5}/{stats.gathered_entries_cap:<7} "
            f"{stats.query_len_max:>3}/{stats.query_len_cap:<5} {seconds:>6.2f}"
        )
    print("gather and query columns show the observed maximum against its cap")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
