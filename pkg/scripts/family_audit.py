"""Audit every graph family against its brute-force oracle.

Runs the verification harnesses over a configurable battery, prints a
one-line verdict per family, and writes the full JSON reports to an
output directory.  The subdivided family at odd target lengths is
expected to report violations; see the README known-limitations
section for the shape that causes them.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from congestlab.family_checks import (
    FamilyCheckReport,
    cycle_harness,
    diamond_harness_from_seed,
    four_cycle_harness,
    long_cycle_harness,
    verify_family_conditions,
)


@dataclass(frozen=True)
class AuditConfig:
    samples: int = 120
    seed: int = 0
    four_cycle_sizes: tuple[int, ...] = (2, 3)
    subdivided_lengths: tuple[int, ...] = (5, 6, 7, 8)
    long_cycle_orders: tuple[int, ...] = (1, 2)
    diamond_sizes: tuple[int, ...] = (4, 16)
    out_dir: Path = field(default_factory=lambda: Path("reports"))


def _audit(config: AuditConfig) -> list[tuple[str, FamilyCheckReport]]:
    batches = []
    for n in config.four_cycle_sizes:
        batches.append((f"four-cycle n={n}", four_cycle_harness(n)))
    for k in config.subdivided_lengths:
        batches.append((f"subdivided n=2 k={k}", cycle_harness(2, k)))
    for ell in config.long_cycle_orders:
        batches.append((f"long-cycle n=2 ell={ell}", long_cycle_harness(2, ell)))
    for n in config.diamond_sizes:
        batches.append((f"diamond n={n} seed=0", diamond_harness_from_seed(n, 0)))
    return [
        (name, verify_family_conditions(h, samples=config.samples, seed=config.seed))
        for name, h in batches
    ]


def main(argv: list[str] | None = None) -> int:
    defaults = AuditConfig()
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=defaults.samples)
    parser.add_argument("--seed", type=int, default=defaults.seed)
    parser.add_argument("--out-dir", type=Path, default=defaults.out_dir)
    args = parser.parse_args(argv)
    config = AuditConfig(samples=args.samples, seed=args.seed, out_dir=args.out_dir)

    config.out_dir.mkdir(parents=True, exist_ok=True)
    all_passed = True
    for name, report in _audit(config):
        verdict = "ok" if report.passed else "VIOLATIONS"
        mode = "exhaustive" if report.exhaustive else f"{report.pairs_checked} pairs"
        print(f"{name:28s} {verdict:10s} ({mode})")
        slug = name.replace(" ", "_").replace("=", "")
        (config.out_dir / f"{slug}.json").write_bytes(report.to_json_bytes())
        all_passed = all_passed and report.passed
    print(f"reports written to {config.out_dir}/")
    return 0 if all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
