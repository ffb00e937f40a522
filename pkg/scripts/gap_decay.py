#!/usr/bin/env python3
"""Sweep the operator-norm / regular-norm ratio on the sign-matrix family.

For A = B = H_2^{(x) m} with 2->2 norms the two-sided multiplication
superoperator T |-> ATB has operator norm 2^m but regular norm 4^m, so the
ratio rho halves with every tensor power — the two norms are inequivalent
in any dimension-free sense.  This script measures the decay and, for
contrast, shows that positive factors exhibit no gap at all (rho = 1).

Usage:
    python scripts/gap_decay.py --max-m 5 --samples 300 --seed 0
"""

import argparse
import sys
from dataclasses import dataclass

from rieszops import (
    NormAssignment,
    RegularOperator,
    gap_report,
    hadamard_tensor_power,
)


@dataclass(frozen=True)
class SweepConfig:
    max_m: int = 5
    samples: int = 300
    seed: int = 0

    def __post_init__(self):
        if self.max_m < 1:
            raise ValueError("need at least one tensor power")


def run_sweep(config: SweepConfig) -> list:
    assignment = NormAssignment.uniform(2.0)
    rows = []
    for m in range(1, config.max_m + 1):
        H = hadamard_tensor_power(m)
        report = gap_report(
            H, H, assignment, samples=config.samples, seed=config.seed
        )
        rows.append(
            {
                "m": m,
                "size": 2**m,
                "operator_side": report.details["operator_side"],
                "regular_side": report.details["regular_side"],
                "rho": report.details["rho"],
                "predicted": 2.0**-m,
            }
        )
    return rows


def positive_control(config: SweepConfig) -> float:
    """rho for a positive pair: the gap closes because |A| = A."""
    A = RegularOperator.from_rows([[2, 1], [0, 3]])
    report = gap_report(
        A, A, NormAssignment.uniform(2.0), samples=config.samples, seed=config.seed
    )
    return report.details["rho"]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-m", type=int, default=5)
    parser.add_argument("--samples", type=int, default=300)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    config = SweepConfig(max_m=args.max_m, samples=args.samples, seed=args.seed)

    rows = run_sweep(config)
    print(f"{'m':>3} {'size':>5} {'operator':>12} {'regular':>12} "
          f"{'rho':>10} {'2^-m':>10}")
    for row in rows:
        print(
            f"{row['m']:>3} {row['size']:>5} {row['operator_side']:>12.6f} "
            f"{row['regular_side']:>12.2f} {row['rho']:>10.6f} "
            f"{row['predicted']:>10.6f}"
        )
    print(f"\npositive-factor control: rho = {positive_control(config):.6f} "
          "(no gap when the factors are positive)")
    worst = max(abs(r["rho"] - r["predicted"]) for r in rows)
    print(f"max |rho - 2^-m| = {worst:.2e}")
    return 0 if worst < 1e-6 else 1


if __name__ == "__main__":
    sys.exit(main())
