#!/usr/bin/env python3
"""Run the desk-scale comparison under both targeting policies and print the tables.

Outputs land in <out>/<target>/ (instances.csv, timings.csv, summary.txt, summary.csv).
"""

import argparse
import logging
import time
from pathlib import Path

from bordamanip.exact import Budget
from bordamanip.harness import DESK_M, DESK_P, ExperimentConfig, run_experiment, write_outputs


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--instances", type=int, default=100)
    ap.add_argument("--targets", nargs="+", choices=("worst", "last"), default=["worst", "last"])
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")

    for target in args.targets:
        cfg = ExperimentConfig(
            m_values=DESK_M, p_values=DESK_P, instances=args.instances,
            models=("uniform", "urn"), seed=args.seed, target=target,
            budget=Budget(), workers=args.workers,
        )
        t0 = time.perf_counter()
        results, dup = run_experiment(cfg)
        paths = write_outputs(args.out / target, cfg, results, dup)
        print(f"=== target={target} ({time.perf_counter() - t0:.1f} s) ===")
        print(paths["summary"].read_text())


if __name__ == "__main__":
    main()
