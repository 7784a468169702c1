#!/usr/bin/env python3
"""Transmit power vs. number of reflecting units, all methods.

Writes the CSV consumed by the figure renderer; rerunning with the same seed
reproduces the file byte for byte.

    python3 scripts/run_n_sweep.py --out results/n_sweep.csv --trials 100 --k-users 1
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from irspower.config import ScenarioConfig
from irspower.harness import SweepSpec, run_sweep, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="n_sweep.csv")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=20240811)
    ap.add_argument("--m-antennas", type=int, default=8)
    ap.add_argument("--k-users", type=int, default=1)
    ap.add_argument("--values", default="8,16,32,64")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    config = ScenarioConfig(
        m_antennas=args.m_antennas, k_users=args.k_users,
        seed=args.seed, trials=args.trials,
    )
    spec = SweepSpec(
        sweep_variable="n_irs_units",
        sweep_values=tuple(int(v) for v in args.values.split(",")),
        methods=("optimized", "random_irs", "without_irs", "lower_bound"),
        trials=args.trials,
    )
    rows = run_sweep(config, spec, threads=args.threads)
    write_csv(rows, args.out)
    for row in rows:
        print(f"N={row.sweep_value:3d} {row.method:>12}: {row.mean_power_dbm:8.3f} dBm")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
