#!/usr/bin/env python3
"""Transmit power vs. number of users, all methods.

    python3 scripts/run_k_sweep.py --out results/k_sweep.csv --trials 100
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from irspower.config import ScenarioConfig
from irspower.harness import SweepSpec, run_sweep, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="k_sweep.csv")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=20240811)
    ap.add_argument("--m-antennas", type=int, default=8)
    ap.add_argument("--n-irs-units", type=int, default=16)
    ap.add_argument("--values", default="1,2,3,4,5")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    config = ScenarioConfig(
        m_antennas=args.m_antennas, n_irs_units=args.n_irs_units,
        seed=args.seed, trials=args.trials,
    )
    spec = SweepSpec(
        sweep_variable="k_users",
        sweep_values=tuple(int(v) for v in args.values.split(",")),
        methods=("optimized", "random_irs", "without_irs", "lower_bound"),
        trials=args.trials,
    )
    rows = run_sweep(config, spec, threads=args.threads)
    write_csv(rows, args.out)
    for row in rows:
        print(f"K={row.sweep_value:2d} {row.method:>12}: {row.mean_power_dbm:8.3f} dBm")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
