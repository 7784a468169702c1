#!/usr/bin/env python3
"""Regenerate the renderer's fixture CSVs from the acceptance-suite sweeps.

These are the exact sweeps of acceptance criteria 5 and 7 (same seeds, same
trial counts), so reruns reproduce the committed fixtures byte for byte.
Takes roughly ten minutes single-core.
"""

import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from irspower.config import ScenarioConfig
from irspower.harness import SweepSpec, run_sweep, write_csv

ACCEPT_SEED = 20240811
FIXTURES = ROOT / "frontend" / "fixtures"


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    base = ScenarioConfig(m_antennas=8, n_irs_units=16, k_users=1, seed=ACCEPT_SEED, trials=100)

    sweeps = {
        "n_sweep_k1.csv": SweepSpec(
            sweep_variable="n_irs_units", sweep_values=(8, 16, 32, 64),
            methods=("optimized", "lower_bound"), trials=100,
        ),
        "m_sweep.csv": SweepSpec(
            sweep_variable="m_antennas", sweep_values=(4, 8, 16), methods=("optimized",), trials=100,
        ),
        "k_sweep.csv": SweepSpec(
            sweep_variable="k_users", sweep_values=(1, 2, 3), methods=("optimized",), trials=100,
        ),
    }
    for name, spec in sweeps.items():
        rows = run_sweep(base, spec)
        out = FIXTURES / name
        write_csv(rows, out)
        print(f"wrote {out}")


if __name__ == "__main__":
    main()
