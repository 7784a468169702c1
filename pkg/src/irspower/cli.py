"""Command-line entry point: `irspower {sweep,single,bound}`.

Exit codes: 0 on success, 1 for configuration errors, 2 when every trial of
some sweep cell failed numerically.
"""

import argparse
import os
import sys

from irspower.alternating import run_alternating
from irspower.bound import scenario_bound
from irspower.channel import draw_realization
from irspower.harness import (
    ConfigError,
    ResultRow,
    SweepSpec,
    read_config,
    run_sweep,
    trial_rng,
    write_csv,
    write_trace_csv,
)
from irspower.units import watts_to_dbm


def build_parser():
    parser = argparse.ArgumentParser(prog="irspower", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, desc in (
        ("sweep", "run the Monte-Carlo sweep defined by the config"),
        ("single", "run one alternating optimization and dump its iterations"),
        ("bound", "print the closed-form average-power floor"),
    ):
        cmd = sub.add_parser(name, help=desc)
        cmd.add_argument("--config", required=True, help="flat key=value scenario file")
        cmd.add_argument("--out", help="output CSV path")
        cmd.add_argument("--seed", type=int, help="override the config seed")
        cmd.add_argument("--trials", type=int, help="override the trial count")
        cmd.add_argument("--threads", type=int, default=1, help="worker processes for trials")
    return parser


def _load(args):
    config, spec = read_config(args.config)
    if args.seed is not None:
        config = config.replace(seed=args.seed)
    if args.trials is not None:
        config = config.replace(trials=args.trials)
        spec = SweepSpec(spec.sweep_variable, spec.sweep_values, spec.methods, args.trials)
    return config, spec


def cmd_sweep(args):
    config, spec = _load(args)
    rows = run_sweep(config, spec, threads=args.threads)
    if args.out:
        write_csv(rows, args.out)
    for row in rows:
        print(f"{row.sweep_variable}={row.sweep_value} {row.method}: "
              f"{row.mean_power_dbm:.3f} dBm over {row.trials} trials")
    return 2 if any(row.trials == 0 for row in rows) else 0


def cmd_single(args):
    config, _ = _load(args)
    rng = trial_rng(config.seed, getattr(config, "n_irs_units"), "optimized", 0)
    ch = draw_realization(config, rng)
    trace = run_alternating(config, ch, rng)
    print(f"terminated: {trace.termination.value} after {trace.iterations} iterations")
    print(f"final power: {watts_to_dbm(trace.final_power):.4f} dBm")
    if args.out:
        row = ResultRow(
            sweep_variable="n_irs_units", sweep_value=config.n_irs_units, method="optimized",
            mean_power_dbm=float(watts_to_dbm(trace.final_power)), std_power_dbm=0.0,
            trials=1, mean_iterations=float(trace.iterations), seed=config.seed,
        )
        write_csv([row], args.out)
        stem, ext = os.path.splitext(args.out)
        trace_path = f"{stem}.trace{ext or '.csv'}"
        write_trace_csv(trace, trace_path)
        print(f"wrote {args.out} and {trace_path}")
    return 0


def cmd_bound(args):
    config, _ = _load(args)
    report = scenario_bound(config)
    print(f"bound: {watts_to_dbm(report.bound_power_watts):.4f} dBm "
          f"({report.bound_power_watts:.6e} W)")
    for i, (q, terms) in enumerate(zip(report.q_factors, report.term_breakdown)):
        print(f"user {i}: Q = {q:.6e}")
        for name, value in terms.items():
            print(f"    {name} = {value:.6e}")
    if args.out:
        row = ResultRow(
            sweep_variable="n_irs_units", sweep_value=config.n_irs_units, method="lower_bound",
            mean_power_dbm=float(watts_to_dbm(report.bound_power_watts)), std_power_dbm=0.0,
            trials=1, mean_iterations=0.0, seed=config.seed,
        )
        write_csv([row], args.out)
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            return cmd_sweep(args)
        if args.command == "single":
            return cmd_single(args)
        return cmd_bound(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
