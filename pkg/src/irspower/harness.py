"""Monte-Carlo sweeps over array sizes and user counts, with CSV persistence.

Each (sweep value, method, trial) cell gets its own deterministically derived
random stream, so results are byte-identical regardless of how many workers
run the trials.  Powers are averaged in watts and only then converted to dBm.
"""

import concurrent.futures
import dataclasses
from dataclasses import dataclass, field

import numpy as np

from irspower.alternating import baseline_random_irs, baseline_without_irs, run_alternating
from irspower.bound import scenario_bound
from irspower.channel import draw_realization
from irspower.config import ScenarioConfig
from irspower.exceptions import InfeasibleBeamformingError, NumericalFailureError
from irspower.units import watts_to_dbm

CSV_HEADER = "sweep_variable,sweep_value,method,mean_power_dbm,std_power_dbm,trials,mean_iterations,seed"
TRACE_HEADER = "iteration,power_dbm,f_ow,f_ophi"

METHODS = ("optimized", "random_irs", "without_irs", "lower_bound")
SWEEP_VARIABLES = ("n_irs_units", "k_users", "m_antennas")

_CONFIG_FIELDS = {f.name: f for f in dataclasses.fields(ScenarioConfig)}


@dataclass
class SweepSpec:
    sweep_variable: str = "n_irs_units"
    sweep_values: tuple = (8, 16, 32)
    methods: tuple = METHODS
    trials: int = 100

    def __post_init__(self):
        if self.sweep_variable not in SWEEP_VARIABLES:
            raise ValueError(f"sweep_variable must be one of {SWEEP_VARIABLES}")
        values = tuple(int(v) for v in self.sweep_values)
        if not values or any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("sweep_values must be non-empty and strictly increasing")
        self.sweep_values = values
        methods = tuple(self.methods)
        unknown = [m for m in methods if m not in METHODS]
        if unknown:
            raise ValueError(f"unknown methods {unknown}; choose from {METHODS}")
        self.methods = methods
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass
class ResultRow:
    sweep_variable: str
    sweep_value: int
    method: str
    mean_power_dbm: float
    std_power_dbm: float
    trials: int
    mean_iterations: float
    seed: int


def trial_rng(seed, sweep_value, method, trial):
    """Independent stream per (seed, sweep value, method, trial)."""
    ss = np.random.SeedSequence([int(seed), int(sweep_value), METHODS.index(method), int(trial)])
    return np.random.default_rng(ss)


def _run_trial(config, sweep_variable, sweep_value, method, trial):
    """One Monte-Carlo trial; returns (power_watts, iterations) or None on failure."""
    cell_config = config.replace(**{sweep_variable: int(sweep_value)})
    rng = trial_rng(config.seed, sweep_value, method, trial)
    ch = draw_realization(cell_config, rng)
    try:
        if method == "optimized":
            trace = run_alternating(cell_config, ch, rng)
            return trace.final_power, trace.iterations
        if method == "random_irs":
            return baseline_random_irs(cell_config, ch, rng).power, 1
        if method == "without_irs":
            return baseline_without_irs(cell_config, ch, rng).power, 1
    except (NumericalFailureError, InfeasibleBeamformingError):
        return None
    raise ValueError(f"unknown method {method!r}")


def _aggregate(config, spec, sweep_value, method, outcomes):
    ok = [o for o in outcomes if o is not None]
    if not ok:
        return ResultRow(
            sweep_variable=spec.sweep_variable, sweep_value=int(sweep_value), method=method,
            mean_power_dbm=float("nan"), std_power_dbm=float("nan"), trials=0,
            mean_iterations=float("nan"), seed=config.seed,
        )
    powers = np.array([o[0] for o in ok])
    iters = np.array([o[1] for o in ok], dtype=float)
    dbm = watts_to_dbm(powers)
    return ResultRow(
        sweep_variable=spec.sweep_variable,
        sweep_value=int(sweep_value),
        method=method,
        mean_power_dbm=float(watts_to_dbm(powers.mean())),
        std_power_dbm=float(np.std(dbm, ddof=1)) if dbm.size > 1 else 0.0,
        trials=len(ok),
        mean_iterations=float(iters.mean()),
        seed=config.seed,
    )


def run_sweep(config, spec, threads=1):
    """All (sweep value, method) cells of the spec; returns ordered ResultRows.

    The closed-form floor needs no trials; the Monte-Carlo methods run
    ``spec.trials`` independent draws each, optionally across processes.
    Rows with ``trials == 0`` flag cells whose every trial failed numerically.
    """
    rows = []
    tasks = []
    for value in spec.sweep_values:
        for method in spec.methods:
            if method == "lower_bound":
                continue
            for trial in range(spec.trials):
                tasks.append((value, method, trial))

    outcomes = {}
    if threads > 1 and tasks:
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
            futures = {
                pool.submit(_run_trial, config, spec.sweep_variable, v, m, t): (v, m, t)
                for v, m, t in tasks
            }
            for fut in concurrent.futures.as_completed(futures):
                outcomes[futures[fut]] = fut.result()
    else:
        for v, m, t in tasks:
            outcomes[(v, m, t)] = _run_trial(config, spec.sweep_variable, v, m, t)

    for value in spec.sweep_values:
        for method in spec.methods:
            if method == "lower_bound":
                cell_config = config.replace(**{spec.sweep_variable: int(value)})
                report = scenario_bound(cell_config)
                rows.append(ResultRow(
                    sweep_variable=spec.sweep_variable, sweep_value=int(value), method=method,
                    mean_power_dbm=float(watts_to_dbm(report.bound_power_watts)),
                    std_power_dbm=0.0, trials=1, mean_iterations=0.0, seed=config.seed,
                ))
            else:
                cell = [outcomes[(value, method, t)] for t in range(spec.trials)]
                rows.append(_aggregate(config, spec, value, method, cell))
    return rows


def format_row(row):
    return (
        f"{row.sweep_variable},{row.sweep_value},{row.method},"
        f"{row.mean_power_dbm:.10g},{row.std_power_dbm:.10g},{row.trials},"
        f"{row.mean_iterations:.10g},{row.seed}"
    )


def write_csv(rows, path):
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(format_row(row) + "\n")


def write_trace_csv(trace, path):
    """Per-iteration dump of one alternating run."""
    with open(path, "w") as fh:
        fh.write(TRACE_HEADER + "\n")
        for i, power in enumerate(trace.powers):
            f_ow = trace.f_ow_values[i] if i < len(trace.f_ow_values) else float("nan")
            f_ophi = trace.f_ophi_values[i] if i < len(trace.f_ophi_values) else float("nan")
            fh.write(f"{i + 1},{watts_to_dbm(power):.10g},{f_ow:.10g},{f_ophi:.10g}\n")


class ConfigError(ValueError):
    """Malformed scenario/sweep configuration file."""


def _parse_scalar(raw, target_type):
    if target_type is int:
        return int(raw)
    if target_type is float:
        return float(raw)
    return raw


def read_config(path):
    """Parse a flat `key = value` file into (ScenarioConfig, SweepSpec).

    Lines starting with `#` are comments.  Every ScenarioConfig field must be
    present; the sweep keys are optional and default sensibly.  Unknown keys
    are an error naming the key and line.
    """
    scenario_kwargs = {}
    sweep_kwargs = {}
    sweep_fields = {f.name for f in dataclasses.fields(SweepSpec)}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{lineno}: expected `key = value`, got {stripped!r}")
            key, _, raw = stripped.partition("=")
            key = key.strip()
            raw = raw.split("#", 1)[0].strip()
            try:
                if key in ("bs_position", "irs_position"):
                    scenario_kwargs[key] = tuple(float(v) for v in raw.split(","))
                elif key == "sweep_values":
                    sweep_kwargs[key] = tuple(int(v) for v in raw.split(","))
                elif key == "methods":
                    sweep_kwargs[key] = tuple(v.strip() for v in raw.split(","))
                elif key == "trials":  # shared by the scenario and the sweep
                    scenario_kwargs[key] = sweep_kwargs[key] = int(raw)
                elif key in sweep_fields:
                    sweep_kwargs[key] = _parse_scalar(raw, str)
                elif key in _CONFIG_FIELDS:
                    ftype = _CONFIG_FIELDS[key].type
                    target = int if ftype is int or ftype == "int" else float if ftype is float or ftype == "float" else str
                    scenario_kwargs[key] = _parse_scalar(raw, target)
                else:
                    raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            except ConfigError:
                raise
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: invalid value for {key!r}: {exc}") from exc
    missing = sorted(set(_CONFIG_FIELDS) - set(scenario_kwargs))
    if missing:
        raise ConfigError(f"{path}: missing required key(s): {', '.join(missing)}")
    try:
        config = ScenarioConfig(**scenario_kwargs)
        sweep_kwargs.setdefault("trials", config.trials)
        spec = SweepSpec(**sweep_kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return config, spec


def write_config(config, spec, path):
    """Inverse of read_config for the fields it understands."""
    lines = []
    for f in dataclasses.fields(ScenarioConfig):
        value = getattr(config, f.name)
        if f.name in ("bs_position", "irs_position"):
            value = ",".join(repr(v) for v in value)
        lines.append(f"{f.name} = {value}")
    lines.append(f"sweep_variable = {spec.sweep_variable}")
    lines.append(f"sweep_values = {','.join(str(v) for v in spec.sweep_values)}")
    lines.append(f"methods = {','.join(spec.methods)}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
