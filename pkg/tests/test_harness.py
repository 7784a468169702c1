
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irspower.config import ScenarioConfig
from irspower.harness import (
    CSV_HEADER,
    ConfigError,
    SweepSpec,
    read_config,
    run_sweep,
    write_config,
    write_csv,
)


def tiny_config(**kw):
    base = dict(m_antennas=2, n_irs_units=2, k_users=1, trials=2, candidates_c=50, seed=9)
    base.update(kw)
    return ScenarioConfig(**base)


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(sweep_variable="bogus")
    with pytest.raises(ValueError):
        SweepSpec(sweep_values=())
    with pytest.raises(ValueError):
        SweepSpec(sweep_values=(8, 8))
    with pytest.raises(ValueError):
        SweepSpec(methods=("nope",))


def test_run_sweep_rows_and_determinism(tmp_path):
    cfg = tiny_config()
    spec = SweepSpec(sweep_variable="n_irs_units", sweep_values=(2, 4), methods=("optimized", "lower_bound"), trials=2)
    rows1 = run_sweep(cfg, spec)
    rows2 = run_sweep(cfg, spec)
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(rows1, p1)
    write_csv(rows2, p2)
    assert p1.read_bytes() == p2.read_bytes()
    lines = p1.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 1 + 2 * 2
    for row in rows1:
        assert row.trials >= 1
        assert row.std_power_dbm >= 0.0


def test_run_sweep_parallel_matches_serial(tmp_path):
    cfg = tiny_config()
    spec = SweepSpec(sweep_variable="k_users", sweep_values=(1, 2), methods=("without_irs",), trials=3)
    serial = run_sweep(cfg, spec, threads=1)
    parallel = run_sweep(cfg, spec, threads=2)
    a, b = tmp_path / "s.csv", tmp_path / "p.csv"
    write_csv(serial, a)
    write_csv(parallel, b)
    assert a.read_bytes() == b.read_bytes()


def test_lower_bound_rows_deterministic():
    cfg = tiny_config()
    spec = SweepSpec(sweep_values=(4, 8), methods=("lower_bound",), trials=1)
    rows = run_sweep(cfg, spec)
    assert all(r.method == "lower_bound" for r in rows)
    assert rows[0].mean_power_dbm > rows[1].mean_power_dbm  # more units, lower floor


def test_empty_rows_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    write_csv([], path)
    assert path.read_text() == CSV_HEADER + "\n"


def test_config_round_trip(tmp_path):
    cfg = tiny_config(gamma_db=2.5, epsilon=3e-4, mu_placement="random", d0_gain_db=-28.0)
    spec = SweepSpec(sweep_variable="m_antennas", sweep_values=(2, 4, 8), methods=("optimized",), trials=2)
    path = tmp_path / "scenario.cfg"
    write_config(cfg, spec, path)
    cfg2, spec2 = read_config(path)
    assert cfg2 == cfg
    assert spec2 == spec


@settings(max_examples=20, deadline=None)
@given(
    st.integers(min_value=1, max_value=16),
    st.integers(min_value=0, max_value=32),
    st.integers(min_value=1, max_value=4),
    st.floats(min_value=-5.0, max_value=20.0, allow_nan=False),
    st.floats(min_value=1e-6, max_value=0.5, allow_nan=False),
    st.integers(min_value=0, max_value=2**62),
)
def test_config_round_trip_randomized(tmp_path_factory, m, n, k, gamma_db, epsilon, seed):
    cfg = ScenarioConfig(m_antennas=m, n_irs_units=n, k_users=k, gamma_db=gamma_db, epsilon=epsilon, seed=seed)
    spec = SweepSpec()
    path = tmp_path_factory.mktemp("cfg") / "roundtrip.cfg"
    write_config(cfg, spec, path)
    cfg2, _ = read_config(path)
    assert cfg2 == cfg


def test_unknown_key_rejected(tmp_path):
    cfg = tiny_config()
    path = tmp_path / "bad.cfg"
    write_config(cfg, SweepSpec(), path)
    with open(path, "a") as fh:
        fh.write("wobble = 3\n")
    with pytest.raises(ConfigError, match="wobble"):
        read_config(path)


def test_missing_key_named(tmp_path):
    cfg = tiny_config()
    path = tmp_path / "missing.cfg"
    write_config(cfg, SweepSpec(), path)
    kept = [l for l in path.read_text().splitlines() if not l.startswith("gamma_db")]
    path.write_text("\n".join(kept) + "\n")
    with pytest.raises(ConfigError, match="gamma_db"):
        read_config(path)


def test_malformed_line_diagnoses_location(tmp_path):
    path = tmp_path / "line.cfg"
    path.write_text("m_antennas 4\n")
    with pytest.raises(ConfigError, match=":1"):
        read_config(path)


def test_comments_and_blanks_ignored(tmp_path):
    cfg = tiny_config()
    path = tmp_path / "comments.cfg"
    write_config(cfg, SweepSpec(), path)
    text = "# leading comment\n\n" + path.read_text() + "\n# trailing\n"
    path.write_text(text)
    cfg2, _ = read_config(path)
    assert cfg2 == cfg


def test_failed_trials_flagged_not_fatal(monkeypatch, tmp_path):
    # a numerically failing method must flag the cell, not abort the sweep
    import irspower.harness as harness
    from irspower.exceptions import NumericalFailureError

    def always_fails(config, ch, rng):
        raise NumericalFailureError("synthetic failure")

    monkeypatch.setattr(harness, "baseline_without_irs", always_fails)
    cfg = tiny_config()
    spec = SweepSpec(sweep_values=(2,), methods=("without_irs", "lower_bound"), trials=2)
    rows = run_sweep(cfg, spec)
    flagged = [r for r in rows if r.method == "without_irs"]
    assert flagged[0].trials == 0
    assert np.isnan(flagged[0].mean_power_dbm)
    bound_row = [r for r in rows if r.method == "lower_bound"][0]
    assert np.isfinite(bound_row.mean_power_dbm)


def test_dbm_conversion_on_rows():
    cfg = tiny_config()
    spec = SweepSpec(sweep_values=(2,), methods=("lower_bound",), trials=1)
    row = run_sweep(cfg, spec)[0]
    from irspower.bound import scenario_bound

    watts = scenario_bound(cfg.replace(n_irs_units=2)).bound_power_watts
    assert row.mean_power_dbm == pytest.approx(10.0 * np.log10(watts * 1000.0), rel=1e-12)
