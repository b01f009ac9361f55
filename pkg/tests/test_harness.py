"""Harness: KS statistics, deterministic artifacts, experiment plumbing, CLI."""

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kpzlab.errors import InvalidConfigError
from kpzlab.harness import (
    Ecdf,
    ExperimentConfig,
    ks_distance,
    ks_two_sample,
    read_config,
    run_experiment,
    write_csv,
    write_manifest,
)
from kpzlab.harness.cli import main


class TestEcdf:
    def test_limits(self):
        e = Ecdf.from_sample([1.0, 2.0, 3.0])
        assert e(-np.inf) == 0.0
        assert e(np.inf) == 1.0

    def test_right_continuous_step(self):
        e = Ecdf.from_sample([1.0, 2.0])
        assert e(1.0) == 0.5
        assert e(1.0 - 1e-12) == 0.0
        assert e(2.0) == 1.0

    def test_rejects_empty(self):
        with pytest.raises(InvalidConfigError):
            Ecdf.from_sample([])


class TestKsDistance:
    def test_single_sample_at_median(self):
        ks = ks_distance([0.0], lambda s: np.where(np.asarray(s) < 0, 0.3,
                                                   0.5))
        assert ks.d == pytest.approx(0.5)

    def test_constant_zero_cdf(self):
        ks = ks_distance([1.0, 2.0, 3.0], lambda s: np.zeros_like(
            np.asarray(s, dtype=float)))
        assert ks.d == pytest.approx(1.0)

    def test_self_calibration_uniform(self):
        # a sample from its own cdf: D < 0.025 holds with probability
        # >= 0.99 at m = 10^4; checked here at a fixed seed
        rng = np.random.default_rng(0)
        sample = rng.uniform(size=10_000)
        ks = ks_distance(sample, lambda s: np.clip(s, 0.0, 1.0))
        assert ks.d < 0.025

    def test_two_sample_identical(self):
        a = np.arange(10.0)
        assert ks_two_sample(a, a).d == 0.0

    def test_two_sample_disjoint(self):
        assert ks_two_sample([0.0, 1.0], [5.0, 6.0]).d == 1.0


class TestIo:
    def test_csv_is_byte_stable(self, tmp_path):
        rows = [(1, 0.1), (2, 0.25)]
        p1 = write_csv(tmp_path / "a.csv", ("i", "v"), rows)
        p2 = write_csv(tmp_path / "b.csv", ("i", "v"), rows)
        assert p1.read_bytes() == p2.read_bytes()

    def test_csv_width_guard(self, tmp_path):
        with pytest.raises(InvalidConfigError):
            write_csv(tmp_path / "a.csv", ("i", "v"), [(1, 2, 3)])

    def test_manifest_round_trip(self, tmp_path):
        p = write_manifest(tmp_path / "m.json", {"seed": 3, "x": [1, 2]})
        data = json.loads(p.read_text())
        assert data["seed"] == 3
        assert "kpzlab_version" in data

    def test_read_config_errors(self, tmp_path):
        with pytest.raises(InvalidConfigError):
            read_config(tmp_path / "missing.json")
        bad = tmp_path / "bad.json"
        bad.write_text("[1, 2]")
        with pytest.raises(InvalidConfigError):
            read_config(bad)


class TestExperiments:
    def test_unknown_experiment_rejected(self):
        with pytest.raises(InvalidConfigError):
            ExperimentConfig("no-such-experiment")

    def test_unknown_parameter_rejected(self):
        with pytest.raises(InvalidConfigError):
            ExperimentConfig("semicircle-ks", params={"bogus": 1})

    def test_run_writes_deterministic_artifacts(self, tmp_path):
        outs = []
        for name in ("r1", "r2"):
            cfg = ExperimentConfig("semicircle-ks", params={"n": 60},
                                   seed=4, out_dir=str(tmp_path / name))
            report = run_experiment(cfg)
            outs.append({p.split("/")[-1]: open(p, "rb").read()
                         for p in report.artifacts})
        assert outs[0] == outs[1]

    def test_report_carries_tolerances(self):
        report = run_experiment(ExperimentConfig("stationarity"))
        assert report.passed
        assert set(report.tolerances) <= set(report.measured) | {
            k for k in report.tolerances}
        for key in report.tolerances:
            assert key in report.measured

    def test_worker_count_does_not_change_results(self):
        base = run_experiment(ExperimentConfig(
            "limit-shape", params={"t": 20.0, "seeds": 8}, seed=5))
        multi = run_experiment(ExperimentConfig(
            "limit-shape", params={"t": 20.0, "seeds": 8}, seed=5, workers=2))
        assert base.measured == multi.measured


class TestCli:
    def test_usage_error_exit_code(self):
        with pytest.raises(SystemExit) as exc:
            main(["run-experiment", "no-such-experiment"])
        assert exc.value.code == 2

    def test_config_error_exit_code(self, tmp_path):
        missing = str(tmp_path / "nope.json")
        assert main(["run-experiment", "stationarity",
                     "--config", missing]) == 2

    def test_passing_experiment_exit_zero(self, capsys):
        assert main(["run-experiment", "stationarity"]) == 0
        assert "[PASS] stationarity" in capsys.readouterr().out

    def test_exact_prob_with_oracle(self, capsys):
        assert main(["exact-prob", "--y", "0", "--x", "1", "--t", "0.7",
                     "--p", "0.25", "--oracle"]) == 0
        out = capsys.readouterr().out
        assert "uniformization oracle" in out

    def test_toprec_moments(self, capsys):
        assert main(["toprec", "--genus", "1", "--moments", "3"]) == 0
        assert "[0, 0, 1, 10]" in capsys.readouterr().out

    def test_simulate_asep_runs(self, capsys, tmp_path):
        assert main(["simulate-asep", "--p", "0", "--t", "5",
                     "--out", str(tmp_path)]) == 0
        assert (tmp_path / "final_positions.csv").exists()

    def test_trace_moments_runs(self, capsys):
        assert main(["trace-moments", "--n", "3", "--j", "4",
                     "--samples", "4000", "--seed", "1"]) == 0

    def test_bethe_runs(self, capsys):
        assert main(["bethe", "--n", "2", "--length", "4"]) == 0
        assert "spectrum coverage" in capsys.readouterr().out


@given(st.lists(st.floats(-100, 100), min_size=1, max_size=40))
@settings(max_examples=30, deadline=None)
def test_property_ks_in_unit_interval(sample):
    ks = ks_distance(sample, lambda s: np.clip(
        (np.asarray(s, dtype=float) + 100.0) / 200.0, 0.0, 1.0))
    assert 0.0 <= ks.d <= 1.0


@given(st.integers(0, 2**30), st.integers(1, 50))
@settings(max_examples=20, deadline=None)
def test_property_ecdf_monotone(seed, m):
    rng = np.random.default_rng(seed)
    e = Ecdf.from_sample(rng.normal(size=m))
    xs = np.linspace(-3, 3, 50)
    vals = e(xs)
    assert np.all(np.diff(vals) >= 0)
