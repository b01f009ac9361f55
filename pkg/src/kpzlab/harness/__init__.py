"""Statistics, reproducible experiments, and the command-line interface."""

from kpzlab.harness.experiments import (
    EXPERIMENTS,
    ExperimentConfig,
    ExperimentReport,
    run_experiment,
)
from kpzlab.harness.io import format_value, read_config, write_csv, write_manifest
from kpzlab.harness.stats import Ecdf, KsStatistic, ks_distance, ks_two_sample

__all__ = [
    "EXPERIMENTS",
    "ExperimentConfig",
    "ExperimentReport",
    "run_experiment",
    "format_value",
    "read_config",
    "write_csv",
    "write_manifest",
    "Ecdf",
    "KsStatistic",
    "ks_distance",
    "ks_two_sample",
]
