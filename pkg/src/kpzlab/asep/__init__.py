"""Continuous-time exclusion-process simulation, heights, and KPZ scalings."""

from .height import HeightField, height, height_from_state
from .lattice import (
    Bernoulli,
    Explicit,
    InfiniteWindow,
    OccupationField,
    ParticleConfig,
    Rates,
    Ring,
    Step,
    build_initial,
    occupation,
)
from .scaling import (
    BurgersScaling,
    burgers_field,
    one_point_rescaled,
    one_point_statistic,
    rescale_kpz,
)
from .simulate import (
    TrajectorySample,
    replay,
    simulate,
    simulate_ensemble,
    spawn_seeds,
)

__all__ = [
    "Bernoulli",
    "BurgersScaling",
    "Explicit",
    "HeightField",
    "InfiniteWindow",
    "OccupationField",
    "ParticleConfig",
    "Rates",
    "Ring",
    "Step",
    "TrajectorySample",
    "build_initial",
    "burgers_field",
    "height",
    "height_from_state",
    "occupation",
    "one_point_rescaled",
    "one_point_statistic",
    "replay",
    "rescale_kpz",
    "simulate",
    "simulate_ensemble",
    "spawn_seeds",
]
