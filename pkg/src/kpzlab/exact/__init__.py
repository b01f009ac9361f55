"""Exact exclusion-process solvers: generators, uniformization oracle,
contour-integral transition probabilities, and Bethe-ansatz eigenpairs."""

from .bethe import (
    BetheRoots,
    bethe_eigenpair,
    bethe_residual,
    bethe_solve,
    eigenpair_residual,
    spectrum_coverage,
)
from .contour import (
    ContourSpec,
    amplitude,
    choose_radius,
    transition_probabilities,
    transition_probability,
    window_normalization,
    window_targets,
)
from .generator import GeneratorMatrix, ring_generator, window_generator
from .uniformization import delta_distribution, master_evolve

__all__ = [
    "BetheRoots",
    "ContourSpec",
    "GeneratorMatrix",
    "amplitude",
    "bethe_eigenpair",
    "bethe_residual",
    "bethe_solve",
    "choose_radius",
    "delta_distribution",
    "eigenpair_residual",
    "master_evolve",
    "ring_generator",
    "spectrum_coverage",
    "transition_probabilities",
    "transition_probability",
    "window_generator",
    "window_normalization",
    "window_targets",
]
