"""GUE spectra, semicircle law, Stieltjes transforms, and the Coulomb gas."""

from .coulomb import CoulombChain, coulomb_log_density, metropolis_sample
from .gue import (
    EmpiricalMeasure,
    GUEMatrix,
    SpectralSample,
    edge_ensemble,
    edge_rescale,
    eigenvalues,
    esd,
    genus_moment_polynomial,
    sample_gue,
    trace_moment,
    trace_moment_exact,
)
from .semicircle import (
    invert_stieltjes,
    semicircle,
    semicircle_cdf,
    semicircle_moment,
    semicircle_stieltjes,
    stieltjes,
    stieltjes_fixed_point_residual,
)

__all__ = [
    "CoulombChain",
    "EmpiricalMeasure",
    "GUEMatrix",
    "SpectralSample",
    "coulomb_log_density",
    "edge_ensemble",
    "edge_rescale",
    "eigenvalues",
    "esd",
    "genus_moment_polynomial",
    "invert_stieltjes",
    "metropolis_sample",
    "sample_gue",
    "semicircle",
    "semicircle_cdf",
    "semicircle_moment",
    "semicircle_stieltjes",
    "stieltjes",
    "stieltjes_fixed_point_residual",
    "trace_moment",
    "trace_moment_exact",
]
