"""Exact topological recursion on the Catalan spectral curve."""

from kpzlab.toprec.curve import (
    CATALAN_CURVE,
    CurveChart,
    residue_at,
    residue_sum,
)
from kpzlab.toprec.recursion import (
    MAX_GENUS,
    MAX_POINTS,
    catalan_sequence,
    correlator,
    correlator_at,
    genus_moment,
    genus_moment_row,
    integrand_residue_check,
    kernel,
    kernel_sign_diagnostic,
    pole_locations,
    symmetry_defect,
    zcoef,
)

__all__ = [
    "CATALAN_CURVE",
    "CurveChart",
    "residue_at",
    "residue_sum",
    "MAX_GENUS",
    "MAX_POINTS",
    "catalan_sequence",
    "correlator",
    "correlator_at",
    "genus_moment",
    "genus_moment_row",
    "integrand_residue_check",
    "kernel",
    "kernel_sign_diagnostic",
    "pole_locations",
    "symmetry_defect",
    "zcoef",
]
