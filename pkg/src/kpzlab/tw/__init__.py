"""Tracy-Widom F2 via the Painleve II route."""

from .airy import AiryEval, airy
from .f2 import F2Moments, TWDistribution, build_f2, export_table, f2_cdf, f2_moments
from .painleve import PainleveSolution, hastings_mcleod, left_asymptotic, ode_residual, separatrix_probe

__all__ = [
    "AiryEval",
    "F2Moments",
    "PainleveSolution",
    "TWDistribution",
    "airy",
    "build_f2",
    "export_table",
    "f2_cdf",
    "f2_moments",
    "hastings_mcleod",
    "left_asymptotic",
    "ode_residual",
    "separatrix_probe",
]
