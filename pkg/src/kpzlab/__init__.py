"""kpzlab: a numerical laboratory for the KPZ universality class.

Subpackages
-----------
asep     continuous-time exclusion-process simulation and KPZ rescalings
exact    exact finite-N solvers: generator, uniformization, contour
         integrals, Bethe ansatz
rmt      GUE sampling, semicircle law, Wick moments, Coulomb-gas Metropolis
tw       Airy function, Painlevé II Hastings–McLeod solution, Tracy–Widom F2
toprec   exact topological recursion on the Catalan spectral curve
harness  statistics, reproducible experiments, command-line interface
"""

__version__ = "0.1.0"
