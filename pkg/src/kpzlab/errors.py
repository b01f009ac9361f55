"""Shared exception types."""


class KpzLabError(Exception):
    """Base class for all package-specific errors."""


class InvalidConfigError(KpzLabError):
    """A particle configuration or parameter set violates an invariant."""


class WindowEscapeError(KpzLabError):
    """A particle reached the boundary of an infinite-lattice window."""


class PoleProximityError(KpzLabError):
    """A contour or denominator came too close to a pole."""


class ConvergenceError(KpzLabError):
    """An iterative method failed to converge within its caps."""


class CoverageError(KpzLabError):
    """Requested evaluation point lies outside the computed range."""
