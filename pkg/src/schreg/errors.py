"""Exception types shared across the package.

Everything derives from SchregError so callers can catch the package's own
failures without swallowing programming errors.
"""


class SchregError(Exception):
    """Base class for all schreg-specific errors."""


class InvalidStep(SchregError):
    """Propagation step is zero, negative, or not finite."""


class ZeroSolution(SchregError):
    """A solution value vanished where a logarithm or ratio needs it."""


class HorizonExceeded(SchregError):
    """Volterra series requested beyond its configured horizon."""


class QuadratureFailure(SchregError):
    """An adaptive quadrature did not reach the requested tolerance."""


class NonIntegrable(SchregError):
    """A potential's local L1 mass came out non-finite."""


class NotBracketed(SchregError):
    """A root scan found no sign change in the given window."""


class ResolutionTooCoarse(SchregError):
    """Band scan provably skipped a band between adjacent samples."""


class NoConvergence(SchregError):
    """An iterative solver hit its iteration cap."""


class OnSpectrum(SchregError):
    """Evaluation point is on (or too close to) the essential spectrum."""


class PathTooCloseToSpectrum(SchregError):
    """Integration path from the anchor would graze the spectrum."""


class DegenerateDisk(SchregError):
    """Weyl disk data is degenerate (no finite positive radius)."""


class FitIllConditioned(SchregError):
    """Least-squares design matrix is rank deficient or near-singular."""


class ConfigInvalid(SchregError):
    """Experiment configuration failed schema validation."""


class ComputeFailed(SchregError):
    """A pipeline stage raised during computation."""
