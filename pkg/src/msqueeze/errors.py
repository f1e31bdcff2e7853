"""Exception types shared across the package.

The CLI maps these onto exit codes, so every numeric failure raised by the
library derives from :class:`NumericError`.
"""


class MsqueezeError(Exception):
    """Base class for all package errors."""


class NotCanonical(MsqueezeError):
    """Transformation coefficients violate the canonical commutation relation."""


class NumericError(MsqueezeError):
    """Base class for numerical failures (CLI exit code 4)."""


class NonNormalizable(NumericError):
    """Gaussian profile of the eigenstate does not decay."""


class Degenerate(NumericError):
    """mu - nu vanishes; the position representation degenerates."""


class NoConvergence(NumericError):
    """Grid refinement did not reach the requested tolerance."""


class TailTooHeavy(NumericError):
    """Photon-number tail mass beyond n_max exceeds the allowed bound."""


class RangeTooSmall(NumericError):
    """Phase-space window clips non-negligible probability mass."""


class EmptyContour(NumericError):
    """Requested iso-level lies outside the sampled range."""


class DegreeOverflow(MsqueezeError):
    """Operator polynomial exceeds the configured maximum degree."""


class NotReducible(MsqueezeError):
    """Quadrature form cannot be cast into the completed-square template."""


class NotPolynomial(MsqueezeError):
    """Symbolic expansion requested for a non-polynomial nonlinearity."""


class DomainError(MsqueezeError):
    """Closed-form expression evaluated outside its domain of validity."""
