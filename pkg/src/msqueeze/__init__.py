"""Quadrature-dependent Bogoliubov transformations and multiphoton squeezed states."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    Degenerate, DegreeOverflow, DomainError, EmptyContour, MsqueezeError, NoConvergence,
    NonNormalizable, NotCanonical, NotPolynomial, NotReducible, NumericError, RangeTooSmall,
    TailTooHeavy,
)
from .nonlinear import NonlinearSpec  # noqa: E402
from .params import TransformSpec, check_canonical, derived_constants, from_polar, from_raw  # noqa: E402
from .states import StateSpec, solve_eigenstate  # noqa: E402

__all__ = [
    "Degenerate", "DegreeOverflow", "DomainError", "EmptyContour", "MsqueezeError",
    "NoConvergence", "NonNormalizable", "NotCanonical", "NotPolynomial", "NotReducible",
    "NumericError", "RangeTooSmall", "TailTooHeavy", "NonlinearSpec", "TransformSpec",
    "check_canonical", "derived_constants", "from_polar", "from_raw", "StateSpec",
    "solve_eigenstate",
]
