"""Multiple Hermite polynomials, simultaneous Gaussian quadrature and the
asymptotics of the symmetric triple (-c, 0, c)."""

__version__ = "0.1.0"

from .mhermite import (  # noqa: E402
    DimensionMismatch,
    MultiIndex,
    WeightSystem,
    build_by_recurrence,
    build_explicit,
)
from .numerics import MonicPoly, precision, set_precision  # noqa: E402
from .quadrature import QuadratureRule, apply_rule, build_rule  # noqa: E402
from .zeros import ZeroSet, multiple_hermite_zeros  # noqa: E402

__all__ = [
    "DimensionMismatch",
    "MonicPoly",
    "MultiIndex",
    "QuadratureRule",
    "WeightSystem",
    "ZeroSet",
    "apply_rule",
    "build_by_recurrence",
    "build_explicit",
    "build_rule",
    "multiple_hermite_zeros",
    "precision",
    "set_precision",
]
