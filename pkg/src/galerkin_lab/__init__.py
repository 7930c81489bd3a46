"""Galerkin methods for a two-point BVP, Fredholm integral equations and a
semilinear elliptic problem, on small dense systems."""
from .basis import BasisFamily, Kind
from .bvp import CoefficientVector, GalerkinSystem
from .errors import (GalerkinError, NoConvergence, NumericalError,
                     SingularMatrix, ValidationError)
from .quadrature import QuadratureRule

__version__ = "0.1.0"

__all__ = [
    "BasisFamily", "Kind", "CoefficientVector", "GalerkinSystem",
    "GalerkinError", "NoConvergence", "NumericalError", "SingularMatrix",
    "ValidationError", "QuadratureRule",
]
