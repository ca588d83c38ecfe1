"""Exact and numerical experiments on polynomial hypersurfaces, exponential-polynomials
and the Fourier-Borel transform of point-supported functionals."""

__version__ = "0.1.0"

from .expcalc import ExpPoly
from .functionals import ExpFunctional
from .gaussian import GaussianRational
from .polycore import Polynomial

__all__ = ["ExpFunctional", "ExpPoly", "GaussianRational", "Polynomial", "__version__"]
