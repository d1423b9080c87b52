"""Exact Clifford, G2 and Dirac-spectrum computations for 7-manifolds with Killing spinors."""

from .exterior import Multivector, contract, hodge, inner, wedge
from .radicals import ExactEigenvalue
from .scalars import QuadraticNumber

__all__ = ["ExactEigenvalue", "Multivector", "QuadraticNumber", "contract", "hodge", "inner", "wedge"]
__version__ = "0.1.0"
