"""Exact braided category of symplectic-fermion representations with CFT cross-checks."""
from .scalar import BACKEND, LogPoly, Scalar

__version__ = "0.1.0"
__all__ = ["BACKEND", "LogPoly", "Scalar", "__version__"]
