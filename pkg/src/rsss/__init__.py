"""Trigraded multiplicative spectral sequences for group actions, with an Ext oracle."""
from .coefficients import CoeffRing
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "CoeffRing", "__version__"]
