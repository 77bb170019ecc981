"""Hecke eigenvalues at prime powers: vanishing, sign densities and simultaneous sign changes."""
from .forms_data import CoefficientTable, delta_expansion, weight16_expansion
from .hecke_core import Eigenform, PrimeSite, SatakePair, ZeroPattern

__all__ = [
    "CoefficientTable",
    "Eigenform",
    "PrimeSite",
    "SatakePair",
    "ZeroPattern",
    "delta_expansion",
    "weight16_expansion",
]
