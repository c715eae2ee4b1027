"""Computable core for Chern classes, Steenrod operations and Adams operations mod p."""

from .errors import ChernkitError
from .modp import PrimePower, stch_decomposable
from .poly import Poly, PolyRing
from .symfunc import Partition, express_in_chern, kappa_bruteforce, kappa_formula

__version__ = "0.1.0"

__all__ = [
    "ChernkitError", "Partition", "Poly", "PolyRing", "PrimePower", "express_in_chern", "kappa_bruteforce",
    "kappa_formula", "stch_decomposable",
]
