"""Exact arithmetic for the generalized Maillet matrices A_{p,m} and A_p[c]."""

from .exact_linalg import ExactMatrix, det_bareiss, det_modular_crt
from .matrices import build_A, build_A_c
from .spectral import det_spectral_exact, exact_zero_eigenvalues, spectrum
from .zmod import OddPrime, PrimitiveRoot, find_primitive_roots, smallest_primitive_root

__version__ = "0.1.0"

__all__ = [
    "ExactMatrix",
    "OddPrime",
    "PrimitiveRoot",
    "build_A",
    "build_A_c",
    "det_bareiss",
    "det_modular_crt",
    "det_spectral_exact",
    "exact_zero_eigenvalues",
    "find_primitive_roots",
    "smallest_primitive_root",
    "spectrum",
]
