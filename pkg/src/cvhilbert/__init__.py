"""Operators on finite-dimensional spaces built from symmetries of variables.

Finite groups act on the hidden domain of a variable; permissible variables
induce groups on their value sets; coherent-state systems over those groups
resolve the identity and turn numeric variables into Hermitian operators.
Two related maximal variables are joined through a larger group whose
representation is verified, not assumed, to exist.
"""

from . import coherent, groups, pairing, representations, spectra, spin, variables
from .errors import CvhilbertError

__all__ = [
    "CvhilbertError",
    "coherent",
    "groups",
    "pairing",
    "representations",
    "spectra",
    "spin",
    "variables",
]

__version__ = "0.1.0"
