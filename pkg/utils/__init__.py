"""
Utility functions for exact arithmetic.
Contains combinatorial helpers and rational/integer linear algebra.
"""

from .combinatorics import binomial, double_factorial, fraction_str, parse_fraction, sign_power
from .exact_linalg import (
    IntegerEchelon,
    SignatureResult,
    SymmetricRationalMatrix,
    exact_signature,
    integer_charpoly,
)

__all__ = [
    'binomial',
    'double_factorial',
    'fraction_str',
    'parse_fraction',
    'sign_power',
    'IntegerEchelon',
    'SignatureResult',
    'SymmetricRationalMatrix',
    'exact_signature',
    'integer_charpoly',
]
