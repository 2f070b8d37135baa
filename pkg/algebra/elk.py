"""
ELK bilinear form on the Milnor algebra of the 3-jet.

beta(g, h) = l(g * h) on the square-free basis, with l(w_m) = 1 and l = 0 below
top degree. Only the 3-jet of the signed area enters; the local degree of the
gradient map is unchanged by that substitution.
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, List

from algebra.milnor import SquareFreeMonomial, hessian_class_coefficient, product_class
from core.config import Config
from core.errors import ResourceLimitError
from core.morse import degenerate_index
from utils.combinatorics import binomial, sign_power
from utils.exact_linalg import SignatureResult, SymmetricRationalMatrix, exact_signature

logger = logging.getLogger(__name__)

JET_NOTE = 'computed with the 3-jet of the signed area; the gradient index is unchanged by this substitution'


def _check(n: int):
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and at least 3, got {n}")
    if n > Config.MAX_ELK_N:
        logger.error(f"ELK form for n={n} exceeds MAX_ELK_N={Config.MAX_ELK_N}")
        raise ResourceLimitError('n', n, Config.MAX_ELK_N)


def square_free_basis(n: int) -> List[SquareFreeMonomial]:
    """Degree-major, lexicographic within degree."""
    variables = range(1, n)
    return [SquareFreeMonomial.from_indices(combo)
            for degree in range(n)
            for combo in itertools.combinations(variables, degree)]


def degree_indices(n: int, degree: int) -> List[int]:
    """Positions of the given degree in square_free_basis(n)."""
    start = sum(binomial(n - 1, d) for d in range(degree))
    return list(range(start, start + binomial(n - 1, degree)))


def beta_entry(sigma: SquareFreeMonomial, tau: SquareFreeMonomial, n: int) -> Fraction:
    return product_class(sigma, tau, n)


def build_B(n: int) -> SymmetricRationalMatrix:
    _check(n)
    basis = square_free_basis(n)
    logger.info(f"Assembling {len(basis)}x{len(basis)} ELK matrix for n={n}")
    return SymmetricRationalMatrix.from_function(basis, lambda s, t: beta_entry(s, t, n))


def middle_block(n: int, matrix: SymmetricRationalMatrix = None) -> SymmetricRationalMatrix:
    matrix = matrix if matrix is not None else build_B(n)
    return matrix.submatrix(degree_indices(n, (n - 1) // 2))


def off_middle_signature(n: int, matrix: SymmetricRationalMatrix = None) -> SignatureResult:
    matrix = matrix if matrix is not None else build_B(n)
    middle = set(degree_indices(n, (n - 1) // 2))
    return exact_signature(matrix.submatrix([i for i in range(matrix.dim) if i not in middle]))


def elk_index(n: int) -> int:
    result = exact_signature(build_B(n))
    expected = degenerate_index(n)
    if result.signature != expected:
        logger.warning(f"ELK signature {result.signature} differs from gradient index {expected} for n={n}")
    return result.signature


def closed_form_index(n: int) -> int:
    """2 (-1)^m C(2m-1, m-1)."""
    m = (n - 1) // 2
    return 2 * sign_power(m) * binomial(2 * m - 1, m - 1)


def block_signature_check(n: int) -> bool:
    matrix = build_B(n)
    full = exact_signature(matrix)
    middle = exact_signature(middle_block(n, matrix))
    return full.signature == middle.signature


def dump_matrix(matrix: SymmetricRationalMatrix, path: str):
    matrix.dump(path)
    logger.info(f"Wrote {matrix.dim}x{matrix.dim} exact matrix to {path}")


def elk_report(n: int) -> Dict:
    matrix = build_B(n)
    full = exact_signature(matrix)
    middle = exact_signature(middle_block(n, matrix))
    off = off_middle_signature(n, matrix)
    return {
        'n': n,
        'dimension': matrix.dim,
        'signature': full.signature,
        'positives': full.positives,
        'negatives': full.negatives,
        'zeros': full.zeros,
        'middle_block_signature': middle.signature,
        'off_middle_signature': off.signature,
        'off_middle_zeros': off.zeros,
        'degenerate_index': degenerate_index(n),
        'closed_form_index': closed_form_index(n),
        'hessian_class_coefficient': hessian_class_coefficient(n),
        'note': JET_NOTE,
    }
