"""
Intersection matrices on m-subsets of {1, ..., 2m}.

The entry for subsets sigma, tau is b_p with p = |sigma & tau|. Its eigenvalues
are integer combinations lambda_k of the b_p, k = 0..m, with eigenspace
dimensions mu_k. With b_p = w_{m-p} the matrix is the middle block of the ELK
form and all eigenvalues equal (-1)^m (2m+1)/(2m-2k+1).
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy

from core.config import Config
from core.errors import ResourceLimitError
from utils.combinatorics import binomial, double_factorial, sign_power
from utils.exact_linalg import SymmetricRationalMatrix, integer_charpoly, rational_rank

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntersectionMatrixSpec:
    m: int
    b: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be at least 1, got {self.m}")
        if len(self.b) != self.m + 1:
            raise ValueError(f"expected {self.m + 1} values b_0..b_m, got {len(self.b)}")
        object.__setattr__(self, 'b', tuple(Fraction(v) for v in self.b))

    @property
    def dimension(self) -> int:
        return math.comb(2 * self.m, self.m)


@dataclass(frozen=True)
class EigenPrediction:
    m: int
    lambdas: Tuple[Fraction, ...]
    mus: Tuple[int, ...]

    def __post_init__(self):
        if sum(self.mus) != math.comb(2 * self.m, self.m):
            raise ValueError("multiplicities must sum to C(2m, m)")


def m_subsets(m: int) -> List[Tuple[int, ...]]:
    return list(itertools.combinations(range(1, 2 * m + 1), m))


def build_intersection_matrix(spec: IntersectionMatrixSpec) -> SymmetricRationalMatrix:
    subsets = [frozenset(s) for s in m_subsets(spec.m)]
    return SymmetricRationalMatrix.from_function(subsets, lambda s, t: spec.b[len(s & t)])


def lambda_formula(m: int, k: int, b: Sequence) -> Fraction:
    """sum_j sum_p (-1)^(k-j) C(k,j) C(m-j,p) C(j-k+m, m-k-p) b_{j+p}."""
    if not 0 <= k <= m:
        raise ValueError(f"k must lie in 0..{m}, got {k}")
    total = Fraction(0)
    for j in range(k + 1):
        for p in range(m - k + 1):
            coeff = sign_power(k - j) * binomial(k, j) * binomial(m - j, p) * binomial(j - k + m, m - k - p)
            if coeff:
                total += coeff * Fraction(b[j + p])
    return total


def lambda_coefficients(m: int, k: int) -> Tuple[int, ...]:
    """lambda_k as an integer vector in b_0..b_m."""
    coefficients = []
    for i in range(m + 1):
        unit = [0] * (m + 1)
        unit[i] = 1
        value = lambda_formula(m, k, unit)
        if value.denominator != 1:
            raise ArithmeticError(f"lambda_{k} has a non-integer coefficient for b_{i}")
        coefficients.append(int(value))
    return tuple(coefficients)


def mu(m: int, k: int) -> int:
    """(2m)! (2m-2k+1) / (k! (2m-k+1)!)."""
    if not 0 <= k <= m:
        raise ValueError(f"k must lie in 0..{m}, got {k}")
    numerator = math.factorial(2 * m) * (2 * m - 2 * k + 1)
    denominator = math.factorial(k) * math.factorial(2 * m - k + 1)
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise ArithmeticError(f"mu({m}, {k}) is not an integer")
    return quotient


def predict_spectrum(spec: IntersectionMatrixSpec) -> EigenPrediction:
    m = spec.m
    return EigenPrediction(
        m,
        tuple(lambda_formula(m, k, spec.b) for k in range(m + 1)),
        tuple(mu(m, k) for k in range(m + 1)),
    )


def _guard(m: int):
    if m > Config.MAX_SPECTRUM_M:
        logger.error(f"Spectrum verification for m={m} exceeds MAX_SPECTRUM_M={Config.MAX_SPECTRUM_M}")
        raise ResourceLimitError('m', m, Config.MAX_SPECTRUM_M)


def predicted_charpoly(prediction: EigenPrediction, scale: int) -> List[int]:
    """Coefficients of prod_k (x - scale*lambda_k)^mu_k, highest degree first."""
    x = sympy.Symbol('x')
    product = sympy.Poly(1, x, domain='QQ')
    for lam, mult in zip(prediction.lambdas, prediction.mus):
        root = sympy.Rational(lam.numerator, lam.denominator) * scale
        product *= sympy.Poly(x - root, x, domain='QQ') ** mult
    coefficients = []
    for c in product.all_coeffs():
        c = sympy.Rational(c)
        if c.q != 1:
            raise ArithmeticError("scaled eigenvalues are not integral")
        coefficients.append(int(c.p))
    return coefficients


def verify_spectrum(spec: IntersectionMatrixSpec) -> bool:
    """Exact characteristic polynomial of scale*M against prod (x - scale*lambda_k)^mu_k."""
    _guard(spec.m)
    matrix = build_intersection_matrix(spec)
    scale = matrix.denominator_lcm()
    actual = integer_charpoly(matrix.scaled_integer_rows(scale))
    expected = predicted_charpoly(predict_spectrum(spec), scale)
    if actual != expected:
        logger.warning(f"Characteristic polynomial mismatch for m={spec.m}, b={spec.b}")
        return False
    return True


def eigenspace_dimensions(spec: IntersectionMatrixSpec) -> List[Tuple[Fraction, int, int]]:
    """(lambda, predicted mu summed over equal lambdas, nullity of M - lambda I)."""
    _guard(spec.m)
    matrix = build_intersection_matrix(spec)
    prediction = predict_spectrum(spec)
    grouped = {}
    for lam, mult in zip(prediction.lambdas, prediction.mus):
        grouped[lam] = grouped.get(lam, 0) + mult
    return [(lam, mult, matrix.dim - rational_rank(matrix.shifted(lam)))
            for lam, mult in grouped.items()]


def specialized_b(m: int) -> Tuple[Fraction, ...]:
    """b_p = (-1)^p (2p)!! (2m-2p-1)!! / (2m-1)!!, equal to w_{m-p}."""
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    return tuple(
        Fraction(sign_power(p) * double_factorial(2 * p) * double_factorial(2 * m - 2 * p - 1),
                 double_factorial(2 * m - 1))
        for p in range(m + 1)
    )


def specialized_eigenvalues(m: int) -> Tuple[Fraction, ...]:
    """(-1)^m (2m+1)/(2m-2k+1), k = 0..m."""
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    return tuple(Fraction(sign_power(m) * (2 * m + 1), 2 * m - 2 * k + 1) for k in range(m + 1))


proposition_three_eigs = specialized_eigenvalues


def specialized_signature(m: int) -> int:
    """Signature read off the predicted spectrum at the specialized b."""
    b = specialized_b(m)
    total = 0
    for k in range(m + 1):
        lam = lambda_formula(m, k, b)
        total += mu(m, k) * ((lam > 0) - (lam < 0))
    return total


def random_b(m: int, rng: Optional[np.random.Generator] = None) -> Tuple[Fraction, ...]:
    """Random small rationals b_0..b_m."""
    rng = rng if rng is not None else np.random.default_rng()
    numerators = rng.integers(-9, 10, size=m + 1)
    denominators = rng.integers(1, 6, size=m + 1)
    return tuple(Fraction(int(a), int(d)) for a, d in zip(numerators, denominators))
