"""
Exact verification of the double-sum identities behind the specialized eigenvalues.

F(m,k,j,p) is the (j, p) term of lambda_k at b_p = w_{m-p}. The key identity is
a telescoping certificate in j and p for a four-term recurrence of
S(m,k) = sum_{j,p} F(m,k,j,p); g(m,p) does the same for S(m,0). Together with
initial values they give S(m,k) = (-1)^m (2m+1)/(2(m-k)+1).

Failures are reported as data, never corrected.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from utils.combinatorics import binomial, double_factorial, sign_power

logger = logging.getLogger(__name__)

__all__ = [
    'FTerm', 'double_factorial', 'F', 'Fj', 'Fp', 'g', 'f_term',
    'verify_key_identity', 'verify_g_recurrence', 'sum_F', 'sum_F_closed_form',
    'verify_sum_recurrence', 'key_identity_sweep', 'g_recurrence_sweep',
]


@dataclass(frozen=True)
class FTerm:
    m: int
    k: int
    j: int
    p: int
    value: Fraction

    @property
    def in_support(self) -> bool:
        return 0 <= self.p <= self.m - self.k and 0 <= self.j <= self.k


@lru_cache(maxsize=None)
def F(m: int, k: int, j: int, p: int) -> Fraction:
    if not (0 <= p <= m - k and 0 <= j <= k):
        return Fraction(0)
    numerator = (sign_power(k + p) * binomial(k, j) * binomial(m - j, p) * binomial(j - k + m, j + p)
                 * double_factorial(2 * (j + p)) * double_factorial(2 * m - 2 * j - 2 * p - 1))
    return Fraction(numerator, double_factorial(2 * m - 1))


def f_term(m: int, k: int, j: int, p: int) -> FTerm:
    return FTerm(m, k, j, p, F(m, k, j, p))


def Fj(m: int, k: int, j: int, p: int) -> Fraction:
    """Certificate term telescoping in j."""
    return (2 * m - 7) * (k - 1) * (
        - 4 * (k - 2) * (k + m - 4) * F(m - 3, k - 3, j, p + 1)
        + 4 * (m - 2) * (k - m) * F(m - 3, k - 2, j, p)
        - 4 * (m - 2) * (k - m) * F(m - 3, k - 2, j, p + 1)
        - (2 * m - 5) * (4 * k + 2 * m - 9) * F(m - 2, k - 2, j, p + 1)
        - (2 * k - 3) * (2 * m - 5) * F(m - 2, k - 2, j + 1, p + 1)
        + 2 * (2 * m - 5) * (k - m) * F(m - 2, k - 1, j, p)
        + 2 * (2 * m - 5) * (m - k) * F(m - 2, k - 1, j, p + 1)
        + 2 * (2 * m - 5) * (k - m) * F(m - 2, k - 1, j + 1, p)
        + 2 * (2 * m - 5) * (m - k) * F(m - 2, k - 1, j + 1, p + 1)
        - (2 * m - 5) * (2 * m - 3) * F(m - 1, k - 1, j, p + 1)
        - (2 * m - 5) * (2 * m - 3) * F(m - 1, k - 1, j + 1, p + 1)
    )


def Fp(m: int, k: int, j: int, p: int) -> Fraction:
    """Certificate term telescoping in p."""
    return (k - 1) * (
        - 4 * (k - 3) * (k - 2) * (2 * m - 5) * F(m - 4, k - 4, j, p)
        - 4 * (k - 2) * (2 * m - 7) * (k + 2 * m - 6) * F(m - 3, k - 3, j, p)
        + 4 * (m - 2) * (2 * m - 7) * (m - k) * F(m - 3, k - 2, j, p)
        - (2 * m - 7) * (2 * m - 5) * (4 * k + 2 * m - 9) * F(m - 2, k - 2, j, p)
        + 2 * (2 * m - 7) * (2 * m - 5) * (m - k) * F(m - 2, k - 1, j, p)
        - (2 * m - 7) * (2 * m - 5) * (2 * m - 3) * F(m - 1, k - 1, j, p)
    )


def _key_lhs(m: int, k: int, j: int, p: int) -> Fraction:
    return (
        4 * (k - 3) * (k - 2) * (k - 1) * (2 * m - 5) * F(m - 4, k - 4, j, p)
        + 4 * (k - 2) * (k - 1) * (2 * m - 7) * (k + 2 * m - 6) * F(m - 3, k - 3, j, p)
        + (2 * m - 7) * (2 * m - 5) * (k - 1) * (4 * k + 2 * m - 9) * F(m - 2, k - 2, j, p)
        + (2 * m - 7) * (2 * m - 5) * (2 * m - 3) * (k - 1) * F(m - 1, k - 1, j, p)
    )


def verify_key_identity(m: int, k: int, j: int, p: int) -> bool:
    rhs = Fj(m, k, j + 1, p) - Fj(m, k, j, p) + Fp(m, k, j, p + 1) - Fp(m, k, j, p)
    return _key_lhs(m, k, j, p) == rhs


def g(m: int, p: int) -> Fraction:
    c = (2 * m - 1) * (2 * m + 1)
    return (4 * m * m * F(m - 1, 0, 0, p - 2)
            - c * F(m, 0, 0, p - 2)
            + c * F(m, 0, 0, p - 1)
            - c * F(m + 1, 0, 0, p - 2)
            - c * F(m + 1, 0, 0, p - 1))


def verify_g_recurrence(m: int, p: int) -> bool:
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    c = (2 * m - 1) * (2 * m + 1)
    return c * F(m, 0, 0, p - 2) + c * F(m + 1, 0, 0, p - 2) == g(m, p + 1) - g(m, p)


def _support_sum(m: int, k: int) -> Fraction:
    if not 0 <= k <= m:
        return Fraction(0)
    return sum((F(m, k, j, p) for j in range(k + 1) for p in range(m - k + 1)), Fraction(0))


def sum_F(m: int, k: int) -> Fraction:
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got m={m}, k={k}")
    return _support_sum(m, k)


def sum_F_closed_form(m: int, k: int) -> Fraction:
    return Fraction(sign_power(m) * (2 * m + 1), 2 * (m - k) + 1)


def verify_sum_recurrence(m: int, k: int) -> bool:
    """The key identity summed over all (j, p): the certificate side telescopes to 0."""
    total = (
        4 * (k - 3) * (k - 2) * (k - 1) * (2 * m - 5) * _support_sum(m - 4, k - 4)
        + 4 * (k - 2) * (k - 1) * (2 * m - 7) * (k + 2 * m - 6) * _support_sum(m - 3, k - 3)
        + (2 * m - 7) * (2 * m - 5) * (k - 1) * (4 * k + 2 * m - 9) * _support_sum(m - 2, k - 2)
        + (2 * m - 7) * (2 * m - 5) * (2 * m - 3) * (k - 1) * _support_sum(m - 1, k - 1)
    )
    return total == 0


def key_identity_sweep(m_max: int, m_min: int = 4) -> List[Tuple[int, int, int, int]]:
    """Failing (m, k, j, p) over the stencil j in -1..k+1, p in -1..m-k+1."""
    failures = []
    for m in range(m_min, m_max + 1):
        for k in range(m + 1):
            for j in range(-1, k + 2):
                for p in range(-1, m - k + 2):
                    if not verify_key_identity(m, k, j, p):
                        failures.append((m, k, j, p))
    if failures:
        logger.warning(f"Key identity fails at {len(failures)} points, first {failures[0]}")
    return failures


def g_recurrence_sweep(m_max: int) -> List[Tuple[int, int]]:
    """Failing (m, p) for m = 1..m_max, p = -1..m+3."""
    failures = [(m, p) for m in range(1, m_max + 1) for p in range(-1, m + 4)
                if not verify_g_recurrence(m, p)]
    if failures:
        logger.warning(f"g recurrence fails at {len(failures)} points, first {failures[0]}")
    return failures
