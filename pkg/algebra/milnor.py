"""
Milnor Algebra of the 3-jet
===========================

Near the degenerate star the signed area has the 3-jet

    f = (1/3) (x_1^3 + ... + x_N^3 - (x_1 + ... + x_N)^3),   N = n - 1,

with partial derivatives x_i^2 - (x_1 + ... + x_N)^2. In the Milnor algebra
O/J(f) every x_i^2 equals -2/(n-2) times the second elementary symmetric
polynomial, the degree d part has dimension C(N, d), and the top degree N is
one-dimensional. A top-degree monomial class depends only on the parity of
its exponents: with 2k odd exponents its class is w_k, where (omega = 1)

    w_k = (-1)^(m-k) (2m-2k)!! (2k-1)!! / (2m-1)!!,   m = (n-1)/2.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Dict, List, Tuple

import sympy

from core.config import Config
from core.errors import ResourceLimitError
from utils.combinatorics import binomial, double_factorial, sign_power
from utils.exact_linalg import IntegerEchelon

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]  # exponent vector


def _check_n(n: int):
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")


def _check_odd(n: int):
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and at least 3, got {n}")


@dataclass(frozen=True)
class SquareFreeMonomial:
    """Product of distinct variables x_i, i in support (1-based), stored as a bitmask."""

    support: int

    def __post_init__(self):
        if self.support < 0:
            raise ValueError("support mask must be non-negative")

    @classmethod
    def from_indices(cls, indices) -> 'SquareFreeMonomial':
        mask = 0
        for i in indices:
            if i < 1:
                raise ValueError(f"variable indices start at 1, got {i}")
            mask |= 1 << (i - 1)
        return cls(mask)

    @property
    def degree(self) -> int:
        return bin(self.support).count('1')

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in range(self.support.bit_length()) if self.support >> i & 1)

    def intersection_size(self, other: 'SquareFreeMonomial') -> int:
        return bin(self.support & other.support).count('1')

    def __str__(self):
        return '*'.join(f"x{i}" for i in self.indices) or '1'


@dataclass(frozen=True)
class WVector:
    """Top-degree classes w_0..w_m as multiples of omega (omega = 1)."""

    m: int
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.m + 1:
            raise ValueError(f"expected {self.m + 1} values, got {len(self.values)}")
        if self.values[-1] != 1:
            raise ValueError("normalization requires w_m = 1")

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]

    def satisfies_recurrence(self) -> bool:
        """w_{p-1} = -((2m+2-2p)/(2p-1)) w_p for p = 1..m."""
        m = self.m
        return all(
            self.values[p - 1] == -Fraction(2 * m + 2 - 2 * p, 2 * p - 1) * self.values[p]
            for p in range(1, m + 1)
        )


@lru_cache(maxsize=None)
def w_values(m: int) -> WVector:
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    values = tuple(
        Fraction(sign_power(m - k) * double_factorial(2 * m - 2 * k) * double_factorial(2 * k - 1),
                 double_factorial(2 * m - 1))
        for k in range(m + 1)
    )
    return WVector(m, values)


def product_class(sigma: SquareFreeMonomial, tau: SquareFreeMonomial, n: int) -> Fraction:
    """l(x^sigma * x^tau): w_{m-p} with p = |sigma & tau| in top degree, 0 below it."""
    _check_odd(n)
    if sigma.degree + tau.degree != n - 1:
        return Fraction(0)
    m = (n - 1) // 2
    return w_values(m)[m - sigma.intersection_size(tau)]


@dataclass
class AlgebraElement:
    """Rational combination of square-free monomials in the Milnor algebra."""

    terms: Dict[SquareFreeMonomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {mono: Fraction(c) for mono, c in self.terms.items() if c}

    @classmethod
    def monomial(cls, mono: SquareFreeMonomial, coefficient=1) -> 'AlgebraElement':
        return cls({mono: Fraction(coefficient)})

    def __add__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + c
        return AlgebraElement(terms)

    def __mul__(self, scalar) -> 'AlgebraElement':
        return AlgebraElement({mono: c * Fraction(scalar) for mono, c in self.terms.items()})

    __rmul__ = __mul__

    def pair(self, other: 'AlgebraElement', n: int) -> Fraction:
        """l(g * h), extended bilinearly from products of basis monomials."""
        return sum(
            (c * d * product_class(s, t, n)
             for s, c in self.terms.items() for t, d in other.terms.items()),
            Fraction(0),
        )


@dataclass(frozen=True)
class ThreeJet:
    n: int
    variables: Tuple[sympy.Symbol, ...]
    polynomial: sympy.Expr
    partials: Tuple[sympy.Expr, ...]

    @property
    def relation_coefficient(self) -> Fraction:
        """c in x_i^2 = c * sum_{i<j} x_i x_j."""
        return Fraction(-2, self.n - 2)


def three_jet(n: int) -> ThreeJet:
    _check_n(n)
    xs = sympy.symbols(f"x1:{n}")
    total = sum(xs)
    f = sympy.expand(sympy.Rational(1, 3) * (sum(x ** 3 for x in xs) - total ** 3))
    partials = tuple(sympy.expand(sympy.diff(f, x)) for x in xs)
    return ThreeJet(n, tuple(xs), f, partials)


def relation_certificate(jet: ThreeJet) -> bool:
    """Check x_i^2 - c e_2 = d_i f - (1/(n-2)) sum_j d_j f for every i."""
    xs = jet.variables
    e2 = sum(xs[i] * xs[j] for i, j in itertools.combinations(range(len(xs)), 2))
    c = sympy.Rational(jet.relation_coefficient.numerator, jet.relation_coefficient.denominator)
    partial_sum = sum(jet.partials)
    for x, d in zip(xs, jet.partials):
        lhs = x ** 2 - c * e2
        rhs = d - sympy.Rational(1, jet.n - 2) * partial_sum
        if sympy.expand(lhs - rhs) != 0:
            return False
    return True


def basis_dimensions(n: int) -> Tuple[int, ...]:
    _check_n(n)
    if n % 2 == 0:
        logger.warning(f"n={n} is even: the complexified singularity is not claimed isolated")
    return tuple(math.comb(n - 1, d) for d in range(n))


def milnor_number(n: int) -> int:
    _check_n(n)
    return 2 ** (n - 1)


def verify_three_term_relations(m: int) -> bool:
    """C(2p,2) w_{p-1} + ((n-2)/2 + 2p(n-1-2p)) w_p + C(n-1-2p,2) w_{p+1} = 0, p = 0..m-1."""
    w = w_values(m)
    n = 2 * m + 1
    for p in range(m):
        previous = w[p - 1] if p >= 1 else Fraction(0)
        middle = Fraction(n - 2, 2) + 2 * p * (n - 1 - 2 * p)
        total = binomial(2 * p, 2) * previous + middle * w[p] + binomial(n - 1 - 2 * p, 2) * w[p + 1]
        if total != 0:
            logger.warning(f"Three-term relation fails for m={m}, p={p}: {total}")
            return False
    return True


def monomials(nvars: int, degree: int) -> List[Monomial]:
    """Exponent vectors of the given degree in lexicographically descending order."""
    result = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        result.append(tuple(exps))
    return result


def _partial_terms(nvars: int, i: int) -> Dict[Monomial, int]:
    """d_i f = x_i^2 - (x_1 + ... + x_N)^2 with integer coefficients."""
    terms: Dict[Monomial, int] = {}
    for a in range(nvars):
        for b in range(nvars):
            exps = [0] * nvars
            exps[a] += 1
            exps[b] += 1
            key = tuple(exps)
            terms[key] = terms.get(key, 0) - 1
    square = tuple(2 if k == i else 0 for k in range(nvars))
    terms[square] = terms.get(square, 0) + 1
    return {k: v for k, v in terms.items() if v}


def ideal_generators(n: int, degree: int) -> List[Dict[Monomial, int]]:
    """Spanning set of the degree part of J(f): d_i f times every monomial of degree - 2."""
    nvars = n - 1
    if degree < 2:
        return []
    rows = []
    partials = [_partial_terms(nvars, i) for i in range(nvars)]
    for q in monomials(nvars, degree - 2):
        for terms in partials:
            row: Dict[Monomial, int] = {}
            for mono, c in terms.items():
                key = tuple(a + b for a, b in zip(mono, q))
                row[key] = row.get(key, 0) + c
            rows.append(row)
    return rows


def _guard(n: int):
    _check_odd(n)
    if n > Config.MAX_RELATIONS_N:
        logger.error(f"Relation derivation for n={n} exceeds MAX_RELATIONS_N={Config.MAX_RELATIONS_N}")
        raise ResourceLimitError('n', n, Config.MAX_RELATIONS_N)


def parity_class(mono: Monomial) -> int:
    """k such that a top-degree monomial has 2k odd exponents."""
    return sum(e % 2 for e in mono) // 2


@dataclass(frozen=True)
class RelationSpace:
    """Solutions (w_0..w_m) of the parity-reduced degree n-1 relations."""

    n: int
    basis: Tuple[Tuple[Fraction, ...], ...]
    generator_count: int
    rank: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def normalized(self) -> Tuple[Fraction, ...]:
        """The unique solution with w_m = 1 (requires dimension 1)."""
        if self.dimension != 1:
            raise ValueError(f"relation space has dimension {self.dimension}, not 1")
        vector = self.basis[0]
        return tuple(v / vector[-1] for v in vector)


def derive_top_relations(n: int) -> RelationSpace:
    """Solve for the w-vector directly from the Jacobian ideal in degree n-1."""
    _guard(n)
    m = (n - 1) // 2
    generators = ideal_generators(n, n - 1)
    logger.info(f"Reducing {len(generators)} degree-{n - 1} generators of J(f) for n={n}")
    echelon = IntegerEchelon(m + 1)
    seen = set()
    for row in generators:
        reduced: Dict[int, int] = {}
        for mono, c in row.items():
            k = parity_class(mono)
            reduced[k] = reduced.get(k, 0) + c
        key = tuple(sorted((k, v) for k, v in reduced.items() if v))
        if key and key not in seen:
            seen.add(key)
            echelon.add_row(dict(key))
    basis = tuple(tuple(v) for v in echelon.nullspace())
    return RelationSpace(n, basis, len(generators), echelon.rank)


def _ideal_echelon(n: int, degree: int) -> Tuple[List[Monomial], IntegerEchelon]:
    columns = monomials(n - 1, degree)
    index = {mono: i for i, mono in enumerate(columns)}
    echelon = IntegerEchelon(len(columns))
    for row in ideal_generators(n, degree):
        echelon.add_row({index[mono]: c for mono, c in row.items()})
    return columns, echelon


def quotient_dimension(n: int, degree: int) -> int:
    """dim of the degree part of O/J(f), by exact rank of the ideal's degree part."""
    _guard(n)
    if degree < 0:
        raise ValueError(f"degree must be non-negative, got {degree}")
    columns, echelon = _ideal_echelon(n, degree)
    return len(columns) - echelon.rank


def top_functional(n: int) -> Dict[Monomial, Fraction]:
    """The functional on degree n-1 monomials vanishing on J(f), with l(x_1...x_N) = 1."""
    _guard(n)
    columns, echelon = _ideal_echelon(n, n - 1)
    basis = echelon.nullspace()
    if len(basis) != 1:
        raise ArithmeticError(f"top degree of O/J(f) has dimension {len(basis)} for n={n}")
    vector = basis[0]
    top = columns.index(tuple([1] * (n - 1)))
    scale = vector[top]
    return {mono: v / scale for mono, v in zip(columns, vector)}


def parity_invariant_holds(n: int) -> bool:
    """Every top monomial with 2k odd exponents has l-value w_k."""
    w = w_values((n - 1) // 2)
    return all(value == w[parity_class(mono)] for mono, value in top_functional(n).items())


def hessian_determinant(n: int) -> sympy.Expr:
    jet = three_jet(n)
    matrix = sympy.hessian(jet.polynomial, jet.variables)
    return sympy.expand(matrix.det(method='berkowitz'))


def hessian_determinant_closed_form(n: int) -> sympy.Expr:
    """2^N (x_1...x_N - s * sum_j prod_{i != j} x_i), s = sum of the variables."""
    xs = three_jet(n).variables
    product = sympy.Mul(*xs)
    cofactors = sum(sympy.Mul(*(x for x in xs if x is not skip)) for skip in xs)
    return sympy.expand(2 ** len(xs) * (product - sum(xs) * cofactors))


def hessian_class_coefficient(n: int) -> Fraction:
    """c in [h_f] = c * w_m, from [h_f] = -(n-2) w_m - (n-1)(n-2) w_{m-1}."""
    _check_odd(n)
    m = (n - 1) // 2
    w = w_values(m)
    return -(n - 2) * w[m] - (n - 1) * (n - 2) * w[m - 1]


def hessian_class_by_reduction(n: int) -> Fraction:
    """l([h_f]) by reducing the expanded Hessian determinant / 2^N with top_functional."""
    functional = top_functional(n)
    jet = three_jet(n)
    poly = sympy.Poly(hessian_determinant(n) / 2 ** (n - 1), *jet.variables)
    total = Fraction(0)
    for exps, coeff in poly.terms():
        total += Fraction(int(coeff.p), int(coeff.q)) * functional[tuple(exps)]
    return total
