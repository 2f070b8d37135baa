"""
Exact Linear Algebra
====================

Rational and integer linear algebra used by the Milnor algebra, the ELK form
and the intersection matrices:

- SymmetricRationalMatrix: dense symmetric matrix of Fractions
- exact_signature: congruence reduction with 1x1 and hyperbolic 2x2 pivots
- IntegerEchelon: fraction-free sparse elimination (rank, nullspace)
- integer_charpoly: characteristic polynomial over ZZ via sympy
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from utils.combinatorics import fraction_str

logger = logging.getLogger(__name__)


@dataclass
class SymmetricRationalMatrix:
    """Exact symmetric matrix over the rationals."""

    dim: int
    entries: List[List[Fraction]]

    def __post_init__(self):
        if len(self.entries) != self.dim or any(len(row) != self.dim for row in self.entries):
            raise ValueError(f"entries must be {self.dim}x{self.dim}")
        self.entries = [[Fraction(v) for v in row] for row in self.entries]
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i}, {j})")

    @classmethod
    def from_function(cls, basis: Sequence, entry: Callable) -> 'SymmetricRationalMatrix':
        """Build the Gram-type matrix entry(basis[i], basis[j]), filling the upper triangle once."""
        dim = len(basis)
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(i, dim):
                value = Fraction(entry(basis[i], basis[j]))
                rows[i][j] = value
                rows[j][i] = value
        return cls(dim, rows)

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def submatrix(self, indices: Sequence[int]) -> 'SymmetricRationalMatrix':
        return SymmetricRationalMatrix(
            len(indices), [[self.entries[i][j] for j in indices] for i in indices]
        )

    def permuted(self, order: Sequence[int]) -> 'SymmetricRationalMatrix':
        """P M P^T for the permutation sending position k to old index order[k]."""
        if sorted(order) != list(range(self.dim)):
            raise ValueError("order must be a permutation of range(dim)")
        return self.submatrix(order)

    def shifted(self, value: Fraction) -> 'SymmetricRationalMatrix':
        """M - value * I."""
        value = Fraction(value)
        rows = [list(row) for row in self.entries]
        for i in range(self.dim):
            rows[i][i] -= value
        return SymmetricRationalMatrix(self.dim, rows)

    def denominator_lcm(self) -> int:
        return reduce(math.lcm, (v.denominator for row in self.entries for v in row), 1)

    def scaled_integer_rows(self, scale: Optional[int] = None) -> List[List[int]]:
        """Rows of scale * M as Python ints; scale defaults to the denominator lcm."""
        scale = scale if scale is not None else self.denominator_lcm()
        rows = []
        for row in self.entries:
            scaled = [v * scale for v in row]
            if any(v.denominator != 1 for v in scaled):
                raise ValueError(f"scale {scale} does not clear all denominators")
            rows.append([int(v) for v in scaled])
        return rows

    def nonzero_count(self) -> int:
        return sum(1 for row in self.entries for v in row if v)

    def dump(self, path: str):
        """Plain-text dump: one row per line, entries as 'num/den'."""
        with open(path, 'w') as handle:
            for row in self.entries:
                handle.write(' '.join(fraction_str(v) for v in row) + '\n')


@dataclass(frozen=True)
class SignatureResult:
    positives: int
    negatives: int
    zeros: int

    @property
    def signature(self) -> int:
        return self.positives - self.negatives

    @property
    def dim(self) -> int:
        return self.positives + self.negatives + self.zeros


def _sparse_rows(matrix: SymmetricRationalMatrix) -> Dict[int, Dict[int, Fraction]]:
    rows: Dict[int, Dict[int, Fraction]] = {}
    for i, row in enumerate(matrix.entries):
        rows[i] = {j: v for j, v in enumerate(row) if v}
    return rows


def _remove_index(rows: Dict[int, Dict[int, Fraction]], k: int):
    for i in rows.pop(k):
        if i != k and i in rows:
            rows[i].pop(k, None)


def _apply_update(rows: Dict[int, Dict[int, Fraction]], i: int, j: int, delta: Fraction):
    value = rows[i].get(j, Fraction(0)) - delta
    if value:
        rows[i][j] = value
    else:
        rows[i].pop(j, None)


def exact_signature(matrix: SymmetricRationalMatrix) -> SignatureResult:
    """Signature by symmetric congruence over the rationals.

    A nonzero diagonal entry is eliminated as a 1x1 pivot (fewest nonzeros first).
    When the whole remaining diagonal vanishes, an off-diagonal entry c = A[k][l]
    is eliminated as the hyperbolic block [[0, c], [c, 0]], which contributes one
    positive and one negative square.
    """
    rows = _sparse_rows(matrix)
    positives = negatives = zeros = 0

    while rows:
        diagonal = [k for k in rows if rows[k].get(k)]
        if diagonal:
            k = min(diagonal, key=lambda idx: (len(rows[idx]), idx))
            pivot = rows[k][k]
            if pivot > 0:
                positives += 1
            else:
                negatives += 1
            neighbours = [(i, v) for i, v in rows[k].items() if i != k]
            for i, a_ik in neighbours:
                factor = a_ik / pivot
                for j, a_kj in neighbours:
                    _apply_update(rows, i, j, factor * a_kj)
            _remove_index(rows, k)
            continue

        k = next((idx for idx in sorted(rows) if rows[idx]), None)
        if k is None:
            zeros += len(rows)
            break
        l = min(rows[k], key=lambda idx: (len(rows[idx]), idx))
        c = rows[k][l]
        positives += 1
        negatives += 1
        row_k = {i: v for i, v in rows[k].items() if i not in (k, l)}
        row_l = {i: v for i, v in rows[l].items() if i not in (k, l)}
        touched = set(row_k) | set(row_l)
        for i in touched:
            a_ik = row_k.get(i)
            a_il = row_l.get(i)
            for j in touched:
                delta = Fraction(0)
                if a_ik is not None and j in row_l:
                    delta += a_ik * row_l[j]
                if a_il is not None and j in row_k:
                    delta += a_il * row_k[j]
                if delta:
                    _apply_update(rows, i, j, delta / c)
        _remove_index(rows, k)
        _remove_index(rows, l)

    result = SignatureResult(positives, negatives, zeros)
    logger.debug(f"Signature of {matrix.dim}x{matrix.dim} matrix: {result}")
    return result


def _content(row: Dict[int, int]) -> int:
    return reduce(math.gcd, (abs(v) for v in row.values()), 0)


@dataclass
class IntegerEchelon:
    """Incremental fraction-free row echelon form over the integers.

    Rows are sparse {column: int}. Each stored pivot row has its pivot at its
    smallest column and is divided by its content, so entries stay small.
    """

    ncols: int
    pivots: Dict[int, Dict[int, int]] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add_row(self, row: Dict[int, int]) -> bool:
        """Reduce row against the pivots; keep it if independent. Returns True when kept."""
        current = {c: v for c, v in row.items() if v}
        while current:
            col = min(current)
            pivot_row = self.pivots.get(col)
            if pivot_row is None:
                g = _content(current)
                if current[col] < 0:
                    g = -g
                self.pivots[col] = {c: v // g for c, v in current.items()}
                return True
            a = current[col]
            p = pivot_row[col]
            merged = {c: p * v for c, v in current.items()}
            for c, v in pivot_row.items():
                merged[c] = merged.get(c, 0) - a * v
            current = {c: v for c, v in merged.items() if v}
            g = _content(current)
            if g > 1:
                current = {c: v // g for c, v in current.items()}
        return False

    def extend(self, rows: Iterable[Dict[int, int]]) -> 'IntegerEchelon':
        for row in rows:
            self.add_row(row)
        return self

    def nullspace(self) -> List[List[Fraction]]:
        """Basis of {x : R x = 0}, one vector per free column, by back substitution."""
        free = [c for c in range(self.ncols) if c not in self.pivots]
        order = sorted(self.pivots, reverse=True)
        basis = []
        for f in free:
            x = [Fraction(0)] * self.ncols
            x[f] = Fraction(1)
            for c in order:
                row = self.pivots[c]
                total = sum((Fraction(v) * x[j] for j, v in row.items() if j != c), Fraction(0))
                x[c] = -total / row[c]
            basis.append(x)
        return basis


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 0
    echelon = IntegerEchelon(len(rows[0]))
    echelon.extend({j: v for j, v in enumerate(row) if v} for row in rows)
    return echelon.rank


def rational_rank(matrix: SymmetricRationalMatrix) -> int:
    return integer_rank(matrix.scaled_integer_rows())


def integer_charpoly(rows: Sequence[Sequence[int]]) -> List[int]:
    """Coefficients of det(xI - A), highest degree first, by sympy's division-free routine over ZZ."""
    dim = len(rows)
    domain_matrix = DomainMatrix([[ZZ(v) for v in row] for row in rows], (dim, dim), ZZ)
    return [int(c) for c in domain_matrix.charpoly()]
