import sys
import os

# Add the parent directory to the path so we can import from utils
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction

import numpy as np
import pytest

from utils.exact_linalg import (
    IntegerEchelon, SignatureResult, SymmetricRationalMatrix, exact_signature,
    integer_charpoly, integer_rank, rational_rank,
)


def matrix(rows):
    return SymmetricRationalMatrix(len(rows), rows)


def test_rejects_asymmetric_and_ragged_input():
    with pytest.raises(ValueError):
        matrix([[1, 2], [3, 1]])
    with pytest.raises(ValueError):
        SymmetricRationalMatrix(2, [[1, 2]])


def test_signature_with_diagonal_pivots():
    assert exact_signature(matrix([[-2, 1], [1, -2]])) == SignatureResult(0, 2, 0)
    assert exact_signature(matrix([[1, 2], [2, 1]])) == SignatureResult(1, 1, 0)
    assert exact_signature(matrix([[1, 1], [1, 1]])) == SignatureResult(1, 0, 1)


def test_signature_with_hyperbolic_pivots():
    assert exact_signature(matrix([[0, 1], [1, 0]])) == SignatureResult(1, 1, 0)
    # eigenvalues 2, -1, -1
    result = exact_signature(matrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))
    assert result == SignatureResult(1, 2, 0)
    assert result.signature == -1
    assert result.dim == 3


def test_signature_of_zero_matrix():
    assert exact_signature(matrix([[0, 0], [0, 0]])) == SignatureResult(0, 0, 2)


def test_signature_with_rational_entries():
    half = Fraction(1, 2)
    result = exact_signature(matrix([[half, 1, 0], [1, half, 0], [0, 0, -3]]))
    assert result == SignatureResult(1, 2, 0)


def test_shift_scale_and_submatrix():
    m = matrix([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 3), 1]])
    assert m.denominator_lcm() == 6
    assert m.scaled_integer_rows() == [[3, 2], [2, 6]]
    with pytest.raises(ValueError):
        m.scaled_integer_rows(2)
    assert m.shifted(1)[0, 0] == Fraction(-1, 2)
    assert m.permuted([1, 0])[0, 0] == 1
    assert m.submatrix([1]).entries == [[Fraction(1)]]
    assert m.nonzero_count() == 4


def test_integer_echelon_rank_and_nullspace():
    echelon = IntegerEchelon(3)
    assert echelon.add_row({0: 1, 1: 2, 2: 3})
    assert not echelon.add_row({0: 2, 1: 4, 2: 6})
    assert echelon.add_row({1: 1, 2: 1})
    assert echelon.rank == 2
    assert echelon.nullspace() == [[Fraction(-1), Fraction(-1), Fraction(1)]]


def test_ranks():
    assert integer_rank([[1, 2], [2, 4]]) == 1
    assert integer_rank([]) == 0
    assert rational_rank(matrix([[Fraction(1, 2), 1], [1, 2]])) == 1


def test_integer_charpoly():
    assert integer_charpoly([[2, 1], [1, 2]]) == [1, -4, 3]
    assert integer_charpoly([[0, 0], [0, 0]]) == [1, 0, 0]


def test_dump_writes_fractions(tmp_path):
    path = tmp_path / 'm.txt'
    matrix([[Fraction(1, 2), 0], [0, -1]]).dump(str(path))
    assert path.read_text().splitlines() == ['1/2 0/1', '0/1 -1/1']


def congruent_matrix(diagonal, extra_columns, rng):
    """C^T D C with C = [I | R], whose inertia is that of D plus extra_columns zeros."""
    k = len(diagonal)
    dim = k + extra_columns
    c = [[Fraction(int(i == j)) for j in range(k)] + [Fraction(int(v)) for v in rng.integers(-3, 4, size=extra_columns)]
         for i in range(k)]
    rows = [[sum(c[r][i] * diagonal[r] * c[r][j] for r in range(k)) for j in range(dim)] for i in range(dim)]
    return SymmetricRationalMatrix(dim, rows)


@pytest.mark.parametrize('seed', range(5))
def test_signature_is_invariant_under_basis_permutations(seed):
    rng = np.random.default_rng(seed)
    diagonal = [Fraction(3, 2), Fraction(-1, 3), Fraction(2), Fraction(-5, 7), Fraction(1, 4)]
    m = congruent_matrix(diagonal, 3, rng)
    expected = SignatureResult(3, 2, 3)
    assert exact_signature(m) == expected
    for _ in range(10):
        order = [int(i) for i in rng.permutation(m.dim)]
        assert exact_signature(m.permuted(order)) == expected


def test_permutation_invariance_with_zero_diagonal():
    rng = np.random.default_rng(11)
    m = matrix([[0, 1, 0, 0], [1, 0, 2, 0], [0, 2, 0, 3], [0, 0, 3, 0]])
    base = exact_signature(m)
    assert base.zeros == 0 and base.signature == 0
    for _ in range(10):
        assert exact_signature(m.permuted([int(i) for i in rng.permutation(4)])) == base
