import sys
import os

# Add the parent directory to the path so we can import from algebra
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import math
from fractions import Fraction

import pytest
import sympy

from algebra.milnor import (
    AlgebraElement, SquareFreeMonomial, basis_dimensions, derive_top_relations,
    hessian_class_by_reduction, hessian_class_coefficient, hessian_determinant,
    hessian_determinant_closed_form, milnor_number, parity_class, parity_invariant_holds,
    product_class, quotient_dimension, relation_certificate, three_jet, top_functional,
    verify_three_term_relations, w_values,
)
from core.errors import ResourceLimitError


def test_w_values_small_m():
    assert w_values(1).values == (Fraction(-2), Fraction(1))
    assert w_values(2).values == (Fraction(8, 3), Fraction(-2, 3), Fraction(1))
    assert w_values(3).values == (Fraction(-16, 5), Fraction(8, 15), Fraction(-2, 5), Fraction(1))
    with pytest.raises(ValueError):
        w_values(0)


@pytest.mark.parametrize('m', range(1, 9))
def test_w_recurrences(m):
    assert w_values(m).satisfies_recurrence()


@pytest.mark.parametrize('m', range(1, 7))
def test_three_term_relations(m):
    assert verify_three_term_relations(m)


@pytest.mark.parametrize('n', [3, 4, 5, 6])
def test_relation_certificate(n):
    jet = three_jet(n)
    assert jet.relation_coefficient == Fraction(-2, n - 2)
    assert relation_certificate(jet)


def test_basis_dimensions():
    assert basis_dimensions(5) == (1, 4, 6, 4, 1)
    assert sum(basis_dimensions(7)) == milnor_number(7) == 64


def test_quotient_dimensions_match_binomials():
    for degree in range(5):
        assert quotient_dimension(5, degree) == math.comb(4, degree)
    assert quotient_dimension(5, 5) == 0


def test_top_functional_n3():
    assert top_functional(3) == {(2, 0): -2, (1, 1): 1, (0, 2): -2}


@pytest.mark.parametrize('n', [5, 7])
def test_derived_relations_give_w_vector(n):
    space = derive_top_relations(n)
    assert space.dimension == 1
    assert space.normalized() == w_values((n - 1) // 2).values


def test_parity_rule():
    assert parity_class((1, 1, 1, 1)) == 2
    assert parity_class((3, 1, 0, 0)) == 1
    assert parity_class((2, 2, 0, 0)) == 0
    assert parity_invariant_holds(5)


def test_relation_guards():
    with pytest.raises(ResourceLimitError):
        derive_top_relations(11)
    with pytest.raises(ValueError):
        derive_top_relations(6)


@pytest.mark.parametrize('n', [3, 4, 5])
def test_hessian_determinant_closed_form(n):
    assert sympy.expand(hessian_determinant(n) - hessian_determinant_closed_form(n)) == 0


def test_hessian_class():
    for n in (3, 5, 7, 9):
        assert hessian_class_coefficient(n) == n
    assert hessian_class_by_reduction(3) == 3
    assert hessian_class_by_reduction(5) == 5


def test_square_free_monomials_and_pairing():
    x1 = SquareFreeMonomial.from_indices([1])
    x2 = SquareFreeMonomial.from_indices([2])
    x13 = SquareFreeMonomial.from_indices([1, 3])
    assert x13.indices == (1, 3) and x13.degree == 2 and str(x13) == 'x1*x3'
    assert str(SquareFreeMonomial(0)) == '1'
    with pytest.raises(ValueError):
        SquareFreeMonomial.from_indices([0])
    assert product_class(x1, x1, 3) == -2
    assert product_class(x1, x2, 3) == 1
    assert product_class(x1, x13, 5) == 0
    g = AlgebraElement.monomial(x1) + AlgebraElement.monomial(x2)
    assert g.pair(g, 3) == -2
    assert (2 * g).pair(g, 3) == -4
