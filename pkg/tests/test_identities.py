import sys
import os

# Add the parent directory to the path so we can import from algebra
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction

import pytest

from algebra.identities import (
    F, f_term, g_recurrence_sweep, key_identity_sweep, sum_F, sum_F_closed_form,
    verify_g_recurrence, verify_sum_recurrence,
)
from algebra.intersection import lambda_formula, specialized_b


def test_F_vanishes_off_support():
    assert F(3, 1, 2, 0) == 0
    assert F(3, 1, 0, 3) == 0
    assert F(3, 1, -1, 0) == 0
    assert not f_term(3, 1, 0, 3).in_support
    assert f_term(3, 1, 0, 2).in_support


def test_small_sums():
    assert sum_F(1, 1) == -3
    assert sum_F(2, 1) == Fraction(5, 3)
    with pytest.raises(ValueError):
        sum_F(2, 3)


def test_sums_match_closed_form():
    for m in range(13):
        for k in range(m + 1):
            assert sum_F(m, k) == sum_F_closed_form(m, k), (m, k)


def test_sums_equal_specialized_lambdas():
    for m in range(1, 9):
        b = specialized_b(m)
        for k in range(m + 1):
            assert sum_F(m, k) == lambda_formula(m, k, b)


def test_key_identity():
    assert key_identity_sweep(7) == []


def test_summed_key_identity():
    for m in range(13):
        for k in range(m + 1):
            assert verify_sum_recurrence(m, k), (m, k)


def test_g_recurrence():
    assert verify_g_recurrence(1, 2)
    assert g_recurrence_sweep(8) == []
    with pytest.raises(ValueError):
        verify_g_recurrence(0, 1)
