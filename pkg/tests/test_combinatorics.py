import sys
import os

# Add the parent directory to the path so we can import from utils
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction

import pytest

from utils.combinatorics import binomial, double_factorial, fraction_str, parse_fraction, sign_power


def test_double_factorial_conventions():
    assert double_factorial(-1) == 1
    assert double_factorial(0) == 1
    assert double_factorial(5) == 15
    assert double_factorial(6) == 48
    with pytest.raises(ValueError):
        double_factorial(-3)


def test_binomial_outside_range_is_zero():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(4, -1) == 0
    # falling factorial for a negative upper argument
    assert binomial(-1, 3) == -1
    assert binomial(-2, 2) == 3


def test_sign_power_and_fraction_strings():
    assert [sign_power(e) for e in range(-2, 3)] == [1, -1, 1, -1, 1]
    assert fraction_str(Fraction(-16, 5)) == '-16/5'
    assert fraction_str(3) == '3/1'
    assert parse_fraction(' 8/15 ') == Fraction(8, 15)
