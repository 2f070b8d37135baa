import math
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def double_factorial(x: int) -> int:
    """x!! with the convention (-1)!! = 0!! = 1."""
    if x < -1:
        raise ValueError(f"double factorial undefined for x={x}")
    return math.prod(range(x, 0, -2))


def binomial(a: int, b: int) -> int:
    """Binomial coefficient that is 0 outside its range.

    Negative upper arguments use the falling-factorial form a(a-1)...(a-b+1)/b!.
    """
    if b < 0:
        return 0
    if a >= 0:
        return math.comb(a, b) if b <= a else 0
    return math.prod(range(a, a - b, -1)) // math.factorial(b)


def sign_power(e: int) -> int:
    return -1 if e % 2 else 1


def fraction_str(value: Fraction) -> str:
    """Exact 'num/den' rendering used in dumps and reports."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())
