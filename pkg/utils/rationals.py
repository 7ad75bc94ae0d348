"""
Helpers for exact rationals: parsing, formatting and sympy conversion.
"""
from fractions import Fraction
from math import isqrt
from typing import Iterable, List

import sympy

from models.errors import MalformedInputError

def parse_rational(text: str) -> Fraction:
    """
    Parse an exact rational written as "num/den" or "num".

    Decimal points and exponents are refused: every number in the
    interface must be exact.
    """
    if not isinstance(text, str):
        raise MalformedInputError(f"expected a string, got {text!r}")
    s = text.strip()
    if not s or any(ch in s for ch in ".eE"):
        raise MalformedInputError(f"not an exact rational: {text!r}")
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise MalformedInputError(f"not an exact rational: {text!r}") from e
    return value


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_sympy(value) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def from_sympy(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def is_rational_square(value: Fraction) -> bool:
    value = Fraction(value)
    if value < 0:
        return False
    num, den = value.numerator, value.denominator
    return isqrt(num) ** 2 == num and isqrt(den) ** 2 == den


def prime_support(values: Iterable[Fraction]) -> List[int]:
    """Primes dividing the numerator or denominator of any nonzero value"""
    primes = set()
    for value in values:
        value = Fraction(value)
        if value == 0:
            continue
        for n in (abs(value.numerator), value.denominator):
            if n > 1:
                primes.update(sympy.factorint(n).keys())
    return sorted(primes)
