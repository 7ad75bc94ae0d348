"""
Places of Q, valuations, square classes and Hilbert symbols.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

import sympy

from models.errors import MalformedInputError

# Unit classes mod 8 written with the representatives used in reports
DYADIC_UNIT_CLASS = {1: 1, 3: -5, 5: 5, 7: -1}


@dataclass(frozen=True)
class Place:
    """A place of Q: prime=None is the real place"""

    prime: Optional[int] = None

    def __post_init__(self):
        if self.prime is not None and not sympy.isprime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def parse(cls, name: str) -> "Place":
        if name == "inf":
            return cls(None)
        try:
            return cls(int(name))
        except ValueError as e:
            raise MalformedInputError(f"bad place name {name!r}") from e

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    @property
    def name(self) -> str:
        return "inf" if self.prime is None else str(self.prime)

    def sort_key(self) -> Tuple[int, int]:
        return (0, 0) if self.prime is None else (1, self.prime)

    def __str__(self):
        return self.name


def valuation(a, p: int) -> int:
    a = Fraction(a)
    if a == 0:
        raise ValueError("the valuation of 0 is infinite")
    v = 0
    if a.numerator % p == 0:
        v += sympy.multiplicity(p, abs(a.numerator))
    if a.denominator % p == 0:
        v -= sympy.multiplicity(p, a.denominator)
    return v


def unit_part(a, p: int) -> Fraction:
    a = Fraction(a)
    return a / Fraction(p) ** valuation(a, p)


def _residue(u: Fraction, modulus: int) -> int:
    """A p-adic unit u reduced mod `modulus` (num * den^-1)"""
    return u.numerator * pow(u.denominator, -1, modulus) % modulus


@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    n = 2
    while sympy.legendre_symbol(n, p) != -1:
        n += 1
    return n


def _legendre(u: Fraction, p: int) -> int:
    return sympy.legendre_symbol(_residue(u, p), p)


def is_square(a, v: Place) -> bool:
    """True when a is a square in Q_v (0 counts as a square)"""
    a = Fraction(a)
    if a == 0:
        return True
    if v.is_infinite:
        return a > 0
    p = v.prime
    if valuation(a, p) % 2:
        return False
    u = unit_part(a, p)
    if p == 2:
        return _residue(u, 8) == 1
    return _legendre(u, p) == 1


def square_class(a, v: Place) -> int:
    """
    Canonical integer representative of a modulo squares in Q_v.

    Real: the sign. Odd p: p^(v mod 2) times 1 or the least non-residue.
    p = 2: 2^(v mod 2) times one of 1, -5, 5, -1.
    """
    a = Fraction(a)
    if a == 0:
        raise ValueError("0 has no square class")
    if v.is_infinite:
        return 1 if a > 0 else -1
    p = v.prime
    scale = p if valuation(a, p) % 2 else 1
    u = unit_part(a, p)
    if p == 2:
        return scale * DYADIC_UNIT_CLASS[_residue(u, 8)]
    return scale * (1 if _legendre(u, p) == 1 else smallest_nonresidue(p))


def hilbert(a, b, v: Place) -> int:
    """
    Hilbert symbol (a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution in Q_v.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("the Hilbert symbol needs nonzero arguments")
    if v.is_infinite:
        return -1 if a < 0 and b < 0 else 1
    p = v.prime
    alpha, beta = valuation(a, p), valuation(b, p)
    u, w = unit_part(a, p), unit_part(b, p)
    if p == 2:
        u8, w8 = _residue(u, 8), _residue(w, 8)
        eps_u, eps_w = (u8 - 1) // 2 % 2, (w8 - 1) // 2 % 2
        omega_u, omega_w = (u8 * u8 - 1) // 8 % 2, (w8 * w8 - 1) // 8 % 2
        exponent = eps_u * eps_w + alpha * omega_w + beta * omega_u
        return -1 if exponent % 2 else 1
    eps_p = (p - 1) // 2 % 2
    sign = -1 if (alpha * beta * eps_p) % 2 else 1
    if beta % 2:
        sign *= _legendre(u, p)
    if alpha % 2:
        sign *= _legendre(w, p)
    return sign
