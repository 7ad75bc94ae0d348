"""
Arithmetic in the cubic algebra L = Q[phi]/(phi^3 - 3*I*phi + J).

Elements are stored as c0 + c1*phi + c2*phi^2 with exact rationals.
Square roots are recovered numerically through the three complex
embeddings and then verified exactly.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Tuple

import mpmath
import sympy

from engine_config import EngineSettings, get_settings
from models.errors import (
    NonUnitError,
    ParentMismatchError,
    SingularQuarticError,
    SqrtUndeterminedError,
)
from models.forms import BinaryForm, _monomials, _q
from utils.rationals import from_sympy, is_rational_square, to_sympy

logger = logging.getLogger(__name__)

PHI = sympy.Symbol("phi")


@dataclass(frozen=True)
class CubicAlgebra:
    I: Fraction
    J: Fraction

    def __post_init__(self):
        object.__setattr__(self, "I", _q(self.I))
        object.__setattr__(self, "J", _q(self.J))
        if 4 * self.I ** 3 == self.J ** 2:
            raise SingularQuarticError(
                f"X^3 - 3*({self.I})*X + ({self.J}) is not squarefree"
            )

    @property
    def discriminant(self) -> Fraction:
        return 27 * (4 * self.I ** 3 - self.J ** 2)

    def poly(self) -> sympy.Poly:
        return sympy.Poly(
            [1, 0, -3 * to_sympy(self.I), to_sympy(self.J)], PHI, domain=sympy.QQ
        )

    @cached_property
    def factorization(self) -> List[sympy.Poly]:
        """Monic irreducible factors over Q, lowest degree first"""
        _, factors = self.poly().factor_list()
        polys = [f.monic() for f, _ in factors]
        return sorted(polys, key=lambda f: (f.degree(), [from_sympy(c) for c in f.all_coeffs()]))

    @property
    def factor_degrees(self) -> Tuple[int, ...]:
        return tuple(f.degree() for f in self.factorization)

    def element(self, c0=0, c1=0, c2=0) -> "AlgElement":
        return AlgElement(self, _q(c0), _q(c1), _q(c2))

    def one(self) -> "AlgElement":
        return self.element(1)

    def zero(self) -> "AlgElement":
        return self.element(0)

    def phi(self) -> "AlgElement":
        return self.element(0, 1)


@dataclass(frozen=True)
class AlgElement:
    algebra: CubicAlgebra
    c0: Fraction
    c1: Fraction
    c2: Fraction

    @property
    def coeffs(self) -> Tuple[Fraction, Fraction, Fraction]:
        return self.c0, self.c1, self.c2

    def _check(self, other: "AlgElement"):
        if self.algebra != other.algebra:
            raise ParentMismatchError("elements of different cubic algebras")

    def _coerce(self, other) -> Optional["AlgElement"]:
        if isinstance(other, AlgElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.element(other)
        return None

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0 and self.c2 == 0

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return AlgElement(self.algebra, self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    __radd__ = __add__

    def __neg__(self):
        return AlgElement(self.algebra, -self.c0, -self.c1, -self.c2)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        p = [Fraction(0)] * 5
        for i in range(3):
            if a[i] == 0:
                continue
            for j in range(3):
                p[i + j] += a[i] * b[j]
        # phi^3 = 3I*phi - J, phi^4 = 3I*phi^2 - J*phi
        I, J = self.algebra.I, self.algebra.J
        return AlgElement(
            self.algebra,
            p[0] - J * p[3],
            p[1] + 3 * I * p[3] - J * p[4],
            p[2] + 3 * I * p[4],
        )

    __rmul__ = __mul__

    def multiplication_matrix(self) -> List[List[Fraction]]:
        """Columns are the coordinates of self, self*phi, self*phi^2"""
        phi = self.algebra.phi()
        cols = [self, self * phi, self * phi * phi]
        return [[col.coeffs[r] for col in cols] for r in range(3)]

    def norm(self) -> Fraction:
        m = self.multiplication_matrix()
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def is_unit(self) -> bool:
        return self.norm() != 0

    def to_poly(self) -> sympy.Poly:
        return sympy.Poly(
            [to_sympy(self.c2), to_sympy(self.c1), to_sympy(self.c0)], PHI, domain=sympy.QQ
        )

    def inverse(self) -> "AlgElement":
        """
        Inverse via the extended gcd with the defining cubic.

        Raises:
            NonUnitError: carrying the common factor when self is a zero divisor
        """
        s, _, h = sympy.gcdex(self.to_poly(), self.algebra.poly())
        if h.degree() > 0:
            raise NonUnitError(f"{self} is not a unit; shares the factor {h.as_expr()}", factor=h)
        s = s * (1 / h.LC()) if h.LC() != 1 else s
        coeffs = [from_sympy(c) for c in reversed(s.all_coeffs())] + [Fraction(0)] * 3
        return self.algebra.element(*coeffs[:3])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def evaluate_at(self, root):
        """Image under the embedding phi -> root (an mpmath number)"""
        return _mp(self.c0) + root * (_mp(self.c1) + root * _mp(self.c2))

    def __str__(self):
        return f"{self.c0} + ({self.c1})*phi + ({self.c2})*phi^2"


def _mp(value: Fraction):
    return mpmath.mpf(value.numerator) / value.denominator


def _embeddings(algebra: CubicAlgebra, bits: int) -> Optional[List]:
    """
    Roots of X^3 - 3IX + J: three ascending reals, or the real root
    followed by the conjugate pair (positive imaginary part first).
    """
    try:
        roots = mpmath.polyroots(
            [1, 0, -3 * _mp(algebra.I), _mp(algebra.J)], maxsteps=100 + bits, extraprec=bits
        )
    except mpmath.libmp.NoConvergence:
        return None
    if 4 * algebra.I ** 3 - algebra.J ** 2 > 0:
        return sorted(mpmath.re(r) for r in roots)
    real = min(roots, key=lambda r: abs(mpmath.im(r)))
    others = [r for r in roots if r is not real]
    upper = max(others, key=lambda r: mpmath.im(r))
    return [mpmath.re(real), mpmath.mpc(upper), mpmath.conj(upper)]


def _rationalize(value, bits: int, bound: int) -> Fraction:
    return Fraction(int(mpmath.nint(value * mpmath.mpf(2) ** bits)), 2 ** bits).limit_denominator(bound)


def _normalize_sign(m: AlgElement) -> AlgElement:
    for c in (m.c2, m.c1, m.c0):
        if c != 0:
            return -m if c < 0 else m
    return m


def _sqrt_attempt(c: AlgElement, bits: int, bound: int) -> Optional[List[AlgElement]]:
    """One numeric pass over a known square; returns the roots it could verify, None if none"""
    roots = _embeddings(c.algebra, bits)
    if roots is None:
        return None
    tiny = mpmath.mpf(2) ** (-(bits // 2))
    values = [c.evaluate_at(r) for r in roots]
    for r, v in zip(roots, values):
        if not isinstance(r, mpmath.mpc) and v < -tiny * (1 + abs(v)):
            return None
    roots_sq = [mpmath.sqrt(v) for v in values]

    if isinstance(roots[1], mpmath.mpc):
        patterns = []
        for e in (1, -1):
            s1 = e * roots_sq[1]
            patterns.append([roots_sq[0], s1, mpmath.conj(s1)])
    else:
        patterns = [
            [roots_sq[0], e2 * roots_sq[1], e3 * roots_sq[2]] for e2 in (1, -1) for e3 in (1, -1)
        ]

    vandermonde = mpmath.matrix([[1, r, r * r] for r in roots])
    found = []
    imag_tol = mpmath.mpf(2) ** (-(bits // 4))
    for pattern in patterns:
        try:
            sol = mpmath.lu_solve(vandermonde, mpmath.matrix(pattern))
        except ZeroDivisionError:
            return None
        if any(abs(mpmath.im(x)) > imag_tol * (1 + abs(x)) for x in sol):
            continue
        candidate = c.algebra.element(*(_rationalize(mpmath.re(x), bits, bound) for x in sol))
        if candidate * candidate == c:
            candidate = _normalize_sign(candidate)
            if candidate not in found:
                found.append(candidate)
    if not found:
        return None
    return sorted(found, key=lambda m: (m.c2, m.c1, m.c0))


def _component_is_square(residue: sympy.Poly, factor: sympy.Poly) -> bool:
    """Whether the image of c in the field Q[X]/(factor) is a square"""
    if residue.is_zero:
        return True
    if residue.degree() <= 0:
        value = from_sympy(residue.LC())
        if factor.degree() == 2:
            # in Q(sqrt(D)) a rational r is a square iff r or r/D is one
            return is_rational_square(value) or is_rational_square(value / from_sympy(factor.discriminant()))
        return is_rational_square(value)
    # residue generates the field (prime degree), so it is a square exactly
    # when its characteristic polynomial in T^2 splits over Q
    t = sympy.Symbol("t")
    char = sympy.resultant(factor.as_expr(), t - residue.as_expr(), PHI)
    _, factors = sympy.Poly(char.subs(t, t ** 2), t, domain=sympy.QQ).factor_list()
    return len(factors) > 1 or factors[0][1] > 1


def is_square_element(c: AlgElement) -> bool:
    """Exact test, one field factor of L at a time"""
    poly = c.to_poly()
    return all(
        _component_is_square(poly.rem(f), f) for f in c.algebra.factorization
    )


def sqrt(c: AlgElement, settings: Optional[EngineSettings] = None) -> List[AlgElement]:
    """
    All square roots of c in L, one per pair {m, -m}.

    An empty list means c is not a square (decided exactly by
    is_square_element). A square with k nonzero field components has
    2^(k-1) such pairs; they are reconstructed numerically, doubling the
    working precision and widening the denominator bound until every one
    of them squares back to c exactly.

    Raises:
        SqrtUndeterminedError: if the precision ceiling is hit before all roots are found
    """
    settings = settings or get_settings()
    algebra = c.algebra
    if c.is_zero():
        return [algebra.zero()]
    if not is_rational_square(c.norm()):
        return []
    if not is_square_element(c):
        return []

    poly = c.to_poly()
    nonzero = sum(1 for f in algebra.factorization if not poly.rem(f).is_zero)
    expected = 2 ** (nonzero - 1)
    dens = [x.denominator for x in (*c.coeffs, algebra.I, algebra.J)]
    bound = max(dens) ** 2
    bits = settings.precision_start_bits
    found = 0
    for attempt in range(settings.precision_doublings + 1):
        with mpmath.workprec(bits):
            result = _sqrt_attempt(c, bits, bound)
        if result is not None:
            if len(result) == expected:
                return result
            found = len(result)
        logger.debug(
            "sqrt retry %d: %d of %d roots at %d bits, denominator bound %d",
            attempt + 1, found, expected, bits, bound,
        )
        bits *= 2
        bound *= settings.denominator_growth
    raise SqrtUndeterminedError(
        f"found {found} of {expected} square roots of {c} within {bits // 2} bits"
    )


@dataclass(frozen=True)
class BinaryFormL:
    """Binary form with coefficients in L, stored like BinaryForm"""

    algebra: CubicAlgebra
    coeffs: Tuple[AlgElement, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def component(self, k: int) -> BinaryForm:
        """The rational form multiplying phi^k"""
        return BinaryForm(tuple(c.coeffs[k] for c in self.coeffs))

    def evaluate(self, x, z) -> AlgElement:
        total = self.algebra.zero()
        for c, m in zip(self.coeffs, _monomials(self.degree, _q(x), _q(z))):
            total = total + c * m
        return total

    def scale(self, factor) -> "BinaryFormL":
        return BinaryFormL(self.algebra, tuple(c * factor for c in self.coeffs))

    def __add__(self, other: "BinaryFormL") -> "BinaryFormL":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return BinaryFormL(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "BinaryFormL") -> "BinaryFormL":
        if not isinstance(other, BinaryFormL):
            return NotImplemented
        out = [self.algebra.zero()] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BinaryFormL(self.algebra, tuple(out))
