"""
Dense binary and multihomogeneous forms with exact rational coefficients.

Storage order is descending powers of x everywhere: index i of a degree-d
binary form multiplies x^(d-i) z^i, and the same rule applies to each
variable pair of a BiForm or a Form222.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

import sympy

from models.errors import ZeroFormError, ZeroPointError
from utils.rationals import from_sympy, to_sympy

Point = Tuple[Fraction, Fraction]


def _q(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def check_point(x, z) -> Point:
    x, z = _q(x), _q(z)
    if x == 0 and z == 0:
        raise ZeroPointError("(0, 0) is not a point of the projective line")
    return x, z


def _monomials(degree: int, x: Fraction, z: Fraction) -> List[Fraction]:
    """x^(degree-i) z^i for i = 0..degree"""
    xs = [Fraction(1)]
    zs = [Fraction(1)]
    for _ in range(degree):
        xs.append(xs[-1] * x)
        zs.append(zs[-1] * z)
    return [xs[degree - i] * zs[i] for i in range(degree + 1)]


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous polynomial in (x, z); coeffs[i] multiplies x^(degree-i) z^i"""

    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(_q(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a binary form needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls((Fraction(0),) * (degree + 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def flat(self) -> List[Fraction]:
        return list(self.coeffs)

    def evaluate(self, x, z) -> Fraction:
        x, z = _q(x), _q(z)
        return sum(
            (c * m for c, m in zip(self.coeffs, _monomials(self.degree, x, z))),
            Fraction(0),
        )

    def content(self) -> Fraction:
        """
        Positive rational c such that self/c has coprime integer coefficients.

        Raises:
            ZeroFormError: if the form is identically zero
        """
        nonzero = [c for c in self.coeffs if c != 0]
        if not nonzero:
            raise ZeroFormError("the zero form has no content")
        return Fraction(
            gcd(*(abs(c.numerator) for c in nonzero)),
            lcm(*(c.denominator for c in nonzero)),
        )

    def scale(self, factor) -> "BinaryForm":
        factor = _q(factor)
        return BinaryForm(tuple(factor * c for c in self.coeffs))

    def _same_degree(self, other: "BinaryForm"):
        if self.degree != other.degree:
            raise ValueError(
                f"degree mismatch: {self.degree} and {other.degree}"
            )

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        self._same_degree(other)
        return BinaryForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        self._same_degree(other)
        return BinaryForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "BinaryForm":
        return self.scale(-1)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        if not isinstance(other, BinaryForm):
            return NotImplemented
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return BinaryForm(tuple(out))

    def __pow__(self, exponent: int) -> "BinaryForm":
        result = BinaryForm((Fraction(1),))
        for _ in range(exponent):
            result = result * self
        return result

    def substitute(self, alpha, beta, gamma, delta) -> "BinaryForm":
        """Return f(alpha*x + gamma*z, beta*x + delta*z)"""
        first = BinaryForm((alpha, gamma))
        second = BinaryForm((beta, delta))
        d = self.degree
        result = BinaryForm.zero(d)
        for i, c in enumerate(self.coeffs):
            if c != 0:
                result = result + ((first ** (d - i)) * (second ** i)).scale(c)
        return result

    def to_poly(self, var: sympy.Symbol) -> sympy.Poly:
        """The dehomogenized polynomial f(var, 1) over QQ"""
        return sympy.Poly([to_sympy(c) for c in self.coeffs], var, domain=sympy.QQ)


def resultant(f: BinaryForm, g: BinaryForm) -> Fraction:
    """Resultant of the dehomogenized polynomials f(x, 1) and g(x, 1)"""
    x = sympy.Symbol("x")
    return from_sympy(sympy.resultant(f.to_poly(x).as_expr(), g.to_poly(x).as_expr(), x))


@dataclass(frozen=True)
class BiForm:
    """
    Bihomogeneous form of bidegree (d1, d2) in the pairs (x1, z1), (x2, z2).

    coeffs[i][j] multiplies x1^(d1-i) z1^i * x2^(d2-j) z2^j. A (2,2)-form
    defines a genus one curve in P1 x P1; its discriminants in either
    pair are binary quartics in the other.
    """

    coeffs: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_q(c) for c in row) for row in self.coeffs)
        if not rows or not rows[0] or len({len(r) for r in rows}) != 1:
            raise ValueError("BiForm coefficients must form a non-empty rectangle")
        object.__setattr__(self, "coeffs", rows)

    @classmethod
    def zero(cls, d1: int, d2: int) -> "BiForm":
        return cls(tuple((Fraction(0),) * (d2 + 1) for _ in range(d1 + 1)))

    @classmethod
    def outer(cls, f: BinaryForm, g: BinaryForm) -> "BiForm":
        """The form f(x1, z1) * g(x2, z2)"""
        return cls(tuple(tuple(a * b for b in g.coeffs) for a in f.coeffs))

    @property
    def degrees(self) -> Tuple[int, int]:
        return len(self.coeffs) - 1, len(self.coeffs[0]) - 1

    def is_zero(self) -> bool:
        return all(c == 0 for row in self.coeffs for c in row)

    def flat(self) -> List[Fraction]:
        return [c for row in self.coeffs for c in row]

    def evaluate(self, p1: Point, p2: Point) -> Fraction:
        d1, d2 = self.degrees
        m1 = _monomials(d1, _q(p1[0]), _q(p1[1]))
        m2 = _monomials(d2, _q(p2[0]), _q(p2[1]))
        return sum(
            (c * m1[i] * m2[j] for i, row in enumerate(self.coeffs) for j, c in enumerate(row)),
            Fraction(0),
        )

    def scale(self, factor) -> "BiForm":
        factor = _q(factor)
        return BiForm(tuple(tuple(factor * c for c in row) for row in self.coeffs))

    def _same_degrees(self, other: "BiForm"):
        if self.degrees != other.degrees:
            raise ValueError(f"bidegree mismatch: {self.degrees} and {other.degrees}")

    def __add__(self, other: "BiForm") -> "BiForm":
        self._same_degrees(other)
        return BiForm(tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs)
        ))

    def __sub__(self, other: "BiForm") -> "BiForm":
        self._same_degrees(other)
        return BiForm(tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs)
        ))

    def __neg__(self) -> "BiForm":
        return self.scale(-1)

    def __mul__(self, other: "BiForm") -> "BiForm":
        if not isinstance(other, BiForm):
            return NotImplemented
        (a1, a2), (b1, b2) = self.degrees, other.degrees
        out = [[Fraction(0)] * (a2 + b2 + 1) for _ in range(a1 + b1 + 1)]
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                if c == 0:
                    continue
                for k, other_row in enumerate(other.coeffs):
                    for l, e in enumerate(other_row):
                        if e != 0:
                            out[i + k][j + l] += c * e
        return BiForm(tuple(tuple(r) for r in out))

    def specialize(self, slot: int, x0, z0) -> BinaryForm:
        """Substitute the point (x0, z0) into variable pair `slot` (1 or 2)"""
        x0, z0 = check_point(x0, z0)
        d1, d2 = self.degrees
        if slot == 1:
            m = _monomials(d1, x0, z0)
            return BinaryForm(tuple(
                sum((m[i] * self.coeffs[i][j] for i in range(d1 + 1)), Fraction(0))
                for j in range(d2 + 1)
            ))
        if slot == 2:
            m = _monomials(d2, x0, z0)
            return BinaryForm(tuple(
                sum((m[j] * c for j, c in enumerate(row)), Fraction(0))
                for row in self.coeffs
            ))
        raise ValueError(f"slot must be 1 or 2, got {slot}")

    def diagonal(self) -> BinaryForm:
        """Restriction to x1 = x2, z1 = z2"""
        d1, d2 = self.degrees
        out = [Fraction(0)] * (d1 + d2 + 1)
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                out[i + j] += c
        return BinaryForm(tuple(out))

    def quadratic_in(self, slot: int) -> Tuple[BinaryForm, BinaryForm, BinaryForm]:
        """
        Write the form as A*x^2 + B*x*z + C*z^2 in pair `slot`.

        Returns:
            (A, B, C) as binary forms in the other pair
        """
        d1, d2 = self.degrees
        if slot == 1 and d1 == 2:
            return tuple(BinaryForm(self.coeffs[t]) for t in range(3))
        if slot == 2 and d2 == 2:
            return tuple(BinaryForm(tuple(row[t] for row in self.coeffs)) for t in range(3))
        raise ValueError(f"form is not quadratic in pair {slot}")

    def disc(self, slot: int) -> BinaryForm:
        a, b, c = self.quadratic_in(slot)
        return b * b - (a * c).scale(4)


def _index(slot: int, t: int, i: int, j: int) -> Tuple[int, int, int]:
    """Position in a 3x3x3 array: `t` in pair `slot`, (i, j) in the other two in order"""
    if slot == 1:
        return t, i, j
    if slot == 2:
        return i, t, j
    if slot == 3:
        return i, j, t
    raise ValueError(f"slot must be 1, 2 or 3, got {slot}")


@dataclass(frozen=True)
class Form222:
    """
    Trihomogeneous (2,2,2)-form.

    coeffs[i][j][k] multiplies
    x1^(2-i) z1^i * x2^(2-j) z2^j * x3^(2-k) z3^k.
    """

    coeffs: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        cube = tuple(tuple(tuple(_q(c) for c in line) for line in plane) for plane in self.coeffs)
        if len(cube) != 3 or any(len(p) != 3 or any(len(l) != 3 for l in p) for p in cube):
            raise ValueError("a (2,2,2)-form has a 3x3x3 coefficient array")
        object.__setattr__(self, "coeffs", cube)

    @classmethod
    def zero(cls) -> "Form222":
        return cls(tuple(tuple((Fraction(0),) * 3 for _ in range(3)) for _ in range(3)))

    @classmethod
    def from_flat(cls, values: Sequence) -> "Form222":
        values = list(values)
        if len(values) != 27:
            raise ValueError("a (2,2,2)-form has 27 coefficients")
        return cls(tuple(
            tuple(tuple(values[9 * i + 3 * j + k] for k in range(3)) for j in range(3))
            for i in range(3)
        ))

    def flat(self) -> List[Fraction]:
        """The 27 coefficients in (i, j, k) lexicographic order"""
        return [c for plane in self.coeffs for line in plane for c in line]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.flat())

    def scale(self, factor) -> "Form222":
        factor = _q(factor)
        return Form222.from_flat([factor * c for c in self.flat()])

    def evaluate(self, p1: Point, p2: Point, p3: Point) -> Fraction:
        m1, m2, m3 = (_monomials(2, _q(p[0]), _q(p[1])) for p in (p1, p2, p3))
        total = Fraction(0)
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    c = self.coeffs[i][j][k]
                    if c:
                        total += c * m1[i] * m2[j] * m3[k]
        return total

    def quadratic_in(self, slot: int) -> Tuple[BiForm, BiForm, BiForm]:
        """
        Write F as A*x_k^2 + B*x_k*z_k + C*z_k^2 for k = slot.

        A, B, C are (2,2)-forms in the two remaining pairs, kept in
        ascending order.
        """
        parts = []
        for t in range(3):
            rows = []
            for i in range(3):
                row = []
                for j in range(3):
                    a, b, c = _index(slot, t, i, j)
                    row.append(self.coeffs[a][b][c])
                rows.append(tuple(row))
            parts.append(BiForm(tuple(rows)))
        return tuple(parts)

    def disc(self, slot: int) -> BiForm:
        """B^2 - 4AC with F read as a quadratic in pair `slot`; a (4,4)-form"""
        a, b, c = self.quadratic_in(slot)
        return b * b - (a * c).scale(4)

    def specialize(self, slot: int, x0, z0) -> BiForm:
        x0, z0 = check_point(x0, z0)
        a, b, c = self.quadratic_in(slot)
        return a.scale(x0 * x0) + b.scale(x0 * z0) + c.scale(z0 * z0)

    def specialize2(self, slot_j: int, pt_j: Point, slot_k: int, pt_k: Point) -> BinaryForm:
        """Specialize two pairs, leaving a binary quadratic in the third"""
        if slot_j == slot_k:
            raise ValueError("the two slots must differ")
        rest = self.specialize(slot_j, *pt_j)
        remaining = [s for s in (1, 2, 3) if s != slot_j]
        return rest.specialize(remaining.index(slot_k) + 1, *pt_k)


def proportionality(f, g) -> Optional[Fraction]:
    """
    The constant c with f = c*g, or None when the forms are not proportional.

    Works for any of the form classes above (compared through flat()).
    """
    fs, gs = f.flat(), g.flat()
    if len(fs) != len(gs):
        return None
    pivot = next((i for i, c in enumerate(gs) if c != 0), None)
    if pivot is None:
        return Fraction(0) if all(c == 0 for c in fs) else None
    ratio = fs[pivot] / gs[pivot]
    if all(a == ratio * b for a, b in zip(fs, gs)):
        return ratio
    return None
