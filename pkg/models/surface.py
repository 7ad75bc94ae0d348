"""
The (2,2,2)-forms attached to a Selmer triple.

H1(x1,z1) H2(x2,z2) H3(x3,z3) / m = F0 + F1*phi + F2*phi^2, and F2 = 0
cuts out a Kummer surface in (P1)^3.
"""
from fractions import Fraction
from typing import Tuple

from models.forms import Form222
from models.pairing import SelmerTriple
from models.quartic import gh_forms


def surface_components(t: SelmerTriple) -> Tuple[Form222, Form222, Form222]:
    algebra = t.algebra
    h1, h2, h3 = (gh_forms(g, algebra)[1] for g in t.quartics)
    m_inv = t.m.inverse()
    cube = [[[h1.coeffs[i] * h2.coeffs[j] * h3.coeffs[k] * m_inv for k in range(3)]
             for j in range(3)] for i in range(3)]
    return tuple(
        Form222(tuple(tuple(tuple(cube[i][j][k].coeffs[n] for k in range(3))
                            for j in range(3)) for i in range(3)))
        for n in range(3)
    )


def surface_form(t: SelmerTriple) -> Form222:
    """F2; its specialization at (1,0) in pairs 2 and 3 is gamma1"""
    return surface_components(t)[2]


def kummer_form(a, b) -> Form222:
    """
    Homogenized (a - s2)^2 - 4*s1*(b + s3) for y^2 = x^3 + a*x + b, where
    s1, s2, s3 are the elementary symmetric functions of x1, x2, x3.

    Read as W0*x3^2 - W1*x3*z3 + W2*z3^2, the (2,2)-forms W0, W1, W2 are
    recovered with quadratic_in(3).
    """
    a, b = Fraction(a), Fraction(b)
    w0 = {(0, 2): 1, (1, 1): -2, (2, 0): 1}
    w1 = {(0, 1): 2, (1, 0): 2, (1, 2): 2 * a, (2, 1): 2 * a, (2, 2): 4 * b}
    w2 = {(0, 0): 1, (1, 1): -2 * a, (1, 2): -4 * b, (2, 1): -4 * b, (2, 2): a * a}
    cube = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            cube[i][j][0] = Fraction(w0.get((i, j), 0))
            cube[i][j][1] = -Fraction(w1.get((i, j), 0))
            cube[i][j][2] = Fraction(w2.get((i, j), 0))
    return Form222(tuple(tuple(tuple(row) for row in plane) for plane in cube))
