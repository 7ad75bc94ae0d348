import os
import random
import sys
from fractions import Fraction

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest
import sympy

from models.errors import (
    InvariantMismatchError,
    SingularActionError,
    SingularQuarticError,
    ZeroPointError,
)
from models.forms import BinaryForm
from models.quartic import (
    BinaryQuartic,
    GL2Action,
    JacobianCurve,
    apply,
    check_identities,
    covering_x,
    cubic_algebra,
    discriminant,
    gh_forms,
    hessian,
    invariants,
    make_unit,
    z_invariant,
)
from utils.curves import CURVE_571A1, INVARIANTS_571A1, SPLIT_QUARTIC
from utils.local_solubility import find_local_point
from utils.padic import Place, is_square
from utils.rationals import is_rational_square


def random_quartic(rng, size=12):
    while True:
        g = BinaryQuartic(tuple(Fraction(rng.randint(-size, size)) for _ in range(5)))
        if discriminant(g) != 0:
            return g


def random_action(rng):
    while True:
        values = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(5)]
        try:
            return GL2Action(*values)
        except SingularActionError:
            continue


def test_invariants_of_split_quartic():
    assert invariants(SPLIT_QUARTIC) == (3, 0)
    assert discriminant(SPLIT_QUARTIC) == 64


def test_invariants_of_571a1():
    for g in CURVE_571A1:
        assert invariants(g) == INVARIANTS_571A1
    assert discriminant(CURVE_571A1[0]) == -(2 ** 12) * 571


def test_singular_quartic():
    assert discriminant(BinaryQuartic.of(0, 0, 1, 0, 0)) == 0


def test_hessian_of_sum_of_fourth_powers():
    assert hessian(BinaryQuartic.of(1, 0, 0, 0, 1)).coeffs == (0, 0, -48, 0, 0)


def test_hessian_matches_second_derivatives():
    rng = random.Random(3)
    x, z = sympy.symbols("x z")
    for _ in range(25):
        g = random_quartic(rng)
        expr = sum(int(c) * x ** (4 - i) * z ** i for i, c in enumerate(g.coeffs))
        det = sympy.diff(expr, x, 2) * sympy.diff(expr, z, 2) - sympy.diff(expr, x, z) ** 2
        oracle = sympy.Poly(sympy.expand(-det / 3), x, z)
        h = hessian(g)
        for i, c in enumerate(h.coeffs):
            assert oracle.coeff_monomial(x ** (4 - i) * z ** i) == sympy.Rational(c.numerator, c.denominator)


def test_cubic_algebra_factorizations():
    assert cubic_algebra(3, 0).factor_degrees == (1, 1, 1)
    assert cubic_algebra(*INVARIANTS_571A1).factor_degrees == (3,)
    assert cubic_algebra(0, 2).factor_degrees == (3,)
    with pytest.raises(SingularQuarticError):
        cubic_algebra(0, 0)


def test_z_invariant_examples():
    L = cubic_algebra(3, 0)
    assert z_invariant(SPLIT_QUARTIC, L) == L.one()
    L = cubic_algebra(*INVARIANTS_571A1)
    assert z_invariant(CURVE_571A1[0], L) == L.element(Fraction(9296, 3), Fraction(-44, 3))


def test_z_invariant_rejects_other_algebra():
    with pytest.raises(InvariantMismatchError):
        z_invariant(CURVE_571A1[0], cubic_algebra(3, 0))


def test_gh_identities_on_571a1():
    L = cubic_algebra(*INVARIANTS_571A1)
    for g in CURVE_571A1:
        G, H = gh_forms(g, L)
        assert G.scale(G.coeffs[0]) == H * H
        assert H.coeffs[0] == z_invariant(g, L)


def test_identity_suite_on_random_quartics():
    rng = random.Random(2024)
    for _ in range(200):
        g = random_quartic(rng)
        L = cubic_algebra(*invariants(g))
        check_identities(g, L)
        G, H = gh_forms(g, L)
        z = z_invariant(g, L)
        assert G.coeffs[0] == H.coeffs[0] == z
        assert G.scale(z) == H * H


def test_invariants_transform_under_actions():
    rng = random.Random(99)
    for _ in range(50):
        g = random_quartic(rng)
        T = random_action(rng)
        I, J = invariants(g)
        I2, J2 = invariants(apply(T, g))
        assert I2 == (T.lam * T.det) ** 4 * I
        assert J2 == (T.lam * T.det) ** 6 * J


def test_proper_actions_preserve_invariants():
    T = GL2Action(1, 2, 1, 1, 1)
    assert T.is_proper
    for g in CURVE_571A1:
        assert invariants(apply(T, g)) == INVARIANTS_571A1


def test_apply_identity_and_swap():
    g = BinaryQuartic.of(1, 0, 0, 0, 2)
    assert apply(GL2Action.identity(), g) == g
    assert apply(GL2Action(1, 0, 1, 1, 0), g).coeffs == (2, 0, 0, 0, 1)


def test_compose_matches_sequential_application():
    rng = random.Random(17)
    for _ in range(10):
        g = random_quartic(rng)
        S, T = random_action(rng), random_action(rng)
        assert apply(S.compose(T), g) == apply(S, apply(T, g))


def test_singular_action():
    with pytest.raises(SingularActionError):
        GL2Action(1, 1, 2, 2, 4)


def test_covering_x_lands_on_jacobian():
    g = BinaryQuartic.of(0, 1, 0, 0, -2)
    xi = covering_x(g, 3, 1)
    assert xi == Fraction(1161, 100)
    curve = JacobianCurve.from_quartic(g)
    assert curve.rhs(xi) == Fraction(10341, 1000) ** 2
    assert curve.contains_x(xi)


def test_covering_x_rejects_roots():
    with pytest.raises(ZeroPointError):
        covering_x(SPLIT_QUARTIC, 1, 1)
    with pytest.raises(ZeroPointError):
        covering_x(SPLIT_QUARTIC, 0, 0)


def test_make_unit_keeps_unit_quartic():
    L = cubic_algebra(3, 0)
    action, moved = make_unit(SPLIT_QUARTIC, L)
    assert action == GL2Action.identity()
    assert moved == SPLIT_QUARTIC


def test_make_unit_after_random_proper_actions():
    rng = random.Random(8)
    L = cubic_algebra(3, 0)
    for _ in range(10):
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        T = GL2Action(1, 1, a, 0, 1).compose(GL2Action(1, 1, 0, b, 1))
        g = apply(T, SPLIT_QUARTIC)
        action, moved = make_unit(g, L)
        assert action.is_proper
        assert z_invariant(moved, L).is_unit()
        assert invariants(moved) == (3, 0)


def singular_quartic(rng):
    r = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    linear = BinaryForm((1, -r))
    quadratic = BinaryForm(tuple(Fraction(rng.randint(-6, 6)) for _ in range(3)))
    return BinaryQuartic.from_form(linear ** 2 * quadratic)


def test_discriminant_detects_repeated_roots_of_the_cubic():
    rng = random.Random(17)
    X = sympy.Symbol("X")
    for index in range(200):
        g = singular_quartic(rng) if index % 4 == 0 else BinaryQuartic(
            tuple(Fraction(rng.randint(-6, 6)) for _ in range(5))
        )
        I, J = (sympy.Rational(v.numerator, v.denominator) for v in invariants(g))
        f = sympy.Poly(X ** 3 - 3 * I * X + J, X)
        squarefree = sympy.resultant(f, f.diff(X)) != 0
        assert (discriminant(g) != 0) == squarefree
        if squarefree:
            algebra = cubic_algebra(*invariants(g))
            assert algebra.discriminant == Fraction(str(sympy.discriminant(f)))
            assert discriminant(g) == Fraction(16, 729) * algebra.discriminant
        if index % 4 == 0:
            assert discriminant(g) == 0


def test_covering_x_value_is_g_times_a_square():
    g1 = CURVE_571A1[0]
    curve = JacobianCurve.from_quartic(g1)
    rng = random.Random(23)
    for _ in range(100):
        x, z = Fraction(rng.randint(-50, 50), rng.randint(1, 20)), Fraction(rng.randint(1, 20))
        value = g1.evaluate(x, z)
        if value == 0:
            continue
        assert is_rational_square(curve.rhs(covering_x(g1, x, z)) / value)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_covering_x_at_local_points_of_g1(p):
    g1 = CURVE_571A1[0]
    curve = JacobianCurve.from_quartic(g1)
    gamma = BinaryForm((1, 1, 1))
    for skip in range(4):
        point = find_local_point(g1, gamma, Place(p), skip=skip)
        assert is_square(curve.rhs(covering_x(g1, point.x, point.z)), Place(p))
