"""
Invariant theory of binary quartics g = a x^4 + b x^3 z + c x^2 z^2 + d x z^3 + e z^4.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Tuple

from engine_config import EngineSettings, get_settings
from models.errors import (
    IdentityCheckError,
    InvariantMismatchError,
    NormalizationError,
    SingularActionError,
    SingularQuarticError,
    ZeroPointError,
)
from models.etale import AlgElement, BinaryFormL, CubicAlgebra
from models.forms import BinaryForm, _q, check_point
from utils.rationals import is_rational_square

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BinaryQuartic(BinaryForm):
    def __post_init__(self):
        super().__post_init__()
        if len(self.coeffs) != 5:
            raise ValueError(f"a binary quartic has 5 coefficients, got {len(self.coeffs)}")

    @classmethod
    def of(cls, a, b, c, d, e) -> "BinaryQuartic":
        return cls((a, b, c, d, e))

    @classmethod
    def from_form(cls, form: BinaryForm) -> "BinaryQuartic":
        return cls(form.coeffs)

    a = property(lambda self: self.coeffs[0])
    b = property(lambda self: self.coeffs[1])
    c = property(lambda self: self.coeffs[2])
    d = property(lambda self: self.coeffs[3])
    e = property(lambda self: self.coeffs[4])


@dataclass(frozen=True)
class GL2Action:
    """
    g -> lam^2 * g(alpha*x + gamma*z, beta*x + delta*z).

    The substitution matrix acts on the row vector (x, z) from the right.
    """

    lam: Fraction
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction

    def __post_init__(self):
        for name in ("lam", "alpha", "beta", "gamma", "delta"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        if self.lam == 0 or self.det == 0:
            raise SingularActionError(f"singular action {self}")

    @classmethod
    def identity(cls) -> "GL2Action":
        return cls(1, 1, 0, 0, 1)

    @property
    def det(self) -> Fraction:
        return self.alpha * self.delta - self.beta * self.gamma

    @property
    def is_proper(self) -> bool:
        return abs(self.lam * self.det) == 1

    def compose(self, other: "GL2Action") -> "GL2Action":
        """Action equal to applying `other` first and then `self`"""
        return GL2Action(
            self.lam * other.lam,
            self.alpha * other.alpha + self.beta * other.gamma,
            self.alpha * other.beta + self.beta * other.delta,
            self.gamma * other.alpha + self.delta * other.gamma,
            self.gamma * other.beta + self.delta * other.delta,
        )


@dataclass(frozen=True)
class JacobianCurve:
    """y^2 = x^3 - 27*I*x - 27*J"""

    I: Fraction
    J: Fraction

    def __post_init__(self):
        object.__setattr__(self, "I", _q(self.I))
        object.__setattr__(self, "J", _q(self.J))
        if 4 * self.I ** 3 == self.J ** 2:
            raise SingularQuarticError("4I^3 = J^2: the curve is singular")

    @classmethod
    def from_quartic(cls, g: BinaryForm) -> "JacobianCurve":
        return cls(*invariants(g))

    def rhs(self, x) -> Fraction:
        x = _q(x)
        return x ** 3 - 27 * self.I * x - 27 * self.J

    def contains_x(self, x) -> bool:
        return is_rational_square(self.rhs(x))


def _as_quartic(g: BinaryForm) -> BinaryQuartic:
    return g if isinstance(g, BinaryQuartic) else BinaryQuartic.from_form(g)


def invariants(g: BinaryForm) -> Tuple[Fraction, Fraction]:
    a, b, c, d, e = _as_quartic(g).coeffs
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e - 27 * a * d * d - 27 * b * b * e + 9 * b * c * d - 2 * c ** 3
    return I, J


def discriminant(g: BinaryForm) -> Fraction:
    I, J = invariants(g)
    return Fraction(16, 27) * (4 * I ** 3 - J ** 2)


def is_nonsingular(g: BinaryForm) -> bool:
    return discriminant(g) != 0


def require_nonsingular(g: BinaryForm):
    if not is_nonsingular(g):
        raise SingularQuarticError(f"quartic {format_quartic(g)} has discriminant 0")


def format_quartic(g: BinaryForm) -> str:
    return "(" + ", ".join(str(c) for c in g.coeffs) + ")"


def hessian(g: BinaryForm) -> BinaryQuartic:
    a, b, c, d, e = _as_quartic(g).coeffs
    return BinaryQuartic.of(
        3 * b * b - 8 * a * c,
        4 * (b * c - 6 * a * d),
        2 * (2 * c * c - 24 * a * e - 3 * b * d),
        4 * (c * d - 6 * b * e),
        3 * d * d - 8 * c * e,
    )


def cubic_algebra(I, J) -> CubicAlgebra:
    """L = Q[phi]/(phi^3 - 3*I*phi + J); rejects 4I^3 = J^2"""
    return CubicAlgebra(_q(I), _q(J))


def _check_parent(g: BinaryForm, algebra: CubicAlgebra):
    I, J = invariants(g)
    if (I, J) != (algebra.I, algebra.J):
        raise InvariantMismatchError(
            f"quartic has invariants ({I}, {J}) but the algebra is built on ({algebra.I}, {algebra.J})"
        )


def z_invariant(g: BinaryForm, algebra: CubicAlgebra) -> AlgElement:
    """z(g) = (4*a*phi + 3*b^2 - 8*a*c) / 3"""
    _check_parent(g, algebra)
    a, b, c, _, _ = _as_quartic(g).coeffs
    return algebra.element(Fraction(3 * b * b - 8 * a * c, 3), Fraction(4 * a, 3))


def gh_forms(g: BinaryForm, algebra: CubicAlgebra) -> Tuple[BinaryFormL, BinaryFormL]:
    """
    G = (4*phi*g + h)/3 and the quadratic H with G(1,0)*G = H^2.

    Returns:
        (G, H) as forms over L of degrees 4 and 2
    """
    _check_parent(g, algebra)
    h = hessian(g)
    G = BinaryFormL(algebra, tuple(
        algebra.element(hk / 3, 4 * gk / 3) for gk, hk in zip(g.coeffs, h.coeffs)
    ))
    correction = algebra.element(2 * algebra.I / 9, 0, Fraction(-2, 9))
    H = BinaryFormL(algebra, (
        G.coeffs[0],
        G.coeffs[1] * Fraction(1, 2),
        G.coeffs[2] * Fraction(1, 6) + correction,
    ))
    return G, H


def check_identities(g: BinaryForm, algebra: CubicAlgebra):
    """
    Raise IdentityCheckError unless z(g) = G(1,0) = H(1,0) and G(1,0)*G = H^2.
    """
    G, H = gh_forms(g, algebra)
    z = z_invariant(g, algebra)
    if not (z == G.coeffs[0] == H.coeffs[0]):
        raise IdentityCheckError(f"z(g) differs from G(1,0) for {format_quartic(g)}")
    if G.scale(G.coeffs[0]) != H * H:
        raise IdentityCheckError(f"G(1,0)*G != H^2 for {format_quartic(g)}")


def apply(action: GL2Action, g: BinaryForm) -> BinaryQuartic:
    moved = g.substitute(action.alpha, action.beta, action.gamma, action.delta)
    return BinaryQuartic.from_form(moved.scale(action.lam ** 2))


def covering_x(g: BinaryForm, x, z) -> Fraction:
    """
    x-coordinate 3h(x,z) / (4g(x,z)) on y^2 = x^3 - 27Ix - 27J of the
    image of a point above (x, z).

    Raises:
        ZeroPointError: at (0, 0) or where g vanishes (the image is 2-torsion)
    """
    x, z = check_point(x, z)
    value = g.evaluate(x, z)
    if value == 0:
        raise ZeroPointError(f"g vanishes at ({x}, {z}); its image is a 2-torsion point")
    return 3 * hessian(g).evaluate(x, z) / (4 * value)


def unimodular_actions(max_height: int) -> Iterator[GL2Action]:
    """Integer matrices of determinant +-1 by increasing height, identity first"""
    yield GL2Action.identity()
    for height in range(1, max_height + 1):
        entries = range(-height, height + 1)
        for alpha, beta, gamma, delta in itertools.product(entries, repeat=4):
            if max(abs(alpha), abs(beta), abs(gamma), abs(delta)) != height:
                continue
            if abs(alpha * delta - beta * gamma) != 1:
                continue
            if (alpha, beta, gamma, delta) == (1, 0, 0, 1):
                continue
            yield GL2Action(1, alpha, beta, gamma, delta)


def make_unit(
    g: BinaryForm,
    algebra: CubicAlgebra,
    settings: Optional[EngineSettings] = None,
    require_leading: bool = False,
) -> Tuple[GL2Action, BinaryQuartic]:
    """
    Find a proper action after which z(g) is a unit of L.

    With require_leading the transformed quartic must also have g(1,0) != 0.

    Raises:
        NormalizationError: if no action up to the configured height works
    """
    settings = settings or get_settings()
    require_nonsingular(g)
    for action in unimodular_actions(settings.make_unit_height):
        moved = apply(action, g)
        if require_leading and moved.coeffs[0] == 0:
            continue
        if z_invariant(moved, algebra).is_unit():
            if action != GL2Action.identity():
                logger.debug("z(g) made a unit by %s", action)
            return action, moved
    raise NormalizationError(
        f"no unimodular action of height <= {settings.make_unit_height} makes z(g) a unit"
    )
