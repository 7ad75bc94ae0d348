"""
Reference quartics shared by the test suites.
"""
from models.quartic import BinaryQuartic

# Quartics representing three 2-Selmer classes of the curve 571a1 summing to zero
CURVE_571A1 = (
    BinaryQuartic.of(-11, 68, -52, -164, -64),
    BinaryQuartic.of(-4, -60, -232, -52, -3),
    BinaryQuartic.of(-31, -78, 32, 102, -53),
)

INVARIANTS_571A1 = (44608, 18842960)

# x^3 z - x z^3: I = 3, J = 0, the cubic algebra splits completely
SPLIT_QUARTIC = BinaryQuartic.of(0, 1, 0, -1, 0)


def weierstrass_quartic(a, b) -> BinaryQuartic:
    """x^3 z + a x z^3 + b z^4, whose Jacobian is y^2 = x^3 + a x + b up to scaling"""
    return BinaryQuartic.of(0, 1, 0, a, b)
