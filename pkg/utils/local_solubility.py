"""
Local solubility of y^2 = g(x, z) and local point search.

p-adic points are searched over disks x0 + p^k Z_p in two charts: (x, 1)
with x in Z_p and (1, t) with t in pZ_p. A disk is settled once the
square class of g is constant on it (leading Taylor term dominates) or
once Hensel's lemma puts a root of g inside it.
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import comb, floor, gcd, lcm
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import sympy

from engine_config import EngineSettings, get_settings
from models.errors import LocalInsolubilityError, LocalSearchError, ZeroFormError
from models.forms import BinaryForm
from models.quartic import require_nonsingular
from utils.padic import Place, square_class
from utils.rationals import from_sympy

logger = logging.getLogger(__name__)

AFFINE = "affine"  # points (x, 1), x in Z_p
AT_INFINITY = "infinity"  # points (1, t), t in pZ_p

# 2-adic precision of the roots lifted by square_completion_disk
DYADIC_LIFT = 64


@dataclass(frozen=True)
class LocalPoint:
    """
    Exact rational point (x, z) used at one place.

    precision is the level k of the p-adic disk x0 + p^k Z_p on which the
    square classes of g and gamma were certified constant; None at the
    real place, where the point is an exact witness.
    """

    place: Place
    x: Fraction
    z: Fraction
    precision: Optional[int]


@dataclass(frozen=True)
class Disk:
    chart: str
    center: int
    level: int

    def point(self) -> Tuple[Fraction, Fraction]:
        if self.chart == AFFINE:
            return Fraction(self.center), Fraction(1)
        return Fraction(1), Fraction(self.center)

    def children(self, p: int) -> List["Disk"]:
        step = p ** self.level
        return [Disk(self.chart, self.center + j * step, self.level + 1) for j in range(p)]


def _ord(n: int, p: int) -> Optional[int]:
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def integral_charts(form: BinaryForm) -> Dict[str, List[int]]:
    """
    Ascending integer coefficient lists of form(t, 1) and form(1, t),
    after clearing denominators by a square factor.
    """
    den = lcm(*(c.denominator for c in form.coeffs))
    scaled = [int(c * den * den) for c in form.coeffs]
    return {AFFINE: scaled[::-1], AT_INFINITY: scaled}


def taylor(poly: Sequence[int], center: int, level: int, p: int) -> List[int]:
    """Coefficients of P(center + p^level * s) in s"""
    step = p ** level
    out = []
    scale = 1
    for i in range(len(poly)):
        ci = sum(comb(j, i) * poly[j] * center ** (j - i) for j in range(i, len(poly)))
        out.append(ci * scale)
        scale *= step
    return out


def constant_class(poly: Sequence[int], disk: Disk, p: int) -> Optional[int]:
    """
    Square class of P on the disk when it is provably constant, else None.

    The class is constant once every non-constant Taylor term is smaller
    than the constant term by a factor p (p odd) or 8 (p = 2).
    """
    coeffs = taylor(poly, disk.center, disk.level, p)
    if coeffs[0] == 0:
        return None
    lam = _ord(coeffs[0], p)
    rest = [_ord(c, p) for c in coeffs[1:] if c != 0]
    margin = 3 if p == 2 else 1
    if rest and min(rest) - lam < margin:
        return None
    return square_class(coeffs[0], Place(p))


def _value(poly: Sequence[int], x: int) -> int:
    return sum(c * x ** j for j, c in enumerate(poly))


def _slope(poly: Sequence[int], x: int) -> int:
    return sum(j * c * x ** (j - 1) for j, c in enumerate(poly) if j)


def hensel_root(poly: Sequence[int], center: int, level: int, p: int) -> bool:
    """True if Hensel's lemma places a root of P in center + p^level Z_p"""
    value = _value(poly, center)
    if value == 0:
        return True
    slope = _slope(poly, center)
    if slope == 0:
        return False
    v0, v1 = _ord(value, p), _ord(slope, p)
    return v0 > 2 * v1 and v0 - v1 >= level


def square_completion_disk(poly: Sequence[int]) -> Optional[Disk]:
    """
    Affine 2-adic disk on which the quartic P = h^2 + 4q is a nonzero square.

    h runs over quadratics with 0/1 coefficients making P - h^2 divisible
    by 4. The disk is centred on a root x0 of q with q'(x0) odd and is deep
    enough that 4q/h^2 is divisible by 8 throughout.
    """
    if len(poly) != 5:
        return None
    modulus = 2 ** DYADIC_LIFT
    for h in itertools.product((0, 1), repeat=3):
        h_sq = [0] * 5
        for i, j in itertools.product(range(3), repeat=2):
            h_sq[i + j] += h[i] * h[j]
        diff = [a - b for a, b in zip(poly, h_sq)]
        if any(d % 4 for d in diff):
            continue
        q = [d // 4 for d in diff]
        for start in (0, 1):
            if _value(q, start) % 2 or _slope(q, start) % 2 == 0:
                continue
            x0 = start
            while _value(q, x0) % modulus:
                x0 = (x0 - _value(q, x0) * pow(_slope(q, x0), -1, modulus)) % modulus
            h_value = _value(h, x0) % modulus
            if h_value == 0:
                continue
            level = 2 * _ord(h_value, 2) + 1
            if level > DYADIC_LIFT:
                continue
            return Disk(AFFINE, x0 % 2 ** level, level)
    return None


def _root_disks() -> List[Disk]:
    return [Disk(AFFINE, 0, 0), Disk(AT_INFINITY, 0, 1)]


def _soluble_at_prime(g: BinaryForm, p: int, max_depth: int) -> bool:
    charts = integral_charts(g)
    frontier = _root_disks()
    for depth in range(max_depth + 1):
        next_frontier = []
        for disk in frontier:
            poly = charts[disk.chart]
            cls = constant_class(poly, disk, p)
            if cls is not None:
                if cls == 1:
                    return True
                continue
            if hensel_root(poly, disk.center, disk.level, p):
                return True
            next_frontier.extend(disk.children(p))
        if not next_frontier:
            return False
        frontier = next_frontier
    raise LocalSearchError(f"disk descent at p={p} did not settle within depth {max_depth}")


def _soluble_at_infinity(g: BinaryForm) -> bool:
    if g.coeffs[0] >= 0:
        return True
    x = sympy.Symbol("x")
    return bool(g.to_poly(x).count_roots() > 0)


def is_locally_soluble(
    g: BinaryForm, place: Place, settings: Optional[EngineSettings] = None
) -> bool:
    """
    Whether y^2 = g(x, z) has a point over Q_v.

    Raises:
        SingularQuarticError: if g has a repeated root
    """
    settings = settings or get_settings()
    require_nonsingular(g)
    if place.is_infinite:
        return _soluble_at_infinity(g)
    return _soluble_at_prime(g, place.prime, settings.max_disk_depth)


def simplest_between(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    """
    Rational of least height in the open interval (lo, hi); None is an infinite end.
    """
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(0) if hi > 0 else Fraction(-floor(-hi) - 1)
    if hi is None:
        return Fraction(0) if lo < 0 else Fraction(floor(lo) + 1)
    if lo >= hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    base = floor(lo)
    if base + 1 < hi:
        return Fraction(base + 1)
    if lo == base:
        return base + 1 / simplest_between(1 / (hi - base), None)
    return base + 1 / simplest_between(1 / (hi - base), 1 / (lo - base))


def _height_scan(max_height: int) -> Iterator[Tuple[int, int]]:
    """Primitive (x, z) by height max(|x|, z), z >= 0, starting with (1, 0)"""
    yield 1, 0
    for height in range(1, max_height + 1):
        for z in range(1, height + 1):
            xs = range(-height, height + 1) if z == height else (-height, height)
            for x in xs:
                if gcd(x, z) == 1:
                    yield x, z


def _positive_regions(g: BinaryForm) -> List[Tuple[Optional[Fraction], Optional[Fraction]]]:
    """Open intervals of x/z, free of real roots of g, on which g(x, 1) > 0"""
    x = sympy.Symbol("x")
    poly = g.to_poly(x)
    bounds = []
    for (lo, hi), _ in poly.intervals(eps=sympy.Rational(1, 2 ** 16)):
        bounds.append((from_sympy(lo), from_sympy(hi)))
    edges = [None] + [b for pair in bounds for b in pair] + [None]
    regions = []
    for lo, hi in zip(edges[0::2], edges[1::2]):
        if lo is not None and hi is not None and lo >= hi:
            continue
        t = simplest_between(lo, hi)
        if g.evaluate(t, 1) > 0:
            regions.append((lo, hi))
    return regions


def _interval_points(g: BinaryForm, gamma: BinaryForm) -> Iterator[Tuple[Fraction, Fraction]]:
    for region in _positive_regions(g):
        queue = deque([region])
        while queue:
            lo, hi = queue.popleft()
            t = simplest_between(lo, hi)
            if gamma.evaluate(t, 1) != 0:
                yield t, Fraction(1)
            queue.append((lo, t))
            queue.append((t, hi))


def _real_point(g, gamma, skip, settings) -> LocalPoint:
    place = Place.infinity()
    if not _soluble_at_infinity(g):
        raise LocalInsolubilityError("g is negative definite", place=place)
    seen = 0
    for x, z in _height_scan(settings.real_search_height):
        if g.evaluate(x, z) > 0 and gamma.evaluate(x, z) != 0:
            if seen == skip:
                return LocalPoint(place, Fraction(x), Fraction(z), None)
            seen += 1
    logger.debug("no real point up to height %d, using root isolation", settings.real_search_height)
    for x, z in _interval_points(g, gamma):
        if seen == skip:
            return LocalPoint(place, x, z, None)
        seen += 1
    raise LocalSearchError("no real point found")


def find_local_point(
    g: BinaryForm,
    gamma: BinaryForm,
    place: Place,
    skip: int = 0,
    disk: Optional[Tuple[int, int]] = None,
    settings: Optional[EngineSettings] = None,
) -> LocalPoint:
    """
    Find a point where g is a nonzero square and gamma does not vanish.

    Args:
        g: binary quartic
        gamma: binary quadratic, not identically zero
        place: where to search
        skip: number of acceptable points to pass over (re-selection)
        disk: optional (center, level) restricting the affine chart search
        settings: engine limits

    At p = 2 the search starts inside square_completion_disk when g has one.
    Accepted disks keep being subdivided, so every skip value is served by
    deeper certified points.

    Returns:
        LocalPoint, certified on its disk for p-adic places
    """
    settings = settings or get_settings()
    if gamma.is_zero():
        raise ZeroFormError("gamma is identically zero")
    if place.is_infinite:
        return _real_point(g, gamma, skip, settings)

    p = place.prime
    charts = integral_charts(g)
    gamma_charts = integral_charts(gamma)
    if disk:
        frontier = [Disk(AFFINE, *disk)]
    else:
        preferred = square_completion_disk(charts[AFFINE]) if p == 2 else None
        frontier = [preferred] if preferred else _root_disks()
    remaining = skip
    for depth in range(settings.max_disk_depth + 1):
        accepted = []
        next_frontier = []
        for d in frontier:
            cls = constant_class(charts[d.chart], d, p)
            if cls is not None and cls != 1:
                continue
            if cls == 1:
                gamma_cls = constant_class(gamma_charts[d.chart], d, p)
                if gamma_cls is not None:
                    lead = taylor(gamma_charts[d.chart], d.center, d.level, p)[0]
                    accepted.append((_ord(lead, p), d))
                    # subdisks stay certified; the first child repeats this centre
                    next_frontier.extend(d.children(p)[1:])
                    continue
            next_frontier.extend(d.children(p))
        accepted.sort(key=lambda item: item[0])
        if remaining < len(accepted):
            chosen = accepted[remaining][1]
            x, z = chosen.point()
            logger.debug("p=%d: point (%s, %s) on disk level %d", p, x, z, chosen.level)
            return LocalPoint(place, x, z, chosen.level)
        remaining -= len(accepted)
        if not next_frontier:
            raise LocalInsolubilityError(f"no {p}-adic point with g a nonzero square", place=place)
        frontier = next_frontier
    raise LocalSearchError(f"no certified {p}-adic point within depth {settings.max_disk_depth}")
