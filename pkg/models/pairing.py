"""
Cassels-Tate pairing of 2-Selmer elements given by binary quartics.

For a triple g1, g2, g3 with the same invariants and
z(g1) z(g2) z(g3) = m^2, write (z(g2) z(g3) / m) * H1 as
alpha1 + beta1*phi + gamma1*phi^2. The pairing of [g1] and [g2] is the
product over the bad places v of (g2(1,0), gamma1(P_v))_v, where P_v is a
local point with g1(P_v) a nonzero square.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import sympy

from engine_config import EngineSettings, get_settings
from models.errors import (
    InvariantMismatchError,
    LocalInsolubilityError,
    NonSquareError,
)
from models.etale import AlgElement, CubicAlgebra, sqrt
from models.forms import BinaryForm
from models.quartic import (
    BinaryQuartic,
    GL2Action,
    check_identities,
    cubic_algebra,
    discriminant,
    format_quartic,
    gh_forms,
    invariants,
    make_unit,
    require_nonsingular,
    z_invariant,
)
from utils.local_solubility import LocalPoint, find_local_point, is_locally_soluble
from utils.padic import Place, hilbert, square_class
from utils.rationals import prime_support

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SelmerTriple:
    g1: BinaryQuartic
    g2: BinaryQuartic
    g3: BinaryQuartic
    algebra: CubicAlgebra
    m: AlgElement
    actions: Tuple[GL2Action, GL2Action, GL2Action] = (
        GL2Action.identity(), GL2Action.identity(), GL2Action.identity()
    )
    square_roots: Tuple[AlgElement, ...] = ()

    def __post_init__(self):
        for g in (self.g1, self.g2, self.g3):
            if invariants(g) != (self.algebra.I, self.algebra.J):
                raise InvariantMismatchError(f"{format_quartic(g)} does not match the algebra")
        product = self.z_product()
        if self.m * self.m != product:
            raise NonSquareError("m^2 differs from z(g1) z(g2) z(g3)")
        if not self.m.is_unit():
            raise NonSquareError("m is not a unit")

    @property
    def quartics(self) -> Tuple[BinaryQuartic, BinaryQuartic, BinaryQuartic]:
        return self.g1, self.g2, self.g3

    def z_product(self) -> AlgElement:
        z1, z2, z3 = (z_invariant(g, self.algebra) for g in self.quartics)
        return z1 * z2 * z3

    def with_m(self, m: AlgElement) -> "SelmerTriple":
        return replace(self, m=m)

    def swapped(self) -> "SelmerTriple":
        """The same triple with the roles of g2 and g3 exchanged"""
        a1, a2, a3 = self.actions
        return replace(self, g2=self.g3, g3=self.g2, actions=(a1, a3, a2))


@dataclass(frozen=True)
class TraceEntry:
    place: Place
    point: LocalPoint
    gamma_value: Fraction
    gamma_class: int
    symbol: int


@dataclass(frozen=True)
class LocalTrace:
    """
    Per-place contributions and the pairing value in {0, 1/2}.

    shortcut is set when g2(1,0) = 0, so [g2] is trivial and no local
    work was done.
    """

    entries: Tuple[TraceEntry, ...]
    value: Fraction
    shortcut: bool = False

    @property
    def places(self) -> List[Place]:
        return [e.place for e in self.entries]


def gamma_form(t: SelmerTriple) -> Tuple[BinaryForm, BinaryForm, BinaryForm]:
    """(alpha1, beta1, gamma1) with (z(g2) z(g3) / m) * H1 = alpha1 + beta1*phi + gamma1*phi^2"""
    algebra = t.algebra
    _, h1 = gh_forms(t.g1, algebra)
    factor = z_invariant(t.g2, algebra) * z_invariant(t.g3, algebra) / t.m
    scaled = h1.scale(factor)
    return scaled.component(0), scaled.component(1), scaled.component(2)


def _small_primes(settings: EngineSettings) -> List[int]:
    return list(sympy.primerange(2, settings.small_prime_bound + 1))


def solubility_places(g: BinaryForm, settings: Optional[EngineSettings] = None) -> List[Place]:
    """Places where y^2 = g can fail to have local points"""
    settings = settings or get_settings()
    primes = set(_small_primes(settings))
    primes.update(prime_support([discriminant(g)]))
    primes.update(prime_support([c.denominator for c in g.coeffs]))
    return [Place.infinity()] + [Place(p) for p in sorted(primes)]


def bad_places(
    t: SelmerTriple, gamma1: BinaryForm, settings: Optional[EngineSettings] = None
) -> List[Place]:
    """Places outside of which every local symbol is +1"""
    settings = settings or get_settings()
    primes = set(_small_primes(settings))
    primes.update(prime_support([discriminant(t.g1), gamma1.content(), t.g2.coeffs[0]]))
    primes.update(prime_support([c.denominator for c in t.g1.coeffs]))
    return [Place.infinity()] + [Place(p) for p in sorted(primes)]


def check_soluble(g: BinaryForm, settings: Optional[EngineSettings] = None) -> Dict[Place, bool]:
    """Local solubility of y^2 = g at each place of solubility_places"""
    settings = settings or get_settings()
    return {v: is_locally_soluble(g, v, settings) for v in solubility_places(g, settings)}


class PairingEngine:
    """
    Builds Selmer triples and evaluates the pairing.

    Holds the settings that bound the numeric and search procedures.
    """

    def __init__(self, settings: Optional[EngineSettings] = None):
        self.settings = settings or get_settings()

    def build_triple(self, g1: BinaryForm, g2: BinaryForm, g3: BinaryForm) -> SelmerTriple:
        """
        Validate three quartics and normalize them into a SelmerTriple.

        Args:
            g1, g2, g3: nonsingular binary quartics

        Returns:
            SelmerTriple with unit z-invariants and m the first square root

        Raises:
            InvariantMismatchError, LocalInsolubilityError, NonSquareError
        """
        quartics = [BinaryQuartic.from_form(g) for g in (g1, g2, g3)]
        for g in quartics:
            require_nonsingular(g)
        first = invariants(quartics[0])
        for index, g in enumerate(quartics[1:], start=2):
            if invariants(g) != first:
                raise InvariantMismatchError(
                    f"g{index} has invariants {invariants(g)}, g1 has {first}"
                )
        algebra = cubic_algebra(*first)

        for index, g in enumerate(quartics, start=1):
            for place, soluble in check_soluble(g, self.settings).items():
                if not soluble:
                    raise LocalInsolubilityError(
                        f"g{index} has no points over Q_{place.name}", place=place
                    )
            if self.settings.verify_identities:
                check_identities(g, algebra)

        actions, moved = [], []
        for index, g in enumerate(quartics, start=1):
            leading = index == 2 and self.settings.normalize_leading
            action, g_unit = make_unit(g, algebra, self.settings, require_leading=leading)
            actions.append(action)
            moved.append(g_unit)

        z = [z_invariant(g, algebra) for g in moved]
        roots = sqrt(z[0] * z[1] * z[2], self.settings)
        if not roots:
            raise NonSquareError("z(g1) z(g2) z(g3) is not a square: the classes do not sum to zero")
        logger.debug("%d square root(s) of the z-product", len(roots))
        return SelmerTriple(
            moved[0], moved[1], moved[2], algebra, roots[0],
            actions=tuple(actions), square_roots=tuple(roots),
        )

    def gamma_form(self, t: SelmerTriple) -> Tuple[BinaryForm, BinaryForm, BinaryForm]:
        return gamma_form(t)

    def bad_places(self, t: SelmerTriple, gamma1: BinaryForm) -> List[Place]:
        return bad_places(t, gamma1, self.settings)

    def local_entry(
        self, t: SelmerTriple, gamma1: BinaryForm, place: Place, skip: int = 0
    ) -> TraceEntry:
        point = find_local_point(t.g1, gamma1, place, skip=skip, settings=self.settings)
        value = gamma1.evaluate(point.x, point.z)
        symbol = hilbert(t.g2.coeffs[0], value, place)
        logger.debug("place %s: point (%s, %s), symbol %d", place, point.x, point.z, symbol)
        return TraceEntry(place, point, value, square_class(value, place), symbol)

    def pairing(self, t: SelmerTriple, skips: Optional[Dict[str, int]] = None) -> LocalTrace:
        """
        Evaluate the pairing of [g1] and [g2].

        Args:
            t: valid triple
            skips: optional place name -> number of local points to pass over

        Returns:
            LocalTrace in canonical place order
        """
        if t.g2.coeffs[0] == 0:
            logger.debug("g2(1,0) = 0: [g2] is trivial")
            return LocalTrace((), Fraction(0), shortcut=True)
        skips = skips or {}
        gamma1 = gamma_form(t)[2]
        places = sorted(self.bad_places(t, gamma1), key=Place.sort_key)

        def entry(place):
            return self.local_entry(t, gamma1, place, skips.get(place.name, 0))

        if self.settings.max_workers > 1:
            with ThreadPoolExecutor(max_workers=self.settings.max_workers) as pool:
                entries = list(pool.map(entry, places))
        else:
            entries = [entry(v) for v in places]

        product = 1
        for e in entries:
            product *= e.symbol
        return LocalTrace(tuple(entries), HALF if product == -1 else Fraction(0))
