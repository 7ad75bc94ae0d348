import os
import random
import sys
from fractions import Fraction

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from engine_config import EngineSettings
from models.errors import (
    InvariantMismatchError,
    LocalInsolubilityError,
    NonSquareError,
    SingularQuarticError,
)
from models.etale import sqrt
from models.pairing import PairingEngine, SelmerTriple, bad_places, gamma_form
from models.quartic import (
    BinaryQuartic,
    GL2Action,
    apply,
    cubic_algebra,
    invariants,
    make_unit,
    z_invariant,
)
from utils.curves import CURVE_571A1, SPLIT_QUARTIC
from utils.padic import Place

ENGINE = PairingEngine()
INF = Place.infinity()


@pytest.fixture(scope="module")
def triple_571a1():
    return ENGINE.build_triple(*CURVE_571A1)


@pytest.fixture(scope="module")
def trace_571a1(triple_571a1):
    return ENGINE.pairing(triple_571a1)


def shear(a, b):
    return GL2Action(1, 1, a, 0, 1).compose(GL2Action(1, 1, 0, b, 1))


def trivial_triple(rng, g=SPLIT_QUARTIC):
    """Three quartics equivalent to g, assembled without the solubility checks"""
    algebra = cubic_algebra(*invariants(g))
    quartics = []
    for _ in range(3):
        moved = apply(shear(rng.randint(-3, 3), rng.randint(-3, 3)), g)
        quartics.append(make_unit(moved, algebra, require_leading=True)[1])
    z = [z_invariant(q, algebra) for q in quartics]
    roots = sqrt(z[0] * z[1] * z[2])
    return SelmerTriple(*quartics, algebra, roots[0], square_roots=tuple(roots))


def test_571a1_triple(triple_571a1):
    assert triple_571a1.quartics == CURVE_571A1
    assert triple_571a1.m == triple_571a1.algebra.element(
        Fraction(936032, 9), Fraction(-8656, 9), Fraction(20, 9)
    )
    assert len(triple_571a1.square_roots) == 1


def test_571a1_gamma(triple_571a1):
    alpha1, beta1, gamma1 = gamma_form(triple_571a1)
    assert gamma1.coeffs == (Fraction(20, 9), Fraction(-64, 9), Fraction(-48, 9))
    assert gamma1.content() == Fraction(4, 9)


def test_negated_m_negates_gamma(triple_571a1):
    flipped = triple_571a1.with_m(-triple_571a1.m)
    assert gamma_form(flipped)[2] == -gamma_form(triple_571a1)[2]
    assert ENGINE.pairing(flipped).value == Fraction(1, 2)


def test_571a1_bad_places(triple_571a1):
    gamma1 = gamma_form(triple_571a1)[2]
    names = [v.name for v in bad_places(triple_571a1, gamma1)]
    assert names == ["inf", "2", "3", "5", "7", "11", "571"]


def test_571a1_pairing_is_nontrivial(trace_571a1):
    assert trace_571a1.value == Fraction(1, 2)
    assert not trace_571a1.shortcut
    symbols = {e.place.name: e.symbol for e in trace_571a1.entries}
    assert symbols == {"inf": -1, "2": 1, "3": 1, "5": 1, "7": 1, "11": 1, "571": 1}
    real = trace_571a1.entries[0]
    assert (real.point.x, real.point.z) == (15, 4)
    assert real.gamma_value == -12


def test_571a1_dyadic_entry(trace_571a1):
    dyadic = next(e for e in trace_571a1.entries if e.place == Place(2))
    assert dyadic.point.z == 1
    assert dyadic.point.x % 32 == 16
    assert dyadic.gamma_class == 5
    assert dyadic.symbol == 1


def test_mismatched_invariants():
    with pytest.raises(InvariantMismatchError):
        ENGINE.build_triple(CURVE_571A1[0], CURVE_571A1[0], SPLIT_QUARTIC)


def test_classes_not_summing_to_zero():
    g1, g2, _ = CURVE_571A1
    with pytest.raises(NonSquareError):
        ENGINE.build_triple(g1, g2, g2)


def test_insoluble_quartic_names_place():
    g = BinaryQuartic.of(-1, 0, 0, 0, -1)
    with pytest.raises(LocalInsolubilityError) as err:
        ENGINE.build_triple(g, g, g)
    assert err.value.place == INF


def test_singular_quartic_rejected():
    g = BinaryQuartic.of(0, 0, 1, 0, 0)
    with pytest.raises(SingularQuarticError):
        ENGINE.build_triple(g, g, g)


def test_trivial_class_shortcut():
    engine = PairingEngine(EngineSettings(normalize_leading=False))
    triple = engine.build_triple(SPLIT_QUARTIC, SPLIT_QUARTIC, SPLIT_QUARTIC)
    trace = engine.pairing(triple)
    assert trace.shortcut
    assert trace.value == 0
    assert trace.entries == ()


def test_trivial_classes_pair_to_zero_after_normalizing():
    triple = ENGINE.build_triple(SPLIT_QUARTIC, SPLIT_QUARTIC, SPLIT_QUARTIC)
    assert triple.g2.coeffs[0] != 0
    assert triple.actions[1].is_proper
    trace = ENGINE.pairing(triple)
    assert not trace.shortcut
    assert trace.value == 0


def test_value_independent_of_local_points(triple_571a1):
    trace = ENGINE.pairing(triple_571a1, skips={"inf": 1, "2": 2, "3": 1, "571": 3})
    assert trace.value == Fraction(1, 2)


def test_value_independent_of_m_choice():
    rng = random.Random(12)
    for _ in range(3):
        triple = trivial_triple(rng)
        assert len(triple.square_roots) == 4
        for m in triple.square_roots:
            assert ENGINE.pairing(triple.with_m(m)).value == 0


def test_swapping_g2_and_g3(triple_571a1):
    assert ENGINE.pairing(triple_571a1.swapped()).value == Fraction(1, 2)


def test_proper_actions_on_inputs():
    g1, g2, g3 = CURVE_571A1
    moved = (
        apply(shear(1, 0), g1),
        apply(GL2Action(-1, 0, 1, 1, 0), g2),
        apply(shear(2, -1), g3),
    )
    triple = ENGINE.build_triple(*moved)
    assert ENGINE.pairing(triple).value == Fraction(1, 2)


def test_threaded_fan_out_matches(triple_571a1, trace_571a1):
    engine = PairingEngine(EngineSettings(max_workers=4))
    assert engine.pairing(triple_571a1) == trace_571a1


def test_gamma_never_vanishes_on_valid_triples():
    rng = random.Random(21)
    wide = BinaryQuartic.of(0, 1, 0, -4, 0)
    for index in range(100):
        triple = trivial_triple(rng, SPLIT_QUARTIC if index % 2 else wide)
        assert not gamma_form(triple)[2].is_zero()
