import os
import random
import sys
from fractions import Fraction

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from utils.padic import Place, hilbert, is_square, square_class, valuation
from utils.rationals import prime_support

INF = Place.infinity()
PLACES = [INF] + [Place(p) for p in (2, 3, 5, 7, 11, 13)]


def random_nonzero(rng):
    while True:
        value = Fraction(rng.randint(-400, 400), rng.randint(1, 60))
        if value:
            return value


def test_place_names_and_order():
    assert INF.name == "inf"
    assert Place.parse("571") == Place(571)
    assert sorted([Place(3), INF, Place(2)], key=Place.sort_key) == [INF, Place(2), Place(3)]
    with pytest.raises(ValueError):
        Place(4)


def test_valuation():
    assert valuation(Fraction(18, 5), 3) == 2
    assert valuation(Fraction(18, 5), 5) == -1
    with pytest.raises(ValueError):
        valuation(0, 2)


def test_square_class_examples():
    assert square_class(18, Place(3)) == 2
    assert square_class(5, Place(2)) == 5
    assert square_class(3, Place(2)) == -5
    assert square_class(-4, INF) == -1
    assert square_class(Fraction(7, 4), Place(7)) == 7
    assert square_class(Fraction(1, 2), Place(2)) == 2


def test_is_square():
    assert is_square(17, Place(2))
    assert not is_square(5, Place(2))
    assert is_square(Fraction(4, 9), Place(3))
    assert is_square(2, Place(7))
    assert not is_square(-1, INF)


def test_hilbert_examples():
    assert hilbert(5, -1, Place(2)) == 1
    assert hilbert(-1, -1, INF) == -1
    assert hilbert(-1, -1, Place(2)) == -1
    assert hilbert(-1, -1, Place(3)) == 1
    assert hilbert(2, 3, Place(3)) == -1
    with pytest.raises(ValueError):
        hilbert(0, 1, Place(5))


def test_hilbert_with_one_is_trivial():
    rng = random.Random(0)
    for _ in range(100):
        b = random_nonzero(rng)
        for v in PLACES:
            assert hilbert(1, b, v) == 1


def test_symmetry_bilinearity_and_norms():
    rng = random.Random(1)
    for _ in range(1000):
        a, b1, b2 = random_nonzero(rng), random_nonzero(rng), random_nonzero(rng)
        v = rng.choice(PLACES)
        assert hilbert(a, b1, v) == hilbert(b1, a, v)
        assert hilbert(a, b1 * b2, v) == hilbert(a, b1, v) * hilbert(a, b2, v)
        assert hilbert(a, -a, v) == 1


def test_product_formula():
    rng = random.Random(2)
    for _ in range(500):
        a, b = random_nonzero(rng), random_nonzero(rng)
        places = [INF] + [Place(p) for p in prime_support([2, a, b])]
        product = 1
        for v in places:
            product *= hilbert(a, b, v)
        assert product == 1


def test_symbol_depends_on_square_classes_only():
    rng = random.Random(3)
    for _ in range(200):
        a, b, u = random_nonzero(rng), random_nonzero(rng), random_nonzero(rng)
        v = rng.choice(PLACES)
        assert square_class(a * u * u, v) == square_class(a, v)
        assert hilbert(a * u * u, b, v) == hilbert(square_class(a, v), square_class(b, v), v)

