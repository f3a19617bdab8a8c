"""Exact arithmetic in the scaling-translation group."""

import random

import pytest

from matradix import linalg
from matradix.group import WaveletGroup

MATRICES = {
    "double": ((2,),),
    "cloud": ((1, -2), (2, 1)),
    "twin": ((1, 1), (-1, 1)),
}


def random_element(g, rng):
    vec = tuple(rng.randint(-9, 9) for _ in range(g.dim))
    return g.power(g.u(), rng.randint(-3, 3)) if rng.random() < 0.2 \
        else g.mul(g.t(vec), g.power(g.u(), rng.randint(-2, 2)))


def test_canonical_form():
    g = WaveletGroup(MATRICES["cloud"])
    ak = linalg.matvec(g.matrix, (1, 0))
    assert g.element(1, ak) == g.element(0, (1, 0))
    assert g.element(3, (0, 0)) == g.zero()
    e = g.element(1, (1, 0))
    assert e.exponent == 1 and e.vec == (1, 0)


def test_value_exact():
    from fractions import Fraction
    g = WaveletGroup(MATRICES["double"])
    assert g.value(g.element(2, (3,))) == (Fraction(3, 4),)


def test_additive_layer():
    rng = random.Random(0)
    for m in MATRICES.values():
        g = WaveletGroup(m)
        for _ in range(100):
            a = g.element(rng.randint(0, 3),
                          tuple(rng.randint(-9, 9) for _ in range(g.dim)))
            b = g.element(rng.randint(0, 3),
                          tuple(rng.randint(-9, 9) for _ in range(g.dim)))
            s = g.add(a, b)
            assert g.value(s) == tuple(x + y for x, y in
                                       zip(g.value(a), g.value(b)))
            assert g.add(s, g.neg(b)) == a
            assert g.add(a, g.zero()) == a


def test_scale_roundtrip():
    rng = random.Random(1)
    g = WaveletGroup(MATRICES["twin"])
    for _ in range(100):
        a = g.element(rng.randint(0, 3), (rng.randint(-9, 9),
                                          rng.randint(-9, 9)))
        n = rng.randint(-4, 4)
        assert g.scale(g.scale(a, n), -n) == a


def test_conjugation_law():
    """u t_k u^-1 = t_(A k), exactly."""
    rng = random.Random(2)
    for m in MATRICES.values():
        g = WaveletGroup(m)
        u, ui = g.u(), g.inv(g.u())
        for _ in range(200):
            k = tuple(rng.randint(-50, 50) for _ in range(g.dim))
            lhs = g.mul(g.mul(u, g.t(k)), ui)
            assert lhs == g.t(linalg.matvec(g.matrix, k))


def test_iterated_conjugation():
    g = WaveletGroup(MATRICES["cloud"])
    k = (3, -1)
    un = g.power(g.u(), 4)
    lhs = g.mul(g.mul(un, g.t(k)), g.inv(un))
    assert lhs == g.t(linalg.matvec(linalg.mat_pow(g.matrix, 4), k))


def test_associativity_random():
    rng = random.Random(3)
    for m in MATRICES.values():
        g = WaveletGroup(m)
        for _ in range(150):
            a, b, c = (random_element(g, rng) for _ in range(3))
            assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))


def test_inverse_and_identity():
    rng = random.Random(4)
    g = WaveletGroup(MATRICES["twin"])
    e = g.identity_element()
    for _ in range(150):
        a = random_element(g, rng)
        assert g.mul(a, g.inv(a)) == e
        assert g.mul(g.inv(a), a) == e
        assert g.mul(a, e) == a and g.mul(e, a) == a


def test_translation_additivity():
    g = WaveletGroup(MATRICES["cloud"])
    assert g.mul(g.t((1, 2)), g.t((3, -4))) == g.t((4, -2))


def test_singular_matrix_rejected():
    with pytest.raises(ValueError):
        WaveletGroup(((1, 1), (1, 1)))
