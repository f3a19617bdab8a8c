"""Integer digit words and division cycles.

Cycle censuses are frozen from a brute-force oracle that iterates the
division step over a wide integer span and collects the eventual orbits;
see the canonical (min-point-first) rotations below.
"""

import random

import pytest

from matradix import linalg
from matradix.errors import (IncompleteDigitSet, NotExpansive,
                             NotFinitelyRepresentable, WrongDigitCount)
from matradix.radix import EventuallyPeriodicWord, RadixSystem, fraction_point
from matradix.systems import get_config


def test_validation_refuses_bad_pairs():
    with pytest.raises(NotExpansive):
        RadixSystem(((2, 1), (0, 0)), ((0, 0),))
    with pytest.raises(WrongDigitCount):
        RadixSystem(((2,),), ((0,), (1,), (2,)))
    with pytest.raises(IncompleteDigitSet):
        RadixSystem(((2,),), ((0,), (2,)))  # 0 = 2 mod 2


def test_residue_bijectivity(systems):
    """Digits hit every residue class mod B Z^d exactly once."""
    for system in systems.values():
        reps = {linalg.residue_canon(system.base, d) for d in system.digits}
        assert len(reps) == system.det_abs
        assert reps == set(linalg.residues_enumerate(system.base))


def test_divide_step_identity(systems):
    rng = random.Random(0)
    for system in systems.values():
        for _ in range(300):
            x = tuple(rng.randint(-99, 99) for _ in range(system.dim))
            i, q = system.divide_step(x)
            bq = linalg.matvec(system.base, q)
            assert linalg.vec_add(system.digits[i], bq) == x


def test_dyadic_golden_words(systems):
    s = systems["dyadic-03"]
    assert s.format_word(s.encode_integer((11,))) == "3;0;0;3|3;0"
    assert s.format_word(s.encode_integer((18,))) == "0;3;3|0"
    assert s.format_word(s.encode_integer((-2,))) == "|0;3"
    assert s.format_word(s.encode_integer((0,))) == "|0"


def test_word_text_roundtrip(systems):
    rng = random.Random(1)
    for system in systems.values():
        for _ in range(50):
            k = tuple(rng.randint(-60, 60) for _ in range(system.dim))
            word = system.encode_integer(k)
            assert system.parse_word(system.format_word(word)) == word


def test_parse_word_rejects_garbage(systems):
    s = systems["dyadic-03"]
    with pytest.raises(ValueError):
        s.parse_word("3;0")          # no bar
    with pytest.raises(ValueError):
        s.parse_word("3|")           # empty period
    with pytest.raises(ValueError):
        s.parse_word("1|0")          # 1 is not a digit here


def test_eval_finite_inverts_finite_words(systems):
    s = systems["binary-01"]
    for k in range(0, 64):
        word = s.encode_integer((k,))
        assert word.is_finite_zero_tail(s.zero_index)
        assert s.eval_finite(word) == (k,)
    with pytest.raises(NotFinitelyRepresentable):
        s.eval_finite(s.encode_integer((-1,)))


def test_integer_cycles_dyadic(systems):
    """Oracle census for B=2, D={0,3}: {0}, {-3}, {-2,-1}."""
    census = systems["dyadic-03"].integer_cycles()
    assert [pts for pts, _ in census] == [[(-3,)], [(0,)], [(-2,), (-1,)]]
    words = [systems["dyadic-03"].format_word(w) for _, w in census]
    assert words == ["|3", "|0", "|0;3"]


def test_integer_cycles_binary(systems):
    """Oracle census for B=2, D={0,1}: fixed points 0 and -1 (-1 = 1 + 2*(-1));
    a single-cycle answer misses the -1 loop."""
    census = systems["binary-01"].integer_cycles()
    assert [pts for pts, _ in census] == [[(-1,)], [(0,)]]


def test_integer_cycles_twin(systems):
    census = systems["twin-dragon"].integer_cycles()
    assert [pts for pts, _ in census] == [[(0, 0)], [(0, 1)]]


def test_integer_cycles_cloud_nine(systems):
    """Census oracle: three fixed points and one 6-cycle."""
    census = systems["cloud-nine"].integer_cycles()
    assert [pts for pts, _ in census] == [
        [(-1, 0)], [(0, 0)], [(1, 0)],
        [(-1, -1), (1, -1), (0, -1), (1, 1), (-1, 1), (0, 1)]]
    six_word = census[3][1]
    digits = [systems["cloud-nine"].digits[i] for i in six_word.period]
    assert digits == [(0, 2), (3, 0), (-3, 0), (0, -2), (-3, 0), (3, 0)]


def test_cycle_points_lie_in_negated_attractor(systems):
    """k is cyclic iff k = sum B^j d_j backwards, i.e. -k in X."""
    from matradix.attractor import Membership, membership
    for name in ("dyadic-03", "twin-dragon", "cloud-nine"):
        system = systems[name]
        for pts, _ in system.integer_cycles():
            for p in pts:
                neg = tuple(-c for c in p)
                assert membership(system, neg) is Membership.INSIDE


def test_encode_eventual_periodicity(systems):
    rng = random.Random(9)
    for system in systems.values():
        cycle_pts = {p for pts, _ in system.integer_cycles() for p in pts}
        for _ in range(100):
            k = tuple(rng.randint(-80, 80) for _ in range(system.dim))
            word = system.encode_integer(k)
            # driving the division by the word must land on a cycle point
            x = k
            for idx in word.prefix:
                i, x = system.divide_step(x)
                assert i == idx
            assert x in cycle_pts


def test_fraction_point_contracts():
    s = get_config("twin-dragon").radix_system()
    x = fraction_point(s, (1, 0, 1, 1))
    # evaluate sum B^-j d explicitly
    from fractions import Fraction
    acc = (Fraction(0), Fraction(0))
    for i in reversed((1, 0, 1, 1)):
        acc = s.tau(i, acc)
    assert x == acc


def test_word_canonicalization():
    w = EventuallyPeriodicWord.canonical((1, 0), (1, 0, 1, 0))
    assert w.period == (1, 0) or w.period == (0, 1)
    # absorbing a full period into the prefix does not change the word
    v = EventuallyPeriodicWord.canonical((1, 0, 1, 0), (1, 0))
    assert w == v


def test_base_power_cache(systems):
    s = systems["cloud-nine"]
    assert s.base_power(0) == linalg.identity(2)
    assert s.base_power(3) == linalg.mat_pow(s.base, 3)
