"""Digit words relative to a cycle of the inverse-branch maps.

A cycle is a closed orbit theta_(j+1) = tau_(l_j)(theta_j) of the
contractions tau_d(x) = B^-1(x + d).  For a simple cycle (no two points
congruent mod Z^d) every integer vector k and slot j yields the state
a - theta_j, and the exact division step

    a - theta_j = B (b - theta_(j+1)) + d,   d a digit,

is again unique.  Iterating gives an eventually periodic word whose
periodic tail is the digit word of a companion cycle (a cycle inside the
integer translates of the reference cycle), and the closed decode formula
recovers (k, j) from the word.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DomainError, NoSlotMatch, PeriodNotCompanion, SingularComposition
from .linalg import IntVec, RatVec
from .radix import EventuallyPeriodicWord, RadixSystem


@dataclass(frozen=True)
class Cycle:
    """Closed tau-orbit: tau_(labels[j])(points[j]) = points[(j+1) % p]."""

    points: tuple[RatVec, ...]
    labels: tuple[int, ...]
    is_simple: bool

    @property
    def period(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class CycleRelativePoint:
    """The state vec - theta_slot on the integer translates of a cycle."""

    vec: IntVec
    slot: int


def cycle_from_word(system: RadixSystem, labels) -> Cycle:
    """The unique cycle whose digit word is ``labels``.

    theta_0 is the fixed point of tau_(l_(p-1)) o ... o tau_(l_0), solved
    exactly from (B^p - I) theta_0 = sum_i B^i l_i.
    """
    labels = tuple(int(i) for i in labels)
    if not labels:
        raise ValueError("cycle word must be non-empty")
    for i in labels:
        if not 0 <= i < len(system.digits):
            raise ValueError(f"digit index {i} out of range")
    p = len(labels)
    d = system.dim
    bp = linalg.mat_pow(system.base, p)
    lhs = tuple(tuple(bp[r][c] - (1 if r == c else 0) for c in range(d))
                for r in range(d))
    rhs = (0,) * d
    power = linalg.identity(d)
    for i in labels:
        rhs = linalg.vec_add(rhs, linalg.matvec(power, system.digits[i]))
        power = linalg.matmul(power, system.base)
    try:
        theta0 = linalg.solve_fraction(lhs, rhs)
    except ZeroDivisionError:
        raise SingularComposition("B^p - I is singular") from None
    points = [tuple(theta0)]
    for i in labels[:-1]:
        points.append(tuple(system.tau(i, points[-1])))
    simple = True
    for a in range(p):
        for b in range(a + 1, p):
            diff = linalg.vec_sub(points[a], points[b])
            if all(x.denominator == 1 for x in diff):
                simple = False
    return Cycle(tuple(points), labels, simple)


def cycle_word(cycle: Cycle) -> EventuallyPeriodicWord:
    return EventuallyPeriodicWord((), cycle.labels)


# decode sees only p rotations per companion period; systems hash by
# identity, so the cache cannot confuse two systems
@functools.lru_cache(maxsize=8192)
def _anchored_cycle(system: RadixSystem, labels: tuple) -> Cycle:
    return cycle_from_word(system, labels)


def _require_simple(cycle: Cycle):
    if not cycle.is_simple:
        raise DomainError("cycle has two points congruent mod Z^d; "
                          "relative coding needs a simple cycle")


def cycle_division_step(system: RadixSystem, cycle: Cycle,
                        pt: CycleRelativePoint) -> tuple[CycleRelativePoint, int]:
    """One exact division step on a - theta_j.

    Using B theta_(j+1) = theta_j + l_j, the digit is the residue of
    a + l_j mod B*Z^d and the next state is b = B^-1(a + l_j - d).
    """
    _require_simple(cycle)
    p = cycle.period
    j = pt.slot % p
    shifted = linalg.vec_add(pt.vec, system.digits[cycle.labels[j]])
    idx, b = system.divide_step(shifted)
    return CycleRelativePoint(b, (j + 1) % p), idx


def _canonical_rotation(points: list, labels: list) -> tuple[tuple, tuple]:
    k = points.index(min(points))
    return (tuple(points[k:] + points[:k]), tuple(labels[k:] + labels[:k]))


def companion_cycles(system: RadixSystem, cycle: Cycle) -> list[Cycle]:
    """All cycles living on the integer translates of ``cycle``.

    Every relative state in the escape ball is iterated to its eventual
    periodic orbit; the negated periodic states, with the digits they emit,
    are exactly the companion cycles.
    """
    _require_simple(cycle)
    p = cycle.period
    r = system.escape_radius
    cycle_id: dict[tuple[IntVec, int], int] = {}
    raw: list[list[tuple[CycleRelativePoint, int]]] = []
    for j in range(p):
        for a in linalg.integer_points_in_ball(r, system.dim,
                                               center=cycle.points[j]):
            state = CycleRelativePoint(a, j)
            path: list[tuple[CycleRelativePoint, int]] = []
            index: dict[tuple[IntVec, int], int] = {}
            while True:
                key = (state.vec, state.slot)
                if key in cycle_id or key in index:
                    break
                index[key] = len(path)
                nxt, digit = cycle_division_step(system, cycle, state)
                path.append((state, digit))
                state = nxt
            key = (state.vec, state.slot)
            if key in index:
                cid = len(raw)
                raw.append(path[index[key]:])
            else:
                cid = cycle_id[key]
            for st, _ in path:
                cycle_id[(st.vec, st.slot)] = cid
    out = []
    for orbit in raw:
        pts = [linalg.vec_sub(cycle.points[st.slot], st.vec) for st, _ in orbit]
        labels = [digit for _, digit in orbit]
        pts, labels = _canonical_rotation(pts, labels)
        simple = cycle_from_word(system, labels).is_simple
        out.append(Cycle(tuple(tuple(Fraction(x) for x in pt) for pt in pts),
                         tuple(labels), simple))
    out.sort(key=lambda c: (c.period, c.points))
    return out


def cycle_encode(system: RadixSystem, cycle: Cycle, k, j: int) -> EventuallyPeriodicWord:
    """Digit word of the integer vector k at slot j, relative to the cycle."""
    _require_simple(cycle)
    p = cycle.period
    digits = system.digits
    labels = cycle.labels
    vec = linalg.as_int_vector(k)
    slot = j % p
    seen: dict[tuple[IntVec, int], int] = {}
    emitted: list[int] = []
    while (vec, slot) not in seen:
        seen[(vec, slot)] = len(emitted)
        shifted = tuple(a + b for a, b in zip(vec, digits[labels[slot]]))
        digit, vec = system.divide_step(shifted)
        slot = (slot + 1) % p
        emitted.append(digit)
    split = seen[(vec, slot)]
    return EventuallyPeriodicWord.canonical(emitted[:split], emitted[split:])


def cycle_decode(system: RadixSystem, cycle: Cycle,
                 word: EventuallyPeriodicWord) -> tuple[IntVec, int]:
    """Inverse of cycle_encode.

    The word is realigned so the pre-periodic part has length N divisible
    by the cycle period p (moving digits off the rotating period; whole
    period copies cannot change the length mod p).  With eta_0 the fixed
    point of the realigned period and theta_j its integer translate in the
    cycle,

        k = sum_(i<N) B^i w_i + theta_j - B^N eta_0,   slot = j.
    """
    _require_simple(cycle)
    p = cycle.period
    q = len(word.period)
    if q % p != 0:
        raise PeriodNotCompanion(
            f"period length {q} is not a multiple of the cycle period {p}")
    unroll = (-len(word.prefix)) % p
    n_pre = len(word.prefix) + unroll
    stream = word.digits(n_pre)
    rotated = word.period[unroll:] + word.period[:unroll]
    eta0 = _anchored_cycle(system, rotated).points[0]
    slot = None
    for j in range(p):
        diff = linalg.vec_sub(cycle.points[j], eta0)
        if all(x.denominator == 1 for x in diff):
            slot = j
            break
    if slot is None:
        raise NoSlotMatch("period's cycle is not an integer translate "
                          "of the reference cycle")
    total = tuple(Fraction(x) for x in system.evaluate_prefix(stream))
    bn = system.base_power(n_pre)
    k = linalg.vec_add(linalg.vec_sub(total, linalg.matvec(bn, eta0)),
                       cycle.points[slot])
    assert all(x.denominator == 1 for x in k)
    return tuple(int(x) for x in k), slot
