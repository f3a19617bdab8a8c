"""Truncated solenoid embeddings and shift conjugacies.

A depth-N solenoid point is a compatible tower (z_0, ..., z_(N-1)) of torus
points with B z_(n+1) = z_n mod Z^d.  The shift sigma prepends B z_0; its
truncated inverse drops the head.  Three embeddings into the tower space
are provided, each conjugating a dynamical map to sigma:

  * points of R^d via x -> (B^-n x mod 1): conjugates x -> B x,
  * cycle-relative points (x, slot) via B^-n x + theta_(slot+n):
    conjugates (x, slot) -> (B x, slot - 1),
  * symbol states (x, word) via the tau-itinerary of x:
    conjugates the inverse symbol shift to sigma (and the forward symbol
    shift to the truncated sigma^-1).

All maps are exact on Fraction inputs; float inputs run the same code and
are expected to agree to TOL_SOLENOID.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cycles import Cycle, companion_cycles, cycle_decode, cycle_from_word
from .errors import DomainError, MembershipUndecided
from .radix import EventuallyPeriodicWord, RadixSystem

TOL_SOLENOID = 1e-9

_AttractorMembership = None


def _membership(system, x):
    # imported lazily; attractor pulls in numpy machinery this module
    # otherwise does not need
    global _AttractorMembership
    if _AttractorMembership is None:
        from . import attractor
        _AttractorMembership = attractor
    return _AttractorMembership.membership(system, x)


def reduce_torus(v):
    """Componentwise representative in [0, 1)."""
    return tuple(c % 1 if isinstance(c, (int, Fraction)) else c % 1.0
                 for c in v)


def torus_distance(u, v) -> float:
    worst = 0.0
    for a, b in zip(u, v):
        w = abs(a - b) % 1
        worst = max(worst, float(min(w, 1 - w)))
    return worst


@dataclass(frozen=True)
class TruncatedSolenoidPoint:
    coords: tuple[tuple, ...]

    @property
    def depth(self) -> int:
        return len(self.coords)

    def distance(self, other: "TruncatedSolenoidPoint") -> float:
        if self.depth != other.depth:
            raise ValueError("depth mismatch")
        return max(torus_distance(a, b)
                   for a, b in zip(self.coords, other.coords))

    def compatibility_defect(self, base) -> float:
        """max_n torus distance between B z_(n+1) and z_n (0 for points of
        the solenoid; float towers should stay below TOL_SOLENOID)."""
        worst = 0.0
        for n in range(self.depth - 1):
            up = reduce_torus(linalg.matvec(base, self.coords[n + 1]))
            worst = max(worst, torus_distance(up, self.coords[n]))
        return worst


def solenoid_embed(system: RadixSystem, x, depth: int) -> TruncatedSolenoidPoint:
    """(x mod 1, B^-1 x mod 1, ..., B^-(depth-1) x mod 1)."""
    coords = []
    y = tuple(x)
    for _ in range(depth):
        coords.append(reduce_torus(y))
        y = linalg.matvec(system.base_inv, y)
    return TruncatedSolenoidPoint(tuple(coords))


def solenoid_shift(system: RadixSystem,
                   pt: TruncatedSolenoidPoint) -> TruncatedSolenoidPoint:
    """sigma: prepend B z_0, drop the deepest level (depth preserved)."""
    head = reduce_torus(linalg.matvec(system.base, pt.coords[0]))
    return TruncatedSolenoidPoint((head,) + pt.coords[:-1])


def solenoid_unshift(pt: TruncatedSolenoidPoint) -> TruncatedSolenoidPoint:
    """Truncated sigma^-1: drop the head (depth shrinks by one)."""
    if pt.depth < 2:
        raise ValueError("cannot unshift a depth-1 tower")
    return TruncatedSolenoidPoint(pt.coords[1:])


def solenoid_embed_cycle(system: RadixSystem, cycle: Cycle, x, slot: int,
                         depth: int) -> TruncatedSolenoidPoint:
    """Embedding of the cycle-relative point (x, slot):
    level n is B^-n x + theta_((slot+n) mod p) mod 1."""
    p = cycle.period
    coords = []
    y = tuple(x)
    for n in range(depth):
        theta = cycle.points[(slot + n) % p]
        coords.append(reduce_torus(linalg.vec_add(y, theta)))
        y = linalg.matvec(system.base_inv, y)
    return TruncatedSolenoidPoint(tuple(coords))


def alpha_step(system: RadixSystem, cycle: Cycle, x, slot: int):
    """The map conjugated to sigma by the cycle embedding."""
    return tuple(linalg.matvec(system.base, x)), (slot - 1) % cycle.period


@dataclass(frozen=True)
class SymbolState:
    """A point together with a digit word (its itinerary under tau)."""

    point: tuple
    word: EventuallyPeriodicWord


def symbols_to_solenoid(system: RadixSystem, state: SymbolState,
                        depth: int) -> TruncatedSolenoidPoint:
    """Level n is the n-fold tau-itinerary image of the point, mod 1."""
    coords = []
    y = tuple(state.point)
    for n in range(depth):
        coords.append(reduce_torus(y))
        y = system.tau(state.word.digit_at(n), y)
    return TruncatedSolenoidPoint(tuple(coords))


def shift_symbols(system: RadixSystem, state: SymbolState) -> SymbolState:
    """rho: apply the first itinerary digit and consume it."""
    idx = state.word.digit_at(0)
    return SymbolState(tuple(system.tau(idx, state.point)),
                       state.word.drop_first())


def unshift_symbols(system: RadixSystem, state: SymbolState,
                    digit_hint: int | None = None) -> SymbolState:
    """rho^-1: the digit d with B x - d back in the attractor is prepended.

    Needs exact (rational) coordinates unless ``digit_hint`` supplies the
    digit index.  Overlap points (several valid digits) resolve to the
    smallest index.
    """
    bx = tuple(linalg.matvec(system.base, state.point))
    if digit_hint is not None:
        idx = digit_hint
    else:
        from .attractor import Membership
        idx = None
        undecided = False
        for i, dvec in enumerate(system.digits):
            res = _membership(system, linalg.vec_sub(bx, dvec))
            if res is Membership.INSIDE:
                idx = i
                break
            if res is Membership.UNDECIDED:
                undecided = True
        if idx is None:
            if undecided:
                raise MembershipUndecided(
                    "no digit certified; membership budget exhausted")
            raise DomainError("point is outside the attractor; the inverse "
                              "symbol shift is undefined")
    new_pt = tuple(linalg.vec_sub(bx, system.digits[idx]))
    return SymbolState(new_pt, state.word.prepend(idx))


# -- diagram verification ----------------------------------------------------


@dataclass(frozen=True)
class DiagramReport:
    samples: int
    depth: int
    exact: bool
    relation_deviation: dict[str, float]
    max_deviation: float

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "depth": self.depth,
            "exact": self.exact,
            "relations": dict(self.relation_deviation),
            "max_deviation": self.max_deviation,
        }


def attractor_samples(system: RadixSystem, cycle: Cycle, count: int,
                      seed: int = 0, max_tail: int = 6):
    """Exact attractor points paired with their full itineraries.

    Each sample folds a random digit prefix onto a companion-cycle point,
    so the point's itinerary is prefix then rotated companion word and the
    word decodes against ``cycle``.
    """
    rng = random.Random(seed)
    comps = companion_cycles(system, cycle)
    out = []
    for _ in range(count):
        c = rng.choice(comps)
        r = rng.randrange(c.period)
        period = c.labels[r:] + c.labels[:r]
        prefix = tuple(rng.randrange(len(system.digits))
                       for _ in range(rng.randrange(max_tail + 1)))
        word = EventuallyPeriodicWord.canonical(prefix, period)
        x = c.points[r]
        for i in reversed(prefix):
            x = tuple(system.tau(i, x))
        out.append(SymbolState(tuple(x), word))
    return out


def verify_commuting_diagram(system: RadixSystem, cycle: Cycle,
                             samples: int = 100, depth: int = 12,
                             seed: int = 0, exact: bool = True) -> DiagramReport:
    """Check every embedding/conjugacy square on random attractor samples.

    Exact mode keeps all coordinates rational and must report deviation 0;
    float mode reruns the same algebra on float coordinates.
    """
    states = attractor_samples(system, cycle, samples, seed=seed)
    rng = random.Random(seed + 1)
    slots = [rng.randrange(cycle.period) for _ in states]
    dev = {"embed_shift": 0.0, "cycle_embed_shift": 0.0,
           "symbols_unshift": 0.0, "symbols_shift": 0.0,
           "decode_embed": 0.0, "compatibility": 0.0}
    for st, slot in zip(states, slots):
        exact_hint = unshift_symbols(system, st).word.digit_at(0)
        if exact:
            x, state = st.point, st
        else:
            x = tuple(float(c) for c in st.point)
            state = SymbolState(x, st.word)

        emb = solenoid_embed(system, x, depth)
        bx = tuple(linalg.matvec(system.base, x))
        dev["embed_shift"] = max(
            dev["embed_shift"],
            solenoid_embed(system, bx, depth).distance(
                solenoid_shift(system, emb)))
        dev["compatibility"] = max(dev["compatibility"],
                                   emb.compatibility_defect(system.base))

        cemb = solenoid_embed_cycle(system, cycle, x, slot, depth)
        ax, aslot = alpha_step(system, cycle, x, slot)
        dev["cycle_embed_shift"] = max(
            dev["cycle_embed_shift"],
            solenoid_embed_cycle(system, cycle, ax, aslot, depth).distance(
                solenoid_shift(system, cemb)))

        tower = symbols_to_solenoid(system, state, depth)
        dev["symbols_unshift"] = max(
            dev["symbols_unshift"],
            symbols_to_solenoid(system, shift_symbols(system, state),
                                depth - 1).distance(solenoid_unshift(tower)))
        dev["symbols_shift"] = max(
            dev["symbols_shift"],
            symbols_to_solenoid(
                system, unshift_symbols(system, state, digit_hint=exact_hint),
                depth).distance(solenoid_shift(system, tower)))

        k, j = cycle_decode(system, cycle, st.word)
        u = tuple(xi + ki - ti for xi, ki, ti
                  in zip(x, k, cycle.points[j]))
        dev["decode_embed"] = max(
            dev["decode_embed"],
            solenoid_embed_cycle(system, cycle, u, j, depth).distance(tower))
    return DiagramReport(samples=len(states), depth=depth, exact=exact,
                         relation_deviation=dev,
                         max_deviation=max(dev.values()))
