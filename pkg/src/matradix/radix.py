"""Positional number systems with an expansive integer matrix base.

A RadixSystem is a pair (B, digits) with B expansive and the digits a
complete residue system mod B*Z^d.  Every integer vector then has a unique
eventually periodic digit word x = d_0 + B d_1 + B^2 d_2 + ..., produced by
iterating the exact division step x = d + B q.  The periodic tails are the
finitely many cycles of the quotient map, all of whose points lie in
Z^d intersected with the negated fraction attractor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (IncompleteDigitSet, NotExpansive, NotFinitelyRepresentable,
                     WrongDigitCount)
from .linalg import IntVec


def _primitive(period: tuple) -> tuple:
    k = len(period)
    for length in range(1, k + 1):
        if k % length == 0 and period == period[:length] * (k // length):
            return period[:length]
    return period


@dataclass(frozen=True)
class EventuallyPeriodicWord:
    """Digit-index word prefix . period^infinity in canonical form.

    Canonical means the period is primitive and the prefix is minimal (its
    last digit differs from the final digit of the rotated period), so each
    digit stream has exactly one representation.
    """

    prefix: tuple[int, ...]
    period: tuple[int, ...]

    @classmethod
    def canonical(cls, prefix, period) -> "EventuallyPeriodicWord":
        period = _primitive(tuple(period))
        if not period:
            raise ValueError("period must be non-empty")
        prefix = list(prefix)
        per = list(period)
        while prefix and prefix[-1] == per[-1]:
            prefix.pop()
            per = [per[-1]] + per[:-1]
        return cls(tuple(prefix), tuple(per))

    def digit_at(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def digits(self, n: int) -> tuple[int, ...]:
        return tuple(self.digit_at(i) for i in range(n))

    def drop_first(self) -> "EventuallyPeriodicWord":
        if self.prefix:
            return EventuallyPeriodicWord(self.prefix[1:], self.period)
        rotated = self.period[1:] + self.period[:1]
        return EventuallyPeriodicWord((), rotated)

    def prepend(self, idx: int) -> "EventuallyPeriodicWord":
        return EventuallyPeriodicWord.canonical((idx,) + self.prefix, self.period)

    def is_finite_zero_tail(self, zero_index: int | None) -> bool:
        return zero_index is not None and self.period == (zero_index,)


class RadixSystem:
    """Validated pair (B, digits) with exact division-step arithmetic."""

    def __init__(self, base, digits):
        self.base = linalg.as_matrix(base)
        self.dim = len(self.base)
        self.digits = tuple(linalg.as_int_vector(d) for d in digits)
        if not linalg.is_expansive(self.base):
            raise NotExpansive(f"base {self.base} has an eigenvalue of modulus <= 1")
        self.det_abs = abs(linalg.det(self.base))
        if len(self.digits) != self.det_abs:
            raise WrongDigitCount(
                f"need |det B| = {self.det_abs} digits, got {len(self.digits)}")
        self._digit_by_residue: dict[IntVec, int] = {}
        for i, d in enumerate(self.digits):
            r = linalg.residue_canon(self.base, d)
            if r in self._digit_by_residue:
                raise IncompleteDigitSet(
                    f"digits {self.digits[self._digit_by_residue[r]]} and {d} "
                    f"are congruent mod B*Z^{self.dim}")
            self._digit_by_residue[r] = i
        self.base_inv = linalg.fraction_inverse(self.base)
        # integer kit for the division hot path: HNF residue reduction and
        # quotient via adjugate (B^-1 = adj/det, division exact)
        self._hnf = linalg.matrix_hnf(self.base)
        self._base_adj = linalg.adjugate(self.base)
        self._base_det = linalg.det(self.base)
        self.escape_radius, self.step_power = linalg.attractor_radius(
            self.base, self.digits)
        try:
            self.zero_index: int | None = self.digits.index((0,) * self.dim)
        except ValueError:
            self.zero_index = None
        self._powers: dict[int, linalg.IntMat] = {0: linalg.identity(self.dim)}

    def base_power(self, n: int) -> linalg.IntMat:
        """B^n, memoized (decode evaluates many short prefixes)."""
        p = self._powers
        if n not in p:
            p[n] = linalg.matmul(self.base_power(n - 1), self.base)
        return p[n]

    # -- digit words ------------------------------------------------------

    def _residue(self, v) -> IntVec:
        h = self._hnf
        w = list(v)
        for i in range(self.dim):
            q = w[i] // h[i][i]
            if q:
                for r in range(i, self.dim):
                    w[r] -= q * h[r][i]
        return tuple(w)

    def divide_step(self, x) -> tuple[int, IntVec]:
        """Unique (digit index i, quotient q) with x = digits[i] + B q."""
        x = tuple(int(c) for c in x)
        i = self._digit_by_residue[self._residue(x)]
        dig = self.digits[i]
        adj, det, rng = self._base_adj, self._base_det, range(self.dim)
        q = tuple(sum(adj[r][c] * (x[c] - dig[c]) for c in rng) // det
                  for r in rng)
        return i, q

    def encode_integer(self, x) -> EventuallyPeriodicWord:
        """Eventually periodic digit word of an integer vector."""
        x = linalg.as_int_vector(x)
        seen: dict[IntVec, int] = {}
        emitted: list[int] = []
        while x not in seen:
            seen[x] = len(emitted)
            i, x = self.divide_step(x)
            emitted.append(i)
        split = seen[x]
        return EventuallyPeriodicWord.canonical(emitted[:split], emitted[split:])

    def eval_finite(self, word: EventuallyPeriodicWord) -> IntVec:
        """Value of a word ending in the all-zero period:
        d_0 + B d_1 + ... + B^(m-1) d_(m-1)."""
        if self.zero_index is None:
            raise NotFinitelyRepresentable("0 is not a digit of this system")
        if word.period != (self.zero_index,):
            raise NotFinitelyRepresentable("word does not end in the zero period")
        return self.evaluate_prefix(word.prefix)

    def evaluate_prefix(self, indices) -> IntVec:
        """sum_i B^i digits[indices[i]], by Horner from the high digit."""
        total = (0,) * self.dim
        for i in reversed(tuple(indices)):
            total = linalg.vec_add(self.digits[i],
                                   linalg.matvec(self.base, total))
        return total

    def integer_cycles(self) -> list[tuple[list[IntVec], EventuallyPeriodicWord]]:
        """All cycles of the quotient map, each once.

        Seeds every integer point of the escape ball and follows quotient
        orbits with a visited map, so termination does not depend on the
        radius bound being tight.  Cycle points are exactly the integer
        points of the negated fraction attractor.
        """
        seeds = linalg.integer_points_in_ball(self.escape_radius, self.dim)
        cycle_of: dict[IntVec, int] = {}
        cycles: list[list[IntVec]] = []
        for seed in seeds:
            path: list[IntVec] = []
            index: dict[IntVec, int] = {}
            x = seed
            while x not in cycle_of and x not in index:
                index[x] = len(path)
                path.append(x)
                _, x = self.divide_step(x)
            if x in index:
                cid = len(cycles)
                cycles.append(path[index[x]:])
            else:
                cid = cycle_of[x]
            for y in path:
                cycle_of[y] = cid
        out = []
        for pts in cycles:
            k = pts.index(min(pts))
            pts = pts[k:] + pts[:k]
            word = [self.divide_step(p)[0] for p in pts]
            out.append((pts, EventuallyPeriodicWord((), tuple(word))))
        out.sort(key=lambda c: (len(c[0]), c[0]))
        return out

    # -- fraction maps ------------------------------------------------------

    def tau(self, idx: int, x):
        """Contraction tau_d(x) = B^-1 (x + d); exact on rational input."""
        shifted = linalg.vec_add(tuple(x), self.digits[idx])
        return linalg.matvec(self.base_inv, shifted)

    # -- word text form -------------------------------------------------

    def format_word(self, word: EventuallyPeriodicWord) -> str:
        def block(indices):
            return ";".join(",".join(str(c) for c in self.digits[i])
                            for i in indices)
        return block(word.prefix) + "|" + block(word.period)

    def parse_word(self, text: str) -> EventuallyPeriodicWord:
        if "|" not in text:
            raise ValueError("word must contain '|' between prefix and period")
        pre_txt, per_txt = text.split("|", 1)

        def block(part: str) -> list[int]:
            part = part.strip()
            if not part:
                return []
            out = []
            for tok in part.split(";"):
                vec = tuple(int(c) for c in tok.split(","))
                if len(vec) != self.dim:
                    raise ValueError(f"digit {tok!r} has wrong dimension")
                try:
                    out.append(self.digits.index(vec))
                except ValueError:
                    raise ValueError(f"{vec} is not a digit of this system") from None
            return out

        period = block(per_txt)
        if not period:
            raise ValueError("period must be non-empty")
        return EventuallyPeriodicWord.canonical(block(pre_txt), period)

    def __repr__(self):
        return f"RadixSystem(base={self.base}, digits={self.digits})"


def word_digits_product(system: RadixSystem, length: int):
    """Iterator over all digit-index words of the given length."""
    return itertools.product(range(len(system.digits)), repeat=length)


def fraction_point(system: RadixSystem, indices) -> tuple[Fraction, ...]:
    """sum_j B^-j d_(indices[j-1]), the depth-len(indices) attractor point."""
    x = (Fraction(0),) * system.dim
    for i in reversed(tuple(indices)):
        x = system.tau(i, x)
    return x
