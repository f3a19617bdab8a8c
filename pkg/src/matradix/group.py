"""Exact arithmetic in the group of A-divided integer translations.

Elements A^-n k (k integer, n >= 0) form the additive group Z^d[A^-1];
together with the scaling automorphism alpha_A they generate a semidirect
product whose elements are pairs (shift j, translation b) multiplying as

    (j, b) * (k, c) = (j + k, alpha_A^j(c) + b).

All arithmetic is exact; elements are kept canonical (n = 0 or k not in
A*Z^d), so equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .linalg import IntVec


@dataclass(frozen=True)
class DyadicLikeElement:
    """A^-exponent * vec with integer vec, canonical form."""

    exponent: int
    vec: IntVec


@dataclass(frozen=True)
class GroupElement:
    """Pair (shift, trans) in the semidirect product."""

    shift: int
    trans: DyadicLikeElement


class WaveletGroup:
    """Arithmetic context bound to one integer matrix A (det != 0)."""

    def __init__(self, matrix):
        self.matrix = linalg.as_matrix(matrix)
        self.dim = len(self.matrix)
        if linalg.det(self.matrix) == 0:
            raise ValueError("matrix must be nonsingular")
        self._ainv = linalg.fraction_inverse(self.matrix)

    # -- additive layer -------------------------------------------------

    def _divides(self, k: IntVec) -> IntVec | None:
        """A^-1 k if it is integral, else None."""
        w = linalg.matvec(self._ainv, k)
        if all(x.denominator == 1 for x in w):
            return tuple(int(x) for x in w)
        return None

    def element(self, exponent: int, vec) -> DyadicLikeElement:
        if exponent < 0:
            raise ValueError("exponent must be >= 0; scale instead")
        k = linalg.as_int_vector(vec)
        n = exponent
        while n > 0:
            down = self._divides(k)
            if down is None:
                break
            k = down
            n -= 1
        if all(x == 0 for x in k):
            n = 0
        return DyadicLikeElement(n, k)

    def from_vector(self, vec) -> DyadicLikeElement:
        return self.element(0, vec)

    def zero(self) -> DyadicLikeElement:
        return DyadicLikeElement(0, (0,) * self.dim)

    def value(self, e: DyadicLikeElement) -> tuple[Fraction, ...]:
        """The rational vector A^-n k."""
        v = tuple(Fraction(x) for x in e.vec)
        for _ in range(e.exponent):
            v = linalg.matvec(self._ainv, v)
        return v

    def add(self, a: DyadicLikeElement, b: DyadicLikeElement) -> DyadicLikeElement:
        n = max(a.exponent, b.exponent)
        ka = linalg.matvec(linalg.mat_pow(self.matrix, n - a.exponent), a.vec)
        kb = linalg.matvec(linalg.mat_pow(self.matrix, n - b.exponent), b.vec)
        return self.element(n, linalg.vec_add(ka, kb))

    def neg(self, a: DyadicLikeElement) -> DyadicLikeElement:
        return DyadicLikeElement(a.exponent, linalg.vec_neg(a.vec))

    def scale(self, a: DyadicLikeElement, power: int) -> DyadicLikeElement:
        """alpha_A^power(a) = A^(power - n) k, exact for any integer power."""
        if power >= 0:
            if power >= a.exponent:
                k = linalg.matvec(linalg.mat_pow(self.matrix, power - a.exponent), a.vec)
                return self.element(0, k)
            return self.element(a.exponent - power, a.vec)
        return self.element(a.exponent - power, a.vec)

    # -- semidirect product ---------------------------------------------

    def identity_element(self) -> GroupElement:
        return GroupElement(0, self.zero())

    def u(self) -> GroupElement:
        """The scaling generator (1, 0)."""
        return GroupElement(1, self.zero())

    def t(self, vec) -> GroupElement:
        """The translation generator (0, k)."""
        return GroupElement(0, self.from_vector(vec))

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return GroupElement(g.shift + h.shift,
                            self.add(self.scale(h.trans, g.shift), g.trans))

    def inv(self, g: GroupElement) -> GroupElement:
        return GroupElement(-g.shift, self.scale(self.neg(g.trans), -g.shift))

    def power(self, g: GroupElement, n: int) -> GroupElement:
        out = self.identity_element()
        base = g if n >= 0 else self.inv(g)
        for _ in range(abs(n)):
            out = self.mul(out, base)
        return out
