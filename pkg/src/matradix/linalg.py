"""Exact integer/rational linear algebra.

Everything the rest of the toolkit needs to stay exact: Bareiss
determinants, column-style Hermite normal form, canonical residues mod an
integer matrix, and rational lattices (1/q) * M * Z^d with a canonical
(HNF, reduced-denominator) representation.  Floats appear only in the
eigenvalue test and in ball-radius estimates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import BorderlineSpectrum, NotExpansive

IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]
IntMat = tuple[tuple[int, ...], ...]

#: half-width of the rejection band around the unit circle
EPS_EIG = 1e-9


def as_matrix(rows) -> IntMat:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if any(len(row) != len(m) for row in m):
        raise ValueError("matrix must be square")
    return m


def as_int_vector(v) -> IntVec:
    return tuple(int(x) for x in v)


def as_rat_vector(v) -> RatVec:
    return tuple(Fraction(x) for x in v)


def identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(tuple(row[i] for row in m) for i in range(len(m[0])))


def matvec(m, v):
    return tuple(sum(r * x for r, x in zip(row, v)) for row in m)


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_pow(m, k: int):
    if k < 0:
        raise ValueError("negative power on integer matrix")
    out = identity(len(m))
    for _ in range(k):
        out = matmul(out, m)
    return out


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u):
    return tuple(-a for a in u)


def det(m) -> int:
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    a = [[int(x) for x in row] for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def fraction_inverse(m) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse over Q (Gauss-Jordan)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def solve_fraction(m, v) -> RatVec:
    return matvec(fraction_inverse(m), tuple(Fraction(x) for x in v))


def _minor(m, i, j):
    return tuple(tuple(x for c, x in enumerate(row) if c != j)
                 for r, row in enumerate(m) if r != i)


def adjugate(m) -> IntMat:
    n = len(m)
    if n == 1:
        return ((1,),)
    return tuple(tuple((-1) ** (i + j) * det(_minor(m, j, i)) for j in range(n))
                 for i in range(n))


def char_poly(m) -> tuple[int, ...]:
    """Coefficients (c_1..c_n) of det(xI - M) = x^n + c_1 x^(n-1) + ... + c_n,
    by the Faddeev-LeVerrier recurrence (exact)."""
    n = len(m)
    a = tuple(tuple(Fraction(x) for x in row) for row in m)
    mk = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    coeffs = []
    c = Fraction(1)
    for k in range(1, n + 1):
        mk = matmul(a, mk) if k > 1 else a
        c = -Fraction(sum(mk[i][i] for i in range(n)), k)
        coeffs.append(c)
        mk = tuple(tuple(mk[i][j] + (c if i == j else 0) for j in range(n))
                   for i in range(n))
    out = []
    for c in coeffs:
        assert c.denominator == 1
        out.append(int(c))
    return tuple(out)


def rational_eigenvalues(m) -> list[int]:
    """Rational eigenvalues of an integer matrix.  The characteristic
    polynomial is monic with integer coefficients, so these are integers
    dividing the constant term."""
    coeffs = char_poly(m)
    n = len(m)
    const = coeffs[-1]

    def p(x: int) -> int:
        val = 1
        for c in coeffs:
            val = val * x + c
        return val

    if const == 0:
        return [0] if p(0) == 0 else []
    roots = set()
    for r in range(1, abs(const) + 1):
        if abs(const) % r == 0:
            for cand in (r, -r):
                if p(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def is_expansive(m, eps: float = EPS_EIG) -> bool:
    """True iff every eigenvalue modulus exceeds 1.

    Moduli within ``eps`` of 1 are out of model and raise
    BorderlineSpectrum rather than being classified silently.
    """
    moduli = np.abs(np.linalg.eigvals(np.array(m, dtype=float)))
    if np.any(np.abs(moduli - 1.0) < eps):
        raise BorderlineSpectrum(f"eigenvalue modulus within {eps} of 1")
    return bool(np.all(moduli > 1.0))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with u*a + v*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf_from_columns(gens, dim: int) -> IntMat:
    """Canonical lower-triangular column-HNF basis of the integer lattice
    generated by ``gens`` (full rank required).

    Returned as matrix rows; column j is the j-th basis vector.  Diagonal
    entries are positive and each row entry left of the diagonal lies in
    [0, diagonal).
    """
    work = [list(map(int, g)) for g in gens if any(g)]
    pivots: list[list[int]] = []
    for r in range(dim):
        piv = None
        rest = []
        for c in work:
            if c[r] != 0:
                if piv is None:
                    piv = c
                else:
                    g, u, v = xgcd(piv[r], c[r])
                    pr, cr = piv[r], c[r]
                    piv, c = ([u * p + v * q for p, q in zip(piv, c)],
                              [(-cr // g) * p + (pr // g) * q for p, q in zip(piv, c)])
                    if any(c):
                        rest.append(c)
            elif any(c):
                rest.append(c)
        if piv is None:
            raise ValueError("generators do not span Z^%d" % dim)
        if piv[r] < 0:
            piv = [-x for x in piv]
        pivots.append(piv)
        work = rest
    for i in range(dim):
        hii = pivots[i][i]
        for j in range(i):
            q = pivots[j][i] // hii
            if q:
                pivots[j] = [x - q * y for x, y in zip(pivots[j], pivots[i])]
    return tuple(tuple(pivots[c][r] for c in range(dim)) for r in range(dim))


@lru_cache(maxsize=256)
def matrix_hnf(m: IntMat) -> IntMat:
    """Column HNF of the lattice m*Z^d."""
    dim = len(m)
    cols = [tuple(row[j] for row in m) for j in range(dim)]
    return hnf_from_columns(cols, dim)


_hnf_of_matrix = matrix_hnf


def residue_canon(m, v) -> IntVec:
    """Canonical representative of v mod m*Z^d: the unique congruent point
    of the HNF diagonal box prod_i [0, h_ii)."""
    h = _hnf_of_matrix(as_matrix(m))
    w = [int(x) for x in v]
    d = len(w)
    for i in range(d):
        q = w[i] // h[i][i]
        if q:
            for r in range(i, d):
                w[r] -= q * h[r][i]
    return tuple(w)


def residues_enumerate(m) -> list[IntVec]:
    """All |det m| canonical residues mod m*Z^d, in box order."""
    h = _hnf_of_matrix(as_matrix(m))
    d = len(h)
    boxes = [range(h[i][i]) for i in range(d)]
    out = []
    for combo in itertools.product(*boxes):
        out.append(residue_canon(m, combo))
    return out


def _gcd_many(xs) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, abs(int(x)))
    return g


@dataclass(frozen=True)
class Lattice:
    """Full-rank rational lattice (1/denom) * basis * Z^d.

    ``basis`` is a d x d integer matrix (rows) in column Hermite normal
    form; ``denom`` is positive and coprime to the gcd of the basis
    entries, so equal lattices compare equal as dataclasses.
    """

    dim: int
    denom: int
    basis: IntMat

    @classmethod
    def from_rational_generators(cls, dim: int, gens) -> "Lattice":
        gens = [tuple(Fraction(x) for x in g) for g in gens]
        q = 1
        for g in gens:
            for x in g:
                q = q * x.denominator // math.gcd(q, x.denominator)
        int_gens = [tuple(int(x * q) for x in g) for g in gens]
        h = hnf_from_columns(int_gens, dim)
        g = math.gcd(q, _gcd_many(x for row in h for x in row))
        if g > 1:
            q //= g
            h = tuple(tuple(x // g for x in row) for row in h)
        return cls(dim=dim, denom=q, basis=h)

    @classmethod
    def integers(cls, dim: int) -> "Lattice":
        return cls(dim=dim, denom=1, basis=identity(dim))

    @classmethod
    def scaled_axes(cls, scales) -> "Lattice":
        """Axis-aligned lattice prod_i (scale_i Z)."""
        scales = [Fraction(s) for s in scales]
        d = len(scales)
        gens = [tuple(scales[i] if j == i else Fraction(0) for j in range(d))
                for i in range(d)]
        return cls.from_rational_generators(d, gens)

    def generators(self) -> list[RatVec]:
        return [tuple(Fraction(self.basis[r][c], self.denom) for r in range(self.dim))
                for c in range(self.dim)]

    def contains(self, v) -> bool:
        w = [Fraction(x) * self.denom for x in v]
        y = solve_fraction(self.basis, w)
        return all(x.denominator == 1 for x in y)

    def dual(self) -> "Lattice":
        """{y : x.y in Z for all x in self}; basis q*(M^T)^(-1)."""
        d = det(self.basis)
        adjt = adjugate(transpose(self.basis))
        gens = [tuple(Fraction(self.denom * adjt[r][c], d) for r in range(self.dim))
                for c in range(self.dim)]
        return Lattice.from_rational_generators(self.dim, gens)

    def join(self, other: "Lattice") -> "Lattice":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return Lattice.from_rational_generators(
            self.dim, self.generators() + other.generators())

    def transform(self, m) -> "Lattice":
        """Image lattice m * self for an integer matrix m."""
        return Lattice.from_rational_generators(
            self.dim, [matvec(m, g) for g in self.generators()])

    def covolume(self) -> Fraction:
        return Fraction(abs(det(self.basis)), self.denom ** self.dim)

    def enumerate_in_box(self, lo, hi) -> list[RatVec]:
        """All lattice points v with lo_i <= v_i <= hi_i (exact, via the
        triangular basis)."""
        lo = [Fraction(x) for x in lo]
        hi = [Fraction(x) for x in hi]
        d, q, h = self.dim, self.denom, self.basis
        out: list[RatVec] = []

        def rec(i: int, partial: list[Fraction], coeffs: list[int]):
            if i == d:
                out.append(tuple(partial))
                return
            # v_i = (sum_{j<=i} h[i][j] c_j) / q with c_j fixed for j < i
            base = sum(h[i][j] * coeffs[j] for j in range(i))
            # need lo_i <= (base + h[i][i] c_i)/q <= hi_i
            a = (lo[i] * q - base) / h[i][i]
            b = (hi[i] * q - base) / h[i][i]
            for c in range(math.ceil(a), math.floor(b) + 1):
                vi = Fraction(base + h[i][i] * c, q)
                rec(i + 1, partial + [vi], coeffs + [c])

        rec(0, [], [])
        return out

    def describe(self) -> str:
        """Readable form; axis-aligned lattices print like 'Z x 2Z'."""
        if all(self.basis[r][c] == 0 for r in range(self.dim)
               for c in range(self.dim) if r != c):
            parts = []
            for i in range(self.dim):
                s = Fraction(self.basis[i][i], self.denom)
                if s == 1:
                    parts.append("Z")
                elif s.denominator == 1:
                    parts.append(f"{s.numerator}Z")
                else:
                    parts.append(f"({s})Z")
            return " x ".join(parts)
        return f"(1/{self.denom})*{list(map(list, self.basis))}*Z^{self.dim}"

    def to_json(self) -> dict:
        return {"denom": self.denom, "basis": [list(row) for row in self.basis]}

    @classmethod
    def from_json(cls, obj: dict) -> "Lattice":
        rows = obj["basis"]
        dim = len(rows)
        gens = [tuple(Fraction(rows[r][c], obj["denom"]) for r in range(dim))
                for c in range(dim)]
        return cls.from_rational_generators(dim, gens)


def integer_points_in_ball(radius: float, dim: int, center=None) -> list[IntVec]:
    """All integer points within Euclidean distance ``radius`` of center."""
    if center is None:
        center = (Fraction(0),) * dim
    center = [Fraction(x) if not isinstance(x, float) else x for x in center]
    rsq = radius * radius + 1e-12
    ranges = [range(math.ceil(float(c) - radius - 1e-9),
                    math.floor(float(c) + radius + 1e-9) + 1) for c in center]
    out = []
    for pt in itertools.product(*ranges):
        if float(sum((x - c) ** 2 for x, c in zip(pt, center))) <= rsq:
            out.append(pt)
    return out


def attractor_radius(base, digit_vectors) -> tuple[float, int]:
    """(R, m): a ball radius with sup ||x||_2 over the fraction attractor
    strictly below R, and the block power m with ||B^-m|| < 1.

    sum_{j>=1} ||B^-j|| <= (sum_{r=1..m} ||B^-r||) / (1 - ||B^-m||), so
    R = 1.001 * max||d|| * that bound covers every digit tail.
    """
    binv = np.linalg.inv(np.array(base, dtype=float))
    maxd = max(float(np.linalg.norm(np.array(d, dtype=float))) for d in digit_vectors)
    if maxd == 0.0:
        return 1e-9, 1
    power = np.eye(len(base))
    partial = 0.0
    for m in range(1, 129):
        power = power @ binv
        cm = float(np.linalg.norm(power, 2))
        partial += cm
        if cm < 1.0:
            return 1.001 * maxd * partial / (1.0 - cm), m
    raise NotExpansive("no contracting power of the inverse base found")
