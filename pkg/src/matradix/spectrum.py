"""Dual digit sets: Hadamard pairs, extreme cycles, and tiling lattices.

For digit sets D (for the base transpose) and L (for the base) the matrix
(1/sqrt N) (exp(2 pi i (A^T)^-1 d . l)) being unitary makes (A, D, L) a
Hadamard triple.  The transfer-function modulus

    m_D(x) = (1/N) sum_d exp(2 pi i d . x)

attains 1 exactly on the dual of the lattice spanned by digit differences;
cycles of the dual maps sigma_l(x) = A^-1(x + l) lying in that set are the
extreme cycles.  The smallest lattice containing their negated points and
L, invariant under x -> A x, dualizes to the lattice by which the
attractor tiles.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import CountMismatch, DegenerateDigitSpan, InvariantSubspacePresent
from .linalg import Lattice, RatVec

UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class ExtremeCycle:
    """Closed sigma-orbit with the unimodulus criterion at every point."""

    points: tuple[RatVec, ...]
    labels: tuple[int, ...]

    @property
    def period(self) -> int:
        return len(self.points)


def hadamard_matrix(matrix, digits, dual_digits) -> np.ndarray:
    digits = [linalg.as_int_vector(d) for d in digits]
    dual_digits = [linalg.as_int_vector(l) for l in dual_digits]
    if len(digits) != len(dual_digits):
        raise CountMismatch(
            f"{len(digits)} digits vs {len(dual_digits)} dual digits")
    n = len(digits)
    ainv_t = linalg.fraction_inverse(linalg.transpose(linalg.as_matrix(matrix)))
    h = np.empty((n, n), dtype=complex)
    for a, d in enumerate(digits):
        w = linalg.matvec(ainv_t, d)
        for b, l in enumerate(dual_digits):
            e = sum(wi * li for wi, li in zip(w, l)) % 1
            h[a, b] = np.exp(2j * np.pi * float(e))
    return h / math.sqrt(n)


def check_hadamard(matrix, digits, dual_digits) -> tuple[bool, float]:
    """(is unitary, unitarity defect max |H* H - I|)."""
    h = hadamard_matrix(matrix, digits, dual_digits)
    defect = float(np.abs(h.conj().T @ h - np.eye(len(h))).max())
    return defect < UNITARITY_TOL, defect


def fourier_permutation_defect(h: np.ndarray) -> float:
    """Smallest entrywise distance of h to a row/column permutation of the
    order-n Fourier matrix (brute force; n <= 6)."""
    n = len(h)
    if n > 6:
        raise ValueError("permutation search limited to order <= 6")
    u = np.array([[np.exp(2j * np.pi * j * k / n) for k in range(n)]
                  for j in range(n)]) / math.sqrt(n)
    best = math.inf
    for colperm in itertools.permutations(range(n)):
        hp = h[:, colperm]
        # greedily match each row of hp to its closest unused row of u
        used = set()
        worst = 0.0
        for r in range(n):
            cand = min((float(np.abs(hp[r] - u[s]).max()), s)
                       for s in range(n) if s not in used)
            worst = max(worst, cand[0])
            if worst >= best:
                break
            used.add(cand[1])
        best = min(best, worst)
        if best == 0.0:
            break
    return best


def _difference_generators(digits) -> list[linalg.IntVec]:
    digits = [linalg.as_int_vector(d) for d in digits]
    base = digits[0]
    return [linalg.vec_sub(d, base) for d in digits[1:]]


def _rank(vectors, dim) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    for col in range(dim):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = Fraction(1) / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def unimodulus_criterion_lattice(digits) -> Lattice:
    """The set {x : |m_D(x)| = 1} as a lattice: the dual of the lattice
    spanned by digit differences.  Raises DegenerateDigitSpan when the
    differences span a proper subspace (the set is then an affine cylinder,
    lattice times a free linear subspace)."""
    diffs = [g for g in _difference_generators(digits) if any(g)]
    dim = len(digits[0])
    rank = _rank(diffs, dim)
    if rank < dim:
        raise DegenerateDigitSpan(
            f"digit differences span rank {rank} < {dim}; modulus-one set "
            f"is a cylinder over a rank-{rank} lattice", rank, dim)
    return Lattice.from_rational_generators(dim, diffs).dual()


def satisfies_criterion(digits, x) -> bool:
    """Exact |m_D(x)| = 1 test: all digit differences pair integrally."""
    x = tuple(Fraction(c) for c in x)
    for g in _difference_generators(digits):
        if sum(gi * xi for gi, xi in zip(g, x)).denominator != 1:
            return False
    return True


def candidate_cycle_lattice(matrix, digits) -> Lattice:
    """Full-rank lattice containing every extreme-cycle point.

    A point x whose whole sigma-orbit satisfies the criterion obeys
    delta . sigma-word(x) in Z for every digit difference delta;
    eliminating the orbit digits leaves the integer constraints
    delta^T adj(A)^k x in Z.  By Cayley-Hamilton the powers k >= d are
    integer combinations of lower ones, so stacking k < d gives the exact
    constraint lattice; its dual is the candidate set.  A rank-deficient
    stack exhibits a proper rational A-invariant subspace.
    """
    matrix = linalg.as_matrix(matrix)
    dim = len(matrix)
    adj_t = linalg.transpose(linalg.adjugate(matrix))
    diffs = [g for g in _difference_generators(digits) if any(g)]
    if not diffs:
        raise DegenerateDigitSpan("all digits equal; criterion is all of R^d",
                                  0, dim)
    stack = list(diffs)
    level = diffs
    for _ in range(1, dim):
        level = [linalg.matvec(adj_t, v) for v in level]
        stack.extend(level)
    if _rank(stack, dim) < dim:
        raise InvariantSubspacePresent(
            "digit differences generate a proper rational A-invariant "
            "subspace; extreme-cycle search cannot be confined to a lattice")
    return Lattice.from_rational_generators(dim, stack).dual()


def extreme_cycles(matrix, digits, dual_digits) -> list[ExtremeCycle]:
    """All cycles of the dual maps sigma_l(x) = A^-1(x + l) whose points
    satisfy |m_D| = 1, by exact search over candidate-lattice points in the
    dual attractor ball."""
    matrix = linalg.as_matrix(matrix)
    dim = len(matrix)
    # In dimension 1 an eigenspace is the whole line, never proper.
    if dim > 1 and linalg.rational_eigenvalues(matrix):
        raise InvariantSubspacePresent(
            "base matrix has a rational eigenvalue, hence a proper rational "
            "invariant subspace")
    dual_digits = [linalg.as_int_vector(l) for l in dual_digits]
    ainv = linalg.fraction_inverse(matrix)
    radius, _ = linalg.attractor_radius(matrix, dual_digits)
    candidates = candidate_cycle_lattice(matrix, digits)
    box = [Fraction(-1, 1) * Fraction(int(math.ceil(radius * 1024)), 1024)] * dim
    nodes = [tuple(p) for p in candidates.enumerate_in_box(
        box, [-b for b in box])
        if float(sum(c * c for c in p)) <= radius * radius + 1e-9]
    node_set = set(nodes)
    edges: dict[RatVec, list[tuple[int, RatVec]]] = {}
    for x in nodes:
        outs = []
        for li, l in enumerate(dual_digits):
            y = tuple(linalg.matvec(ainv, linalg.vec_add(x, l)))
            if y in node_set:
                outs.append((li, y))
        edges[x] = outs

    cycles: set[tuple[tuple[RatVec, ...], tuple[int, ...]]] = set()
    order = {x: i for i, x in enumerate(sorted(nodes))}

    def dfs(start, x, path_pts, path_labels, on_path):
        for li, y in edges[x]:
            if y == start:
                pts, labels = path_pts, path_labels + [li]
                k = pts.index(min(pts))
                cycles.add((tuple(pts[k:] + pts[:k]),
                            tuple(labels[k:] + labels[:k])))
            elif y not in on_path and order[y] > order[start]:
                on_path.add(y)
                dfs(start, y, path_pts + [y], path_labels + [li], on_path)
                on_path.remove(y)

    for start in sorted(nodes):
        dfs(start, start, [start], [], {start})
    out = [ExtremeCycle(pts, labels) for pts, labels in sorted(cycles)]
    return out


def spectrum_lattice(matrix, dual_digits, cycles) -> Lattice:
    """Smallest lattice containing the negated extreme-cycle points and the
    dual digits, invariant under x -> A x."""
    matrix = linalg.as_matrix(matrix)
    dim = len(matrix)
    gens = [tuple(Fraction(c) for c in linalg.as_int_vector(l))
            for l in dual_digits]
    for cyc in cycles:
        for p in cyc.points:
            gens.append(tuple(-c for c in p))
    lam = Lattice.from_rational_generators(dim, gens)
    while True:
        nxt = lam.join(lam.transform(matrix))
        if nxt == lam:
            return lam
        lam = nxt


def tiling_lattice(matrix, digits, dual_digits) -> Lattice:
    """Dual of the spectrum lattice: the lattice by which the attractor of
    (A^T, D) tiles."""
    cycles = extreme_cycles(matrix, digits, dual_digits)
    return spectrum_lattice(matrix, dual_digits, cycles).dual()
