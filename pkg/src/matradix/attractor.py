"""Fraction attractors: point clouds, rasters, measure, tiling, membership.

The attractor of (B, digits) is the set of all digit tails
sum_(j>=1) B^-j d_j.  Depth-n clouds are rendered with numpy floats; all
decision procedures (membership for rational points, grid occupancy)
stay exact.

Occupancy comes from one of two routes.  The preferred exact route
refines the cell grid to the lattice (1/s)Z^d with s = 2/h, so cell
centers are the odd multiples of 1/s, and computes X meet (1/s)Z^d as
the greatest fixed point of

    alive(u)  =  alive(u) and (exists digit d: alive(B u - s d))

on the integer grid covering the escape ball: a point belongs to X
exactly when some digit preimage chain stays in the ball forever, and on
a finite grid that is survival of the pruning iteration.  Translate
cover counts #{k in Z^d : x - k in X} then give the a.e. integer
multiplicity M of the attractor over Z^d; cell centers on overlap
boundaries (cover > M) are weighted by M/cover so each contributes its
fair share to exactly M translates.  The weighted cell count is free of
sampling noise and of any density threshold.

The fallback route rasterizes a depth-n cloud of attractor points and
thresholds per-cell sample counts at half the interior density (plain
touched-cell counting estimates the closure and overcounts near the
boundary).  It is used when the grid route is infeasible: cell size not
of the form 2/s, non-integer data, or too large a grid.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .linalg import Lattice
from .radix import RadixSystem

DEFAULT_CAP = 4_000_000
DEFAULT_EXACT_BUDGET = 500_000
DEFAULT_FLOAT_DEPTH = 48
DEFAULT_GRID_CAP = 60_000_000


@dataclass(frozen=True)
class PointCloud:
    points: np.ndarray  # (N, d) float64
    depth: int
    exhaustive: bool
    seed: int


@dataclass(frozen=True)
class Raster:
    origin: tuple[float, ...]
    h: float
    dims: tuple[int, ...]
    counts: np.ndarray
    occupancy: np.ndarray
    threshold: int
    depth: int
    seed: int
    method: str = "cloud-threshold"
    # exact-grid extras; None on the cloud route
    weights: np.ndarray | None = field(default=None, compare=False)
    multiplicity: int | None = None
    branch_claims: np.ndarray | None = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return len(self.dims)


class Membership(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    UNDECIDED = "undecided"


def default_depth(system: RadixSystem, h: float) -> int:
    """Smallest n with ||B^-n||_2 * R < h/2, so every attractor point lies
    within one cell of a depth-n point."""
    binv = np.linalg.inv(np.array(system.base, dtype=float))
    r = system.escape_radius
    power = np.eye(system.dim)
    for n in range(1, 256):
        power = power @ binv
        if np.linalg.norm(power, 2) * r < h / 2:
            return n
    raise ValueError("depth rule did not converge")


def build_cloud(system: RadixSystem, depth: int, cap: int = DEFAULT_CAP,
                seed: int = 0) -> PointCloud:
    """Depth-``depth`` attractor cloud.

    Exhaustive (all |digits|^depth words) when that count fits the cap,
    otherwise ``cap`` uniform random words from a seeded generator.
    """
    nd = len(system.digits)
    binv_t = np.linalg.inv(np.array(system.base, dtype=float)).T
    dig = np.array(system.digits, dtype=float)
    exhaustive = nd ** depth <= cap
    if exhaustive:
        pts = np.zeros((1, system.dim))
        for _ in range(depth):
            pts = np.concatenate([(pts + dig[i]) @ binv_t for i in range(nd)])
    else:
        rng = np.random.default_rng(seed)
        idx = rng.integers(0, nd, size=(cap, depth))
        pts = np.zeros((cap, system.dim))
        for j in range(depth):
            pts = (pts + dig[idx[:, j]]) @ binv_t
    return PointCloud(points=pts, depth=depth, exhaustive=exhaustive, seed=seed)


def rasterize(system: RadixSystem, cloud: PointCloud, h: float,
              origin: tuple[float, ...] | None = None,
              dims: tuple[int, ...] | None = None) -> Raster:
    """Occupancy grid of cell size h covering the escape ball."""
    d = system.dim
    if origin is None:
        half = int(math.ceil(system.escape_radius / h)) + 1
        origin = tuple(-half * h for _ in range(d))
        dims = (2 * half,) * d
    assert dims is not None
    idx = np.floor((cloud.points - np.array(origin)) / h).astype(np.int64)
    ok = np.all((idx >= 0) & (idx < np.array(dims)), axis=1)
    idx = idx[ok]
    flat = np.ravel_multi_index(tuple(idx.T), dims)
    counts = np.bincount(flat, minlength=int(np.prod(dims))).reshape(dims)
    occ0 = counts > 0
    vol0 = float(occ0.sum()) * h ** d
    threshold = 1
    if vol0 > 0:
        density = len(cloud.points) * h ** d / vol0
        if density >= 4:
            threshold = max(1, int(math.ceil(density / 2)))
    return Raster(origin=tuple(float(x) for x in origin), h=float(h),
                  dims=tuple(dims), counts=counts,
                  occupancy=counts >= threshold, threshold=threshold,
                  depth=cloud.depth, seed=cloud.seed)


def _grid_scale(h) -> int | None:
    """s with cell size h == 2/s, or None when h is not of that form."""
    try:
        s = Fraction(2) / Fraction(h)
    except (ValueError, ZeroDivisionError, TypeError):
        return None
    if s.denominator != 1 or s <= 0:
        return None
    return int(s)


def exact_raster(system: RadixSystem, h,
                 grid_cap: int = DEFAULT_GRID_CAP) -> Raster | None:
    """Exact occupancy of the cell grid: centers are the points of
    X meet (1/s)Z^d with s = 2/h, found as the greatest fixed point of
    pruning under u -> B u - s d inside the escape ball.

    Returns None when the route is infeasible (h not 2/s, grid above
    ``grid_cap``); callers then fall back to the sampled cloud.
    """
    s = _grid_scale(h)
    if s is None:
        return None
    d = system.dim
    r = system.escape_radius
    u_max = int(math.floor(r * s)) + 1
    n = 2 * u_max + 1
    if n ** d > grid_cap:
        return None
    h = 2.0 / s

    axes = [np.arange(-u_max, u_max + 1, dtype=np.int64)] * d
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)  # (n^d, d)
    total = pts.shape[0]
    rsq = (r * s) ** 2 * (1 + 1e-9)
    alive = (pts.astype(np.float64) ** 2).sum(axis=1) <= rsq

    base = np.array(system.base, dtype=np.int64)
    strides = n ** np.arange(d - 1, -1, -1, dtype=np.int64)

    def flatten(q):
        """Grid index of integer points q, ``total`` when outside."""
        inside = np.all(np.abs(q) <= u_max, axis=1)
        flat = ((q + u_max) @ strides)
        flat[~inside] = total
        return flat.astype(np.int64)

    succ = [flatten(pts @ base.T - s * np.array(dig, dtype=np.int64))
            for dig in system.digits]
    ext = np.zeros(total + 1, dtype=bool)  # sentinel slot stays dead
    while True:
        ext[:total] = alive
        nxt = alive & ext[succ[0]]
        for sc in succ[1:]:
            np.logical_or(nxt, alive & ext[sc], out=nxt)
        if np.array_equal(nxt, alive):
            break
        alive = nxt

    center = np.all(pts % 2 != 0, axis=1)
    occ_flat = alive & center
    occ_idx = np.nonzero(occ_flat)[0]

    # translate cover counts, needed only at occupied centers
    ext[:total] = alive
    cover = np.zeros(total, dtype=np.int32)
    sub = pts[occ_idx]
    for k in linalg.integer_points_in_ball(2.0 * r + 1.0, d):
        cover[occ_idx] += ext[flatten(sub - s * np.array(k, dtype=np.int64))]
    if occ_idx.size:
        vals, freq = np.unique(cover[occ_idx], return_counts=True)
        mult = int(vals[np.argmax(freq)])
    else:
        mult = 1
    w = np.zeros(total, dtype=np.float64)
    w[occ_idx] = np.minimum(1.0, mult / cover[occ_idx])

    # per-center branch claim counts #{digits d : center in B^-1(X + d)}
    claims = np.zeros(total, dtype=np.int16)
    for sc in succ:
        claims[occ_idx] += ext[sc[occ_idx]]

    # cells have the odd grid coordinates as centers; the first odd value
    # in [-u_max, u_max] sits at index 1 - u_max % 2
    start = 1 - u_max % 2
    first_center = -u_max + start
    per_axis = (2 * u_max + 1 - start + 1) // 2
    dims = (per_axis,) * d
    origin = tuple(float(first_center - 1) / s for _ in range(d))

    def cells(arr, dtype):
        out = arr.reshape((n,) * d)
        sl = tuple(slice(start, None, 2) for _ in range(d))
        return np.ascontiguousarray(out[sl]).astype(dtype)

    return Raster(origin=origin, h=h, dims=dims,
                  counts=cells(cover, np.int32),
                  occupancy=cells(occ_flat, bool),
                  threshold=1, depth=0, seed=0, method="exact-grid",
                  weights=cells(w, np.float64), multiplicity=mult,
                  branch_claims=cells(claims, np.int16))


def render_raster(system: RadixSystem, h: float, depth: int | None = None,
                  cap: int = DEFAULT_CAP, seed: int = 0,
                  method: str = "auto") -> Raster:
    """Occupancy raster at cell size h: exact grid route when feasible
    (``method`` "auto" or "exact"), sampled cloud otherwise."""
    if method not in ("auto", "exact", "cloud"):
        raise ValueError(f"unknown raster method {method!r}")
    if method in ("auto", "exact"):
        r = exact_raster(system, h)
        if r is not None:
            return r
        if method == "exact":
            raise ValueError("exact raster infeasible for this cell size")
    if depth is None:
        depth = default_depth(system, h)
    return rasterize(system, build_cloud(system, depth, cap=cap, seed=seed), h)


def measure_estimate(raster: Raster) -> float:
    """Occupied-cell count times h^d; boundary cells shared by several
    integer translates of X count fractionally on the exact route."""
    if raster.weights is not None:
        return float(raster.weights.sum()) * raster.h ** raster.dim
    return float(raster.occupancy.sum()) * raster.h ** raster.dim


# -- membership ------------------------------------------------------------


def _exact_successors(system: RadixSystem, y, rsq: float):
    out = []
    by = linalg.matvec(system.base, y)
    for dvec in system.digits:
        z = linalg.vec_sub(by, dvec)
        if float(sum(c * c for c in z)) <= rsq:
            out.append(z)
    return out


def _decide_exact(system: RadixSystem, x0, budget: int) -> bool | None:
    """True iff some digit tail for x0 stays in the escape ball forever.

    Rational states inside the ball form a finite graph (denominators never
    grow under y -> B y - d), so reachability of a cycle decides membership
    exactly.  Returns None if the node budget runs out.
    """
    rsq = system.escape_radius ** 2 * (1 + 1e-9)
    if float(sum(c * c for c in x0)) > rsq:
        return False
    sent = object()
    GRAY, BLACK = 1, 2
    color = {x0: GRAY}
    truth: dict = {}
    stack = [(x0, iter(_exact_successors(system, x0, rsq)))]
    nodes = 1
    while stack:
        node, it = stack[-1]
        if truth.get(node):
            stack.pop()
            color[node] = BLACK
            if stack:
                truth[stack[-1][0]] = True
            continue
        child = next(it, sent)
        if child is sent:
            stack.pop()
            color[node] = BLACK
            truth.setdefault(node, False)
            if stack and truth[node]:
                truth[stack[-1][0]] = True
            continue
        c = color.get(child)
        if c is None:
            nodes += 1
            if nodes > budget:
                return None
            color[child] = GRAY
            stack.append((child, iter(_exact_successors(system, child, rsq))))
        elif c == GRAY:
            truth[node] = True
        elif truth.get(child):
            truth[node] = True
    return bool(truth.get(x0, False))


def _survives_float(system: RadixSystem, x0, limit: int, budget: list) -> bool:
    rsq = system.escape_radius ** 2 * (1 + 1e-9)
    b = np.array(system.base, dtype=float)
    dig = np.array(system.digits, dtype=float)

    def rec(y, depth):
        if depth == 0 or budget[0] <= 0:
            return True
        budget[0] -= 1
        by = b @ y
        for dvec in dig:
            z = by - dvec
            if float(z @ z) <= rsq:
                if rec(z, depth - 1):
                    return True
        return False

    y0 = np.array(x0, dtype=float)
    if float(y0 @ y0) > rsq:
        return False
    return rec(y0, limit)


def membership(system: RadixSystem, x, depth_limit: int = DEFAULT_FLOAT_DEPTH,
               budget: int = DEFAULT_EXACT_BUDGET) -> Membership:
    """Decide x in X(B, digits).

    Exact for rational input (eventually periodic orbits settle in a finite
    state graph); float input can only be refuted or left undecided.
    """
    if all(isinstance(c, (int, Fraction)) for c in x):
        x0 = tuple(Fraction(c) for c in x)
        res = _decide_exact(system, x0, budget)
        if res is None:
            return Membership.UNDECIDED
        return Membership.INSIDE if res else Membership.OUTSIDE
    if _survives_float(system, tuple(float(c) for c in x), depth_limit,
                       [200_000]):
        return Membership.UNDECIDED
    return Membership.OUTSIDE


# -- tiling ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CoverageReport:
    lattice: Lattice
    window_origin: tuple[float, ...]
    window_dims: tuple[int, ...]
    cell_size: float
    multiplicity: np.ndarray
    min_multiplicity: float
    max_multiplicity: float
    mean_multiplicity: float
    off_one_fraction: float
    histogram: dict[float, int]
    certified: bool

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice.to_json(),
            "cell_size": self.cell_size,
            "min": self.min_multiplicity,
            "max": self.max_multiplicity,
            "mean": self.mean_multiplicity,
            "off_one_fraction": self.off_one_fraction,
            "histogram": {str(k): v for k, v in self.histogram.items()},
            "certified": self.certified,
        }


def tiling_check(raster: Raster, lattice: Lattice,
                 window: tuple | None = None,
                 mean_tol: float = 0.05,
                 off_tol: float = 0.2) -> CoverageReport:
    """Count, per window cell, the lattice translates of the raster
    covering it.  Exact rasters fold their fractional boundary weights,
    so a genuine tile scores exactly 1 in every cell.  A lattice
    certifies as tiling when the mean multiplicity is within ``mean_tol``
    of 1 and the fraction of cells off 1 by more than 1/4 is below
    ``off_tol``.

    The default window [-1, 1)^d is a whole number of periods for every
    lattice whose axis periods divide 2, making the mean exact there; any
    window works for the pointwise statistics.
    """
    d = raster.dim
    h = raster.h
    if window is None:
        window = (tuple(-1.0 for _ in range(d)), tuple(1.0 for _ in range(d)))
    lo, hi = window
    worigin = tuple(math.floor(l / h + 1e-9) * h for l in lo)
    wdims = tuple(int(round((hh - ll) / h)) for ll, hh in zip(lo, hi))
    layer = raster.weights if raster.weights is not None else raster.occupancy
    mult = np.zeros(wdims, dtype=np.float64)
    xmin = raster.origin
    xmax = tuple(o + n * h for o, n in zip(raster.origin, raster.dims))
    box_lo = [Fraction(ll) - Fraction(xm) for ll, xm in zip(lo, xmax)]
    box_hi = [Fraction(hh) - Fraction(xm) for hh, xm in zip(hi, xmin)]
    for gamma in lattice.enumerate_in_box(box_lo, box_hi):
        shift = tuple(int(round((wo - xo - float(g)) / h))
                      for wo, xo, g in zip(worigin, raster.origin, gamma))
        src = []
        dst = []
        empty = False
        for ax in range(d):
            a = max(0, -shift[ax])
            b = min(wdims[ax], raster.dims[ax] - shift[ax])
            if a >= b:
                empty = True
                break
            dst.append(slice(a, b))
            src.append(slice(a + shift[ax], b + shift[ax]))
        if empty:
            continue
        mult[tuple(dst)] += layer[tuple(src)]
    vals, freq = np.unique(np.round(mult, 9), return_counts=True)
    mean = float(mult.mean())
    off = float((np.abs(mult - 1.0) > 0.25).mean())
    return CoverageReport(
        lattice=lattice,
        window_origin=worigin,
        window_dims=wdims,
        cell_size=h,
        multiplicity=mult,
        min_multiplicity=float(mult.min()),
        max_multiplicity=float(mult.max()),
        mean_multiplicity=mean,
        off_one_fraction=off,
        histogram={float(v): int(c) for v, c in zip(vals, freq)},
        certified=bool(abs(mean - 1.0) <= mean_tol and off <= off_tol),
    )


def branch_overlap_fraction(system: RadixSystem, depth: int, h: float,
                            cap: int = DEFAULT_CAP, seed: int = 0,
                            raster: Raster | None = None) -> float:
    """Fraction of occupied cells claimed by two or more branch images
    tau_d(X).  Zero up to boundary cells when branches overlap on a null
    set.  Pass an exact raster to reuse its per-cell claim counts instead
    of rebuilding clouds."""
    if raster is None:
        raster = exact_raster(system, h)
    if raster is not None and raster.branch_claims is not None:
        occ = raster.occupancy
        n_occ = int(occ.sum())
        if n_occ == 0:
            return 0.0
        return float((raster.branch_claims[occ] >= 2).sum()) / n_occ
    cloud = build_cloud(system, depth, cap=cap, seed=seed)
    binv_t = np.linalg.inv(np.array(system.base, dtype=float)).T
    dig = np.array(system.digits, dtype=float)
    claimed = None
    union = None
    for i in range(len(system.digits)):
        sub = PointCloud((cloud.points + dig[i]) @ binv_t, cloud.depth + 1,
                         cloud.exhaustive, cloud.seed)
        r = rasterize(system, sub, h)
        occ = r.occupancy.astype(np.int16)
        claimed = occ if claimed is None else claimed + occ
        union = r.occupancy if union is None else (union | r.occupancy)
    n_union = int(union.sum())
    if n_union == 0:
        return 0.0
    return float((claimed >= 2).sum()) / n_union


# -- files -------------------------------------------------------------------


def write_pgm(raster: Raster, path: str) -> None:
    """Binary PGM (P5): occupied cells black (0), empty white (255),
    rows top to bottom."""
    if raster.dim == 1:
        width, height = raster.dims[0], 1
        img = np.where(raster.occupancy, 0, 255).astype(np.uint8)[None, :]
    elif raster.dim == 2:
        nx, ny = raster.dims
        width, height = nx, ny
        cols = np.where(raster.occupancy, 0, 255).astype(np.uint8)
        img = cols.T[::-1, :]  # row 0 = top = largest y index
    else:
        raise ValueError("PGM output supports 1-D and 2-D rasters only")
    with open(path, "wb") as fh:
        fh.write(b"P5\n")
        fh.write(f"{width} {height}\n".encode())
        fh.write(b"255\n")
        fh.write(img.tobytes())


def write_sidecar(raster: Raster, path: str) -> None:
    meta = {
        "origin": list(raster.origin),
        "cell_size": raster.h,
        "dims": list(raster.dims),
        "method": raster.method,
        "depth": raster.depth,
        "seed": raster.seed,
        "threshold": raster.threshold,
        "occupied_cells": int(raster.occupancy.sum()),
        "measure_estimate": measure_estimate(raster),
    }
    if raster.multiplicity is not None:
        meta["translate_multiplicity"] = raster.multiplicity
    with open(path, "w") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")
