"""Glued polynomials with many special parabolic points.

The triangle Delta_d = Conv{(2,2), (d-2,2), (2,d-2)} is cut into unimodular
tiles of three kinds:

* P1_i     : x^i y^2 (1 + x + y),   triangle (i,2), (i+1,2), (i,3)
* P2_(k,l) : x^k y^l (x + y + y^2), triangle (k+1,l), (k,l+1), (k,l+2)
* P3_(k,l) : x^k y^l (x + xy + y^2), triangle (k+1,l), (k+1,l+1), (k,l+2)

A convex lifting inducing the triangulation is found by linear programming
and verified exactly. Counting TSPP of the glued polynomial f_t uses one
search window per face: near a face with normal (alpha, beta) the points of
f_t sit at (t^alpha X, t^beta Y) where (X, Y) is close to a point of the
tile, so each window solves the flattened polynomial and maps back exactly.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from gmpy2 import mpq

from .parabolic import build_system
from .patchwork import (
    Lifting,
    Subdivision,
    face_gamma,
    face_normal,
    flatten_face,
    patchworking_polynomial,
    regular_subdivision,
    validate_inducing,
)
from .poly import SparsePoly, as_rational
from .solver import Box, CertifiedPoint, SolverConfig, isolate_tspp

log = logging.getLogger(__name__)

__all__ = [
    "TileSpec",
    "EXPECTED_TILE_COUNTS",
    "build_triangulation",
    "build_lifting",
    "glued_polynomial",
    "tile_count",
    "glued_points",
    "GlueReport",
    "reproduce_theorem",
    "default_t_values",
    "theorem_bound",
    "reports_csv",
    "reports_json",
]

EXPECTED_TILE_COUNTS = {"P1": 1, "P2": 1, "P3": 3}

TILE_WINDOW = Box(-10, 10, -10, 10)
WIDE_WINDOW = Box(-100, 100, -100, 100)
GLUE_MARGIN = mpq(1, 64)


@dataclass(frozen=True)
class TileSpec:
    kind: str
    params: tuple
    triangle: tuple
    polynomial: SparsePoly

    @property
    def name(self) -> str:
        if self.kind == "P1":
            return f"P1_{self.params[0]}"
        return f"{self.kind}_({self.params[0]},{self.params[1]})"

    @property
    def expected(self) -> int:
        return EXPECTED_TILE_COUNTS[self.kind]


def _tile(kind: str, k: int, l: int = 2) -> TileSpec:
    if kind == "P1":
        tri = ((k, 2), (k + 1, 2), (k, 3))
        cof = {(0, 0): 1, (1, 0): 1, (0, 1): 1}
        params = (k,)
    elif kind == "P2":
        tri = ((k + 1, l), (k, l + 1), (k, l + 2))
        cof = {(1, 0): 1, (0, 1): 1, (0, 2): 1}
        params = (k, l)
    elif kind == "P3":
        tri = ((k + 1, l), (k + 1, l + 1), (k, l + 2))
        cof = {(1, 0): 1, (1, 1): 1, (0, 2): 1}
        params = (k, l)
    else:
        raise ValueError(kind)
    base = (k, 2) if kind == "P1" else (k, l)
    poly = SparsePoly({(i + base[0], j + base[1]): c for (i, j), c in cof.items()})
    return TileSpec(kind, params, tri, poly)


def tile(kind: str, *params: int) -> TileSpec:
    """A single tile by kind and index, e.g. ``tile("P3", 2, 2)``."""
    return _tile(kind, *params)


def theorem_bound(d: int) -> int:
    return (d - 4) * (2 * d - 9)


def build_triangulation(d: int) -> list[TileSpec]:
    """Unimodular triangulation of Delta_d, d >= 5, into (d-4)^2 tiles."""
    if d < 5:
        raise ValueError("degree must be at least 5")
    tiles = [_tile("P1", i) for i in range(2, d - 2)]
    for k in range(2, d - 3):
        for l in range(2, d - k - 1):
            tiles.append(_tile("P2", k, l))
            tiles.append(_tile("P3", k, l))
    return tiles


def _lattice_points(d: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(2, d - 1) for j in range(2, d - 1) if i + j <= d]


def _barycentric(tri, p):
    (ax, ay), (bx, by), (cx, cy) = tri
    det = (bx - ax) * (cy - ay) - (cx - ax) * (by - ay)
    u = Fraction((p[0] - ax) * (cy - ay) - (cx - ax) * (p[1] - ay), det)
    v = Fraction((bx - ax) * (p[1] - ay) - (p[0] - ax) * (by - ay), det)
    return (1 - u - v, u, v)


def _interior_edges(tiles: Sequence[TileSpec]):
    """Pairs (triangle, opposite vertex of the neighbour) across shared edges."""
    by_edge: dict = {}
    for t in tiles:
        tri = t.triangle
        for a in range(3):
            e = frozenset((tri[a], tri[(a + 1) % 3]))
            by_edge.setdefault(e, []).append(t)
    pairs = []
    for e, ts in by_edge.items():
        if len(ts) == 2:
            t1, t2 = ts
            (opp,) = set(t2.triangle) - e
            pairs.append((t1.triangle, opp))
    return pairs


def build_lifting(d: int, tiles: Sequence[TileSpec] | None = None) -> Lifting:
    """Integer convex lifting inducing the triangulation, verified exactly."""
    from scipy.optimize import linprog

    tiles = list(tiles) if tiles is not None else build_triangulation(d)
    pts = _lattice_points(d)
    if len(tiles) == 1:
        return Lifting({p: 0 for p in pts})
    idx = {p: n for n, p in enumerate(pts)}
    rows, rhs = [], []
    margin = 4.0
    for tri, opp in _interior_edges(tiles):
        row = np.zeros(len(pts))
        row[idx[opp]] -= 1.0
        for v, w in zip(tri, _barycentric(tri, opp)):
            row[idx[v]] += float(w)
        rows.append(row)  # L_T(opp) - lambda(opp) <= -margin
        rhs.append(-margin)
    res = linprog(np.ones(len(pts)), A_ub=np.array(rows), b_ub=np.array(rhs),
                  bounds=[(0, None)] * len(pts), method="highs")
    if not res.success:
        raise RuntimeError(f"no convex lifting found: {res.message}")
    vals = np.rint(res.x).astype(int)
    vals -= vals.min()
    lift = Lifting({p: int(vals[idx[p]]) for p in pts})
    if not validate_inducing(lift, [t.triangle for t in tiles]):
        raise RuntimeError("rounded lifting does not induce the triangulation")
    return lift


def glued_polynomial(d: int) -> SparsePoly:
    """x^2 y^2 g with g the sum of all monomials of degree at most d - 4."""
    return SparsePoly({p: 1 for p in _lattice_points(d)})


def tile_count(t: TileSpec, cfg: SolverConfig | None = None, expansion_check: bool = False) -> int:
    """Number of certified TSPP* of a tile in [-10, 10]^2."""
    cfg = cfg or SolverConfig()
    sys_ = build_system(t.polynomial)
    res = isolate_tspp(sys_, TILE_WINDOW, cfg)
    if res.unresolved:
        raise RuntimeError(f"{t.name}: {len(res.unresolved)} unresolved regions")
    if expansion_check:
        wide = isolate_tspp(sys_, WIDE_WINDOW, cfg)
        if wide.count != res.count or wide.unresolved:
            log.warning("%s: %d points in the wide window vs %d", t.name, wide.count, res.count)
    return res.count


# ---------------------------------------------------------------- glued counting


def _map_box(b: Box, sx: mpq, sy: mpq) -> Box:
    xs = sorted((b.x_lo * sx, b.x_hi * sx))
    ys = sorted((b.y_lo * sy, b.y_hi * sy))
    return Box(xs[0], xs[1], ys[0], ys[1])


@dataclass(frozen=True)
class GluedPoint:
    enclosure: Box
    isolating: Box
    window: str

    @property
    def midpoint(self):
        m = self.enclosure.midpoint
        return (float(m[0]), float(m[1]))


def glued_points(f: SparsePoly, lift: Lifting, t0, cfg: SolverConfig | None = None,
                 window: Box = TILE_WINDOW, margin=GLUE_MARGIN):
    """Certified TSPP* of f_t0 found through the face windows.

    Returns ``(points, unresolved_count)``; the points are mapped back to the
    original coordinates and deduplicated with their uniqueness boxes.
    """
    t0 = as_rational(t0)
    if t0 == 0:
        raise ValueError("t must be nonzero")
    base = cfg or SolverConfig()
    wcfg = SolverConfig(eps_box=base.eps_box, max_depth=base.max_depth, residual_tol=base.residual_tol,
                        off_axes=True, axis_margin=margin, inflate=base.inflate)
    sub = regular_subdivision(lift)
    f_t = patchworking_polynomial(f, lift)
    windows = [("identity", f_t.specialize(t0), mpq(1), mpq(1))]
    for k, face in enumerate(sub.faces):
        alpha, beta = face_normal(sub, k)
        flat, _ = flatten_face(f_t, sub, k)
        windows.append((f"face{k}", flat.specialize(t0), t0 ** alpha, t0 ** beta))
    found: list[GluedPoint] = []
    unresolved = 0
    for name, g, sx, sy in windows:
        res = isolate_tspp(build_system(g), window, wcfg)
        unresolved += len(res.unresolved)
        for p in res.points:
            cand = GluedPoint(_map_box(p.enclosure, sx, sy), _map_box(p.isolating, sx, sy), name)
            if not any(_same_zero(cand, q) for q in found):
                found.append(cand)
    found.sort(key=lambda p: (p.enclosure.x_lo, p.enclosure.y_lo))
    return found, unresolved


def _same_zero(a: GluedPoint, b: GluedPoint) -> bool:
    if not a.enclosure.intersects(b.enclosure):
        return False
    return b.isolating.contains_box(a.enclosure) or a.isolating.contains_box(b.enclosure)


@dataclass
class GlueReport:
    d: int
    t: mpq
    tile_counts: dict
    tile_sum: int
    glued_count: int
    bound: int
    unresolved: int
    seconds: float
    points: list = field(default_factory=list, repr=False)

    @property
    def inequality_holds(self) -> bool:
        return self.glued_count >= self.bound

    @property
    def monotone_holds(self) -> bool:
        return self.glued_count >= self.tile_sum

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "t": f"{self.t.numerator}/{self.t.denominator}",
            "t_float": float(self.t),
            "tile_counts": self.tile_counts,
            "tile_sum": self.tile_sum,
            "glued_count": self.glued_count,
            "bound": self.bound,
            "inequality_holds": self.inequality_holds,
            "monotone_holds": self.monotone_holds,
            "unresolved": self.unresolved,
            "seconds": round(self.seconds, 3),
            "points": [list(p.midpoint) for p in self.points],
        }


def default_t_values() -> list[mpq]:
    """t = +-2^-k for k = 4..16."""
    out = []
    for k in range(4, 17):
        out.append(mpq(1, 2 ** k))
        out.append(mpq(-1, 2 ** k))
    return out


def _glue_job(args):
    d, t0, cfg, tile_counts, tile_sum = args
    start = time.perf_counter()
    lift = build_lifting(d)
    pts, unresolved = glued_points(glued_polynomial(d), lift, t0, cfg)
    return GlueReport(d=d, t=t0, tile_counts=tile_counts, tile_sum=tile_sum, glued_count=len(pts),
                      bound=theorem_bound(d), unresolved=unresolved,
                      seconds=time.perf_counter() - start, points=pts)


def _resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        env = os.environ.get("PARABOLICA_JOBS")
        jobs = int(env) if env else 1
    return max(1, int(jobs))


def reproduce_theorem(d: int, t_values: Sequence | None = None, cfg: SolverConfig | None = None,
                      jobs: int | None = None) -> list[GlueReport]:
    """Tile counts and glued counts for each t, one GlueReport per t."""
    if d < 5:
        raise ValueError("degree must be at least 5")
    cfg = cfg or SolverConfig()
    t_values = [as_rational(t) for t in (t_values if t_values is not None else default_t_values())]
    tiles = build_triangulation(d)
    counts = {}
    for t in tiles:
        counts[t.name] = tile_count(t, cfg)
    tile_sum = sum(counts.values())
    args = [(d, t0, cfg, counts, tile_sum) for t0 in t_values]
    n = _resolve_jobs(jobs)
    if n == 1:
        return [_glue_job(a) for a in args]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(_glue_job, args))


def largest_t(reports: Sequence[GlueReport]) -> dict:
    """Tested t of largest magnitude, per sign, at which the bound holds."""
    pos = [r.t for r in reports if r.t > 0 and r.inequality_holds]
    neg = [r.t for r in reports if r.t < 0 and r.inequality_holds]
    return {
        "positive": f"{max(pos).numerator}/{max(pos).denominator}" if pos else None,
        "negative": f"{min(neg).numerator}/{min(neg).denominator}" if neg else None,
    }


def reports_json(reports: Sequence[GlueReport]) -> str:
    body = {"reports": [r.to_json() for r in reports], "largest_t": largest_t(reports)}
    return json.dumps(body, indent=2, sort_keys=True)


def reports_csv(reports: Sequence[GlueReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["d", "t", "tile_sum", "glued_count", "bound", "inequality_holds", "monotone_holds", "unresolved"])
    for r in reports:
        w.writerow([r.d, f"{r.t.numerator}/{r.t.denominator}", r.tile_sum, r.glued_count, r.bound,
                    r.inequality_holds, r.monotone_holds, r.unresolved])
    return buf.getvalue()
