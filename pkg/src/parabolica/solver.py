"""Certified isolation of transversal special parabolic points.

A point q is reported when it is a zero of (E1, E2) whose uniqueness in a
box is proven by the Krawczyk test, the interval Jacobian of (E1, E2)
excludes singular matrices (transversal crossing) and the interval gradient
of H excludes the origin (smooth point of the Hessian curve). A common zero
of E1 and E2 with a nonzero gradient of H automatically lies on H = 0, so
these checks certify q as a point of the triple intersection.

Off the coordinate axes every polynomial can be divided by its monomial
content x^a y^b without changing the zero set or the transversality of the
crossing, which keeps the interval enclosures tight.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq

from . import _interval as iv
from .parabolic import ParabolicSystem
from .poly import SparsePoly, as_rational

__all__ = [
    "Box",
    "SolverConfig",
    "CertifiedPoint",
    "Unresolved",
    "TSPPResult",
    "DegenerateSystemError",
    "isolate_tspp",
    "certify_transversal",
    "certify_pair",
    "certify_empty",
    "has_common_factor",
]


class DegenerateSystemError(ValueError):
    """E1 and E2 share a non-constant factor, so isolation is impossible."""


@dataclass(frozen=True)
class Box:
    """Closed axis-parallel box with exact rational endpoints."""

    x_lo: mpq
    x_hi: mpq
    y_lo: mpq
    y_hi: mpq

    def __post_init__(self):
        for name in ("x_lo", "x_hi", "y_lo", "y_hi"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.x_lo > self.x_hi or self.y_lo > self.y_hi:
            raise ValueError("empty box")

    @classmethod
    def square(cls, center, radius) -> "Box":
        cx, cy = (as_rational(c) for c in center)
        r = as_rational(radius)
        return cls(cx - r, cx + r, cy - r, cy + r)

    @classmethod
    def parse(cls, text: str) -> "Box":
        """``"xlo,xhi,ylo,yhi"`` with exact rational entries."""
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) != 4:
            raise ValueError("box must be 'xlo,xhi,ylo,yhi'")
        return cls(*(as_rational(p) for p in parts))

    @classmethod
    def from_floats(cls, a) -> "Box":
        return cls(*(mpq(float(v)) for v in a))

    @property
    def width(self) -> mpq:
        return max(self.x_hi - self.x_lo, self.y_hi - self.y_lo)

    @property
    def midpoint(self) -> tuple[mpq, mpq]:
        return ((self.x_lo + self.x_hi) / 2, (self.y_lo + self.y_hi) / 2)

    def contains_point(self, x, y) -> bool:
        return self.x_lo <= x <= self.x_hi and self.y_lo <= y <= self.y_hi

    def contains_box(self, other: "Box") -> bool:
        return (self.x_lo <= other.x_lo and other.x_hi <= self.x_hi
                and self.y_lo <= other.y_lo and other.y_hi <= self.y_hi)

    def intersects(self, other: "Box") -> bool:
        return not (other.x_hi < self.x_lo or self.x_hi < other.x_lo
                    or other.y_hi < self.y_lo or self.y_hi < other.y_lo)

    def touches_axes(self) -> bool:
        return (self.x_lo <= 0 <= self.x_hi) or (self.y_lo <= 0 <= self.y_hi)

    def as_pairs(self):
        return (self.x_lo, self.x_hi), (self.y_lo, self.y_hi)

    def float_bounds(self) -> tuple[float, float, float, float]:
        """Outward-rounded float box containing this one."""
        return (iv.rat_to_interval(self.x_lo)[0], iv.rat_to_interval(self.x_hi)[1],
                iv.rat_to_interval(self.y_lo)[0], iv.rat_to_interval(self.y_hi)[1])

    def to_json(self) -> dict:
        return {"x": [_qstr(self.x_lo), _qstr(self.x_hi)], "y": [_qstr(self.y_lo), _qstr(self.y_hi)]}


def _qstr(q: mpq) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class SolverConfig:
    eps_box: float = 2.0 ** -40
    max_depth: int = 60
    residual_tol: float = 2.0 ** -30
    off_axes: bool = True
    axis_margin: mpq = mpq(0)
    inflate: float = 0.125

    def __post_init__(self):
        object.__setattr__(self, "axis_margin", as_rational(self.axis_margin))
        if self.eps_box <= 0 or self.max_depth < 1 or self.residual_tol <= 0:
            raise ValueError("invalid solver configuration")


@dataclass(frozen=True)
class CertifiedPoint:
    enclosure: Box
    isolating: Box
    midpoint: tuple[float, float]
    exists_unique: bool
    transversal: bool
    hessian_smooth: bool
    off_axes: bool
    residuals: dict = field(compare=False)

    def to_json(self) -> dict:
        return {
            "enclosure": self.enclosure.to_json(),
            "isolating": self.isolating.to_json(),
            "midpoint": [float(self.midpoint[0]), float(self.midpoint[1])],
            "flags": {
                "exists_unique": self.exists_unique,
                "transversal": self.transversal,
                "hessian_smooth": self.hessian_smooth,
                "off_axes": self.off_axes,
            },
            "residuals": {k: [_qstr(v[0]), _qstr(v[1])] for k, v in self.residuals.items()},
        }


@dataclass(frozen=True)
class Unresolved:
    box: Box
    reason: str
    n_boxes: int

    def to_json(self) -> dict:
        return {"box": self.box.to_json(), "reason": self.reason, "n_boxes": self.n_boxes}


@dataclass
class TSPPResult:
    points: list
    unresolved: list
    search: Box
    config: SolverConfig
    stats: dict

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def complete(self) -> bool:
        return not self.unresolved

    def to_json(self) -> dict:
        cfg = asdict(self.config)
        cfg["axis_margin"] = _qstr(self.config.axis_margin)
        return {
            "search_box": self.search.to_json(),
            "config": cfg,
            "count": self.count,
            "points": [p.to_json() for p in self.points],
            "unresolved": [u.to_json() for u in self.unresolved],
            "stats": self.stats,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


# ---------------------------------------------------------------- degeneracy


def has_common_factor(p: SparsePoly, q: SparsePoly) -> bool:
    """True when p and q share a non-constant factor (or one is zero)."""
    if p.is_zero() or q.is_zero():
        return True
    import sympy

    x, y = sympy.symbols("x y")
    g = sympy.gcd(sympy.Poly(p.to_sympy((x, y)), x, y), sympy.Poly(q.to_sympy((x, y)), x, y))
    return g.total_degree() > 0


# ---------------------------------------------------------------- corner test


def _newton_weights(poly: SparsePoly) -> list[tuple[int, int]]:
    """Weight vectors of the compact edges of the Newton diagram, plus (1, 1)."""
    pts = sorted(poly.support)
    # lower-left convex chain, x increasing
    chain: list = []
    for p in pts:
        while len(chain) >= 2:
            (x1, y1), (x2, y2) = chain[-2], chain[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                chain.pop()
            else:
                break
        chain.append(p)
    weights = {(1, 1)}
    for (i1, j1), (i2, j2) in zip(chain, chain[1:]):
        if j2 < j1:
            a, b = j1 - j2, i2 - i1
            g = math.gcd(a, b)
            weights.add((a // g, b // g))
    return sorted(weights)


class _CornerTest:
    """Exclusion of zeros near the origin by weighted blow-ups.

    With x = r^a u, y = r^b v and max(|u|, |v|) = 1, a polynomial equals
    r^m q(r, u, v); if q has no zero for r in [0, R] then p has no zero in
    the corresponding box apart from the origin itself.
    """

    def __init__(self, polys: Sequence[SparsePoly]):
        self.cases = []
        for p in polys:
            if p.is_zero() or p.coeff(0, 0):
                continue
            for a, b in _newton_weights(p):
                m = min(a * i + b * j for i, j in p.support)
                per_sign = {}
                for sx in (1, -1):
                    for sy in (1, -1):
                        side_u = {}
                        side_v = {}
                        for (i, j), c in p.terms.items():
                            c = c * (sx ** i) * (sy ** j)
                            e = a * i + b * j - m
                            side_u[(e, j)] = side_u.get((e, j), 0) + c  # |u| = 1, v = s
                            side_v[(e, i)] = side_v.get((e, i), 0) + c  # |v| = 1, u = s
                        per_sign[(sx, sy)] = (
                            iv.IntervalPoly({k: v for k, v in side_u.items() if v}),
                            iv.IntervalPoly({k: v for k, v in side_v.items() if v}),
                        )
                self.cases.append((a, b, per_sign))

    def excludes(self, sx: int, sy: int, w: float, h: float) -> bool:
        if not self.cases:
            return False
        nr, ns = 4, 16
        s_edges = np.linspace(0.0, 1.0, ns + 1)
        for a, b, per_sign in self.cases:
            with np.errstate(over="ignore"):
                R = iv.up(max(w ** (1.0 / a), h ** (1.0 / b)) * (1.0 + 1e-9))
            r_edges = np.linspace(0.0, R, nr + 1)
            r_edges[-1] = R
            rl = np.repeat(r_edges[:-1], ns)
            rh = np.repeat(r_edges[1:], ns)
            sl = np.tile(s_edges[:-1], nr)
            sh = np.tile(s_edges[1:], nr)
            ok = True
            for ip in per_sign[(sx, sy)]:
                lo, hi = ip.enclose(rl, rh, sl, sh)
                if np.any(iv.contains_zero((lo, hi))):
                    ok = False
                    break
            if ok:
                return True
        return False


# ---------------------------------------------------------------- engine


class _Engine:
    def __init__(self, system: ParabolicSystem, strip: bool):
        h, e1, e2 = system.h, system.e1, system.e2
        if not all(isinstance(p, SparsePoly) for p in (h, e1, e2)):
            raise TypeError("specialize a parametric system before solving")
        if strip:
            e1s, e2s, hs = (p.strip_monomial()[0] for p in (e1, e2, h))
        else:
            e1s, e2s, hs = e1, e2, h
        if e1s.is_zero() or e2s.is_zero():
            raise DegenerateSystemError("E1 or E2 vanishes identically; the system is degenerate")
        if has_common_factor(e1s, e2s):
            raise DegenerateSystemError("E1 and E2 share a common factor; the system is degenerate")
        self.e1s, self.e2s, self.hs = e1s, e2s, hs
        self.g_e1 = iv.GradientEnclosure(e1s)
        self.g_e2 = iv.GradientEnclosure(e2s)
        self.g_h = iv.GradientEnclosure(hs)
        self.full = {name: iv.IntervalPoly.from_poly(p) for name, p in (("H", h), ("E1", e1), ("E2", e2))}
        self.hx = iv.IntervalPoly.from_poly(h.diff("x"))
        self.hy = iv.IntervalPoly.from_poly(h.diff("y"))
        self.corner = _CornerTest([e1s, e2s, hs]) if strip else None

    # -- Krawczyk on (E1, E2) over boxes B (arrays)
    def krawczyk(self, xl, xh, yl, yh):
        g1, g2 = self.g_e1, self.g_e2
        with np.errstate(all="ignore"):
            cx = 0.5 * xl + 0.5 * xh
            cy = 0.5 * yl + 0.5 * yh
            f1 = g1.p.enclose_point(cx, cy)
            f2 = g2.p.enclose_point(cx, cy)
            j11 = g1.px.enclose(xl, xh, yl, yh)
            j12 = g1.py.enclose(xl, xh, yl, yh)
            j21 = g2.px.enclose(xl, xh, yl, yh)
            j22 = g2.py.enclose(xl, xh, yl, yh)
            m11 = 0.5 * (j11[0] + j11[1])
            m12 = 0.5 * (j12[0] + j12[1])
            m21 = 0.5 * (j21[0] + j21[1])
            m22 = 0.5 * (j22[0] + j22[1])
            det = m11 * m22 - m12 * m21
            good = np.isfinite(det) & (det != 0.0)
            det = np.where(good, det, 1.0)
            y11, y12, y21, y22 = m22 / det, -m12 / det, -m21 / det, m11 / det
            for a in (y11, y12, y21, y22):
                good &= np.isfinite(a)
            y11, y12, y21, y22 = (np.where(good, a, 0.0) for a in (y11, y12, y21, y22))
            yf1 = iv.add(iv.scale(y11, f1), iv.scale(y12, f2))
            yf2 = iv.add(iv.scale(y21, f1), iv.scale(y22, f2))
            one = (np.ones_like(cx), np.ones_like(cx))
            a11 = iv.sub(one, iv.add(iv.scale(y11, j11), iv.scale(y12, j21)))
            a12 = iv.neg(iv.add(iv.scale(y11, j12), iv.scale(y12, j22)))
            a21 = iv.neg(iv.add(iv.scale(y21, j11), iv.scale(y22, j21)))
            a22 = iv.sub(one, iv.add(iv.scale(y21, j12), iv.scale(y22, j22)))
            dx = (iv.down(xl - cx), iv.up(xh - cx))
            dy = (iv.down(yl - cy), iv.up(yh - cy))
            k1 = iv.add(iv.sub((cx, cx), yf1), iv.add(iv.mul(a11, dx), iv.mul(a12, dy)))
            k2 = iv.add(iv.sub((cy, cy), yf2), iv.add(iv.mul(a21, dx), iv.mul(a22, dy)))
            inside = good & (k1[0] > xl) & (k1[1] < xh) & (k2[0] > yl) & (k2[1] < yh)
            inside &= np.isfinite(k1[0]) & np.isfinite(k1[1]) & np.isfinite(k2[0]) & np.isfinite(k2[1])
        return inside, good, (k1, k2)

    def jac_det(self, xl, xh, yl, yh):
        g1, g2 = self.g_e1, self.g_e2
        j11 = g1.px.enclose(xl, xh, yl, yh)
        j12 = g1.py.enclose(xl, xh, yl, yh)
        j21 = g2.px.enclose(xl, xh, yl, yh)
        j22 = g2.py.enclose(xl, xh, yl, yh)
        return iv.sub(iv.mul(j11, j22), iv.mul(j12, j21))

    def refine(self, b, target_rel: float, max_iter: int = 80):
        """Contract a box known to hold a unique zero via K(B) intersected with B."""
        xl, xh, yl, yh = (np.array([v]) for v in b)
        width = max(xh[0] - xl[0], yh[0] - yl[0])
        for _ in range(max_iter):
            _, good, (k1, k2) = self.krawczyk(xl, xh, yl, yh)
            if not good[0]:
                break
            nxl, nxh = np.maximum(xl, k1[0]), np.minimum(xh, k1[1])
            nyl, nyh = np.maximum(yl, k2[0]), np.minimum(yh, k2[1])
            if nxl[0] > nxh[0] or nyl[0] > nyh[0]:
                return None  # cannot happen for a box with a zero; be safe
            nw = max(nxh[0] - nxl[0], nyh[0] - nyl[0])
            xl, xh, yl, yh = nxl, nxh, nyl, nyh
            if nw >= 0.98 * width:
                width = nw
                break
            width = nw
        return (float(xl[0]), float(xh[0]), float(yl[0]), float(yh[0]))


def _box_arrays(boxes: np.ndarray):
    return boxes[:, 0], boxes[:, 1], boxes[:, 2], boxes[:, 3]


def _split(boxes: np.ndarray) -> np.ndarray:
    xl, xh, yl, yh = _box_arrays(boxes)
    xm = 0.5 * xl + 0.5 * xh
    ym = 0.5 * yl + 0.5 * yh
    out = np.concatenate([
        np.stack([xl, xm, yl, ym], axis=1),
        np.stack([xm, xh, yl, ym], axis=1),
        np.stack([xl, xm, ym, yh], axis=1),
        np.stack([xm, xh, ym, yh], axis=1),
    ])
    return out


def _regions(search: Box, cfg: SolverConfig) -> list[tuple[float, float, float, float]]:
    fx = search.float_bounds()
    if not cfg.off_axes:
        return [fx]
    m = cfg.axis_margin
    xs = []
    ys = []
    mlo, mhi = iv.rat_to_interval(m)
    for lo, hi, out in ((fx[0], fx[1], xs), (fx[2], fx[3], ys)):
        if hi > 0.0:
            a = max(lo, mlo)
            if a < hi:
                out.append((a, hi))
        if lo < 0.0:
            b = min(hi, -mlo)
            if lo < b:
                out.append((lo, b))
    return [(a, b, c, d) for a, b in xs for c, d in ys]


def _cluster(leaves: list) -> list[list]:
    """Group boxes that touch or overlap."""
    n = len(leaves)
    if n == 0:
        return []
    arr = np.array([l[0] for l in leaves])
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        xl, xh, yl, yh = arr[i]
        near = np.nonzero((arr[:, 0] <= xh) & (arr[:, 1] >= xl) & (arr[:, 2] <= yh) & (arr[:, 3] >= yl))[0]
        for j in near:
            ri, rj = find(i), find(int(j))
            if ri != rj:
                parent[rj] = ri
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(leaves[i])
    return [groups[k] for k in sorted(groups)]


def _inside(a, b) -> bool:
    """Float box a inside float box b."""
    return b[0] <= a[0] and a[1] <= b[1] and b[2] <= a[2] and a[3] <= b[3]


def _disjoint(a, b) -> bool:
    return a[1] < b[0] or b[1] < a[0] or a[3] < b[2] or b[3] < a[2]


def isolate_tspp(system: ParabolicSystem, search: Box, cfg: SolverConfig | None = None) -> TSPPResult:
    """Certified enclosures of the transversal special parabolic points in ``search``.

    Every point in the closed search box (excluding the coordinate axes and
    the axis strips of width ``cfg.axis_margin`` in off-axes mode) is either
    inside a returned enclosure, excluded by a proof, or inside a box listed
    under ``unresolved``.
    """
    cfg = cfg or SolverConfig()
    eng = _Engine(system, strip=cfg.off_axes)
    cands: list = []  # (iso, tight)
    leaves: list = []  # (box, reason)
    rejected = 0
    nboxes = 0
    for region in _regions(search, cfg):
        boxes = np.array([region], dtype=float)
        for depth in range(cfg.max_depth + 1):
            if boxes.shape[0] == 0:
                break
            nboxes += boxes.shape[0]
            if cands:
                isos = np.array([c[0] for c in cands])
                inside = np.zeros(boxes.shape[0], dtype=bool)
                for b in isos:
                    inside |= (boxes[:, 0] >= b[0]) & (boxes[:, 1] <= b[1]) & (boxes[:, 2] >= b[2]) & (boxes[:, 3] <= b[3])
                boxes = boxes[~inside]
                if boxes.shape[0] == 0:
                    break
            xl, xh, yl, yh = _box_arrays(boxes)
            keep = np.ones(boxes.shape[0], dtype=bool)
            for g in (eng.g_h, eng.g_e1, eng.g_e2):
                idx = np.nonzero(keep)[0]
                if idx.size == 0:
                    break
                lo, hi = g.enclose(xl[idx], xh[idx], yl[idx], yh[idx])
                keep[idx] = iv.contains_zero((lo, hi))
            boxes = boxes[keep]
            if boxes.shape[0] == 0:
                break
            if eng.corner is not None:
                corner_mask = np.zeros(boxes.shape[0], dtype=bool)
                for k, b in enumerate(boxes):
                    if (b[0] == 0.0 or b[1] == 0.0) and (b[2] == 0.0 or b[3] == 0.0):
                        sx = 1 if b[1] > 0.0 else -1
                        sy = 1 if b[3] > 0.0 else -1
                        w = max(abs(b[0]), abs(b[1]))
                        h = max(abs(b[2]), abs(b[3]))
                        corner_mask[k] = eng.corner.excludes(sx, sy, w, h)
                boxes = boxes[~corner_mask]
                if boxes.shape[0] == 0:
                    break
            # Krawczyk on inflated boxes
            xl, xh, yl, yh = _box_arrays(boxes)
            wx = (xh - xl) * cfg.inflate
            wy = (yh - yl) * cfg.inflate
            ixl, ixh, iyl, iyh = xl - wx, xh + wx, yl - wy, yh + wy
            ok, _, _ = eng.krawczyk(ixl, ixh, iyl, iyh)
            done = np.zeros(boxes.shape[0], dtype=bool)
            for k in np.nonzero(ok)[0]:
                iso = (float(ixl[k]), float(ixh[k]), float(iyl[k]), float(iyh[k]))
                if any(_inside(tuple(boxes[k]), c[0]) for c in cands):
                    done[k] = True
                    continue
                tight = eng.refine(iso, cfg.residual_tol)
                done[k] = True
                if tight is None:
                    continue
                cands.append((iso, tight))
            boxes = boxes[~done]
            if boxes.shape[0] == 0:
                break
            widths = np.maximum(boxes[:, 1] - boxes[:, 0], boxes[:, 3] - boxes[:, 2])
            small = (widths <= cfg.eps_box) | (depth == cfg.max_depth)
            for b in boxes[small]:
                tb = tuple(float(v) for v in b)
                touches = (tb[0] <= 0.0 <= tb[1]) or (tb[2] <= 0.0 <= tb[3])
                leaves.append((tb, "axis-contact" if (touches and cfg.off_axes) else "depth-exhausted"))
            boxes = _split(boxes[~small])

    # classify candidates, drop duplicates
    points: list = []
    seen: list = []
    unresolved_extra: list = []
    for iso, tight in cands:
        dup = False
        for iso2, tight2 in seen:
            if not _disjoint(tight, tight2) and (_inside(tight, iso2) or _inside(tight2, iso)):
                dup = True
                break
        if dup:
            continue
        seen.append((iso, tight))
        T = Box.from_floats(tight)
        mid = T.midpoint
        in_region = search.contains_point(*mid)
        if in_region and cfg.off_axes and cfg.axis_margin > 0:
            in_region = abs(mid[0]) >= cfg.axis_margin and abs(mid[1]) >= cfg.axis_margin
        if not in_region:
            continue
        xl, xh, yl, yh = (np.array([v]) for v in tight)
        res = {}
        for name, ip in eng.full.items():
            lo, hi = ip.enclose(xl, xh, yl, yh)
            res[name] = (mpq(float(lo[0])), mpq(float(hi[0])))
        gx = eng.hx.enclose(xl, xh, yl, yh)
        gy = eng.hy.enclose(xl, xh, yl, yh)
        smooth = not (iv.contains_zero(gx)[0] and iv.contains_zero(gy)[0])
        det = eng.jac_det(xl, xh, yl, yh)
        transversal = not iv.contains_zero(det)[0]
        off = not T.touches_axes()
        h_zero = res["H"][0] <= 0 <= res["H"][1]
        scale = max(1.0, abs(float(mid[0])), abs(float(mid[1])))
        tight_enough = float(T.width) <= cfg.residual_tol * scale
        if smooth and not h_zero:
            rejected += 1  # a critical point of H away from the Hessian curve
            continue
        if not h_zero and not smooth:
            rejected += 1
            continue
        reason = None
        if not smooth:
            reason = "hessian-singular-candidate"
        elif not transversal:
            reason = "transversality-undecided"
        elif cfg.off_axes and not off:
            reason = "axis-contact"
        elif not tight_enough:
            reason = "refinement-stalled"
        if reason is not None:
            unresolved_extra.append(Unresolved(T, reason, 1))
            continue
        points.append(CertifiedPoint(
            enclosure=T,
            isolating=Box.from_floats(iso),
            midpoint=(float(mid[0]), float(mid[1])),
            exists_unique=True,
            transversal=True,
            hessian_smooth=True,
            off_axes=off,
            residuals=res,
        ))
    points.sort(key=lambda p: (p.enclosure.x_lo, p.enclosure.y_lo))

    unresolved = list(unresolved_extra)
    for group in _cluster(leaves):
        arr = np.array([g[0] for g in group])
        hull = (arr[:, 0].min(), arr[:, 1].max(), arr[:, 2].min(), arr[:, 3].max())
        reasons = sorted({g[1] for g in group})
        unresolved.append(Unresolved(Box.from_floats(hull), "+".join(reasons), len(group)))
    unresolved.sort(key=lambda u: (u.box.x_lo, u.box.y_lo))
    stats = {"boxes": int(nboxes), "candidates": len(cands), "rejected": rejected}
    return TSPPResult(points=points, unresolved=unresolved, search=search, config=cfg, stats=stats)


# ---------------------------------------------------------------- point certificates


def certify_pair(p1: SparsePoly, p2: SparsePoly, box: Box, hessian: SparsePoly | None = None):
    """Krawczyk and Jacobian test for the pair (p1, p2) on an exact box.

    Returns ``(exists_unique, transversal, hessian_smooth)``; the last entry
    is None unless ``hessian`` is given.
    """
    eng = object.__new__(_Engine)
    eng.g_e1 = iv.GradientEnclosure(p1)
    eng.g_e2 = iv.GradientEnclosure(p2)
    xl, xh, yl, yh = (np.array([v]) for v in box.float_bounds())
    ok, _, _ = eng.krawczyk(xl, xh, yl, yh)
    det = eng.jac_det(xl, xh, yl, yh)
    transversal = not iv.contains_zero(det)[0]
    smooth = None
    if hessian is not None:
        gx = iv.IntervalPoly.from_poly(hessian.diff("x")).enclose(xl, xh, yl, yh)
        gy = iv.IntervalPoly.from_poly(hessian.diff("y")).enclose(xl, xh, yl, yh)
        smooth = not (iv.contains_zero(gx)[0] and iv.contains_zero(gy)[0])
    return bool(ok[0]), bool(transversal), smooth


def certify_transversal(system: ParabolicSystem, box: Box) -> tuple[bool, bool, bool]:
    """(exists_unique, transversal, hessian_smooth) for (E1, E2) on ``box``."""
    ok, tr, sm = certify_pair(system.e1, system.e2, box, system.h)
    return ok, tr, bool(sm)


def certify_empty(polys: Iterable[SparsePoly], box: Box, max_depth: int = 40) -> bool:
    """Prove by subdivision that the polynomials have no common zero in ``box``."""
    encs = [iv.GradientEnclosure(p) for p in polys]
    boxes = np.array([box.float_bounds()], dtype=float)
    for _ in range(max_depth + 1):
        xl, xh, yl, yh = _box_arrays(boxes)
        keep = np.ones(boxes.shape[0], dtype=bool)
        for g in encs:
            lo, hi = g.enclose(xl, xh, yl, yh)
            keep &= iv.contains_zero((lo, hi))
        boxes = boxes[keep]
        if boxes.shape[0] == 0:
            return True
        boxes = _split(boxes)
    return False
