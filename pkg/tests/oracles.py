"""Independent oracles used by the tests.

Nothing here imports the solver or the hull code of the package: the
systems are rebuilt with sympy, subdivisions come from a brute-force scan
over all point triples, and TSPP counts come from a dense sign grid.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import sympy
from numba import njit

X, Y = sympy.symbols("x y")


# ---------------------------------------------------------------- symbolic systems


def sym_system(expr):
    """(H, E1, E2, C) of f as expanded sympy expressions."""
    f = sympy.expand(expr)
    hess = sympy.Matrix([[f.diff(X, 2), f.diff(X, Y)], [f.diff(X, Y), f.diff(Y, 2)]])
    h = sympy.expand(hess.det())
    v = sympy.Matrix([-h.diff(Y), h.diff(X)])
    e = (hess * v).applyfunc(sympy.expand)
    c = sympy.expand((v.T * hess * v)[0, 0])
    return h, e[0], e[1], c


def sympy_to_terms(expr) -> dict:
    p = sympy.Poly(sympy.expand(expr), X, Y)
    return {(int(i), int(j)): Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for (i, j), c in p.terms()}


def strip_monomial(expr):
    """Cofactor of the largest monomial x^a y^b dividing expr."""
    p = sympy.Poly(sympy.expand(expr), X, Y)
    monos = p.monoms()
    a = min(m[0] for m in monos)
    b = min(m[1] for m in monos)
    return sympy.expand(expr / (X ** a * Y ** b))


def coeff_matrix(expr) -> np.ndarray:
    p = sympy.Poly(sympy.expand(expr), X, Y)
    dx = max(m[0] for m in p.monoms())
    dy = max(m[1] for m in p.monoms())
    c = np.zeros((dx + 1, dy + 1))
    for (i, j), v in p.terms():
        c[i, j] = float(v)
    return c


# ---------------------------------------------------------------- lower hull


def brute_force_faces(values: dict) -> set:
    """Faces of the regular subdivision as frozensets of hull vertices.

    Every triple of lifted points spanning a non-vertical plane with all
    points on or above it defines a lower face.
    """
    pts = list(values)
    lifted = [(p[0], p[1], values[p]) for p in pts]
    planes = set()
    for a, b, c in itertools.combinations(lifted, 3):
        u = [b[k] - a[k] for k in range(3)]
        v = [c[k] - a[k] for k in range(3)]
        n = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
        if n[2] == 0:
            continue
        al, be = Fraction(n[0], n[2]), Fraction(n[1], n[2])
        lev = al * a[0] + be * a[1] + a[2]
        if all(p[2] + al * p[0] + be * p[1] >= lev for p in lifted):
            planes.add((al, be, lev))
    faces = set()
    for al, be, lev in planes:
        on = [p[:2] for p in lifted if p[2] + al * p[0] + be * p[1] == lev]
        faces.add(frozenset(_hull_vertices(on)))
    return faces


def _hull_vertices(points):
    """Extreme points: those not in the convex hull of the others (by area test)."""
    pts = sorted(set(points))
    out = []
    for p in pts:
        others = [q for q in pts if q != p]
        inside = False
        for a, b, c in itertools.combinations(others, 3):
            if _in_triangle(p, a, b, c):
                inside = True
                break
        if not inside:
            for a, b in itertools.combinations(others, 2):
                if _on_segment(p, a, b):
                    inside = True
                    break
        if not inside:
            out.append(p)
    return out


def _area2(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _in_triangle(p, a, b, c):
    s = _area2(a, b, c)
    if s == 0:
        return False
    d1, d2, d3 = _area2(a, b, p), _area2(b, c, p), _area2(c, a, p)
    if s < 0:
        d1, d2, d3 = -d1, -d2, -d3
    return d1 >= 0 and d2 >= 0 and d3 >= 0


def _on_segment(p, a, b):
    if _area2(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


# ---------------------------------------------------------------- dense sign grid


@njit(cache=True)
def _peval(c, x, y):
    acc = 0.0
    for i in range(c.shape[0] - 1, -1, -1):
        a = 0.0
        for j in range(c.shape[1] - 1, -1, -1):
            a = a * y + c[i, j]
        acc = acc * x + a
    return acc


@njit(cache=True)
def _mixed(v0, v1, v2, v3):
    lo = min(min(v0, v1), min(v2, v3))
    hi = max(max(v0, v1), max(v2, v3))
    return lo <= 0.0 <= hi


@njit(cache=True)
def _scan(c1, c2, c3, x0, h, n, cap):
    """Cells where E1 and E2 change sign and H changes sign nearby."""
    out = np.empty((cap, 2), dtype=np.int64)
    cnt = 0
    sa = np.empty(n, dtype=np.int8)
    sb = np.empty(n, dtype=np.int8)
    coef = np.empty(c1.shape[0])
    xs = np.empty(n)
    for ii in range(n):
        xs[ii] = x0 + ii * h
    deg = c1.shape[0] - 1
    for jj in range(n):
        y = x0 + jj * h
        for i in range(deg + 1):
            a = 0.0
            for j in range(c1.shape[1] - 1, -1, -1):
                a = a * y + c1[i, j]
            coef[i] = a
        for ii in range(n):
            x = xs[ii]
            acc = coef[deg]
            for i in range(deg - 1, -1, -1):
                acc = acc * x + coef[i]
            # sign code: 1 negative, 2 positive, 3 zero (touches both)
            sb[ii] = 2 if acc > 0.0 else (1 if acc < 0.0 else 3)
        if jj > 0:
            y0 = y - h
            for ii in range(n - 1):
                if (sa[ii] | sa[ii + 1] | sb[ii] | sb[ii + 1]) != 3:
                    continue
                xa = xs[ii]
                xb = xa + h
                if not _mixed(_peval(c2, xa, y0), _peval(c2, xb, y0), _peval(c2, xa, y), _peval(c2, xb, y)):
                    continue
                hlo = 1.0
                hhi = -1.0
                for di in range(-1, 3):
                    for dj in range(-1, 3):
                        v = _peval(c3, x0 + (ii + di) * h, y0 + dj * h)
                        hlo = min(hlo, v)
                        hhi = max(hhi, v)
                if hlo <= 0.0 <= hhi and cnt < cap:
                    out[cnt, 0] = ii
                    out[cnt, 1] = jj - 1
                    cnt += 1
        sa, sb = sb, sa
    return out[:cnt]


def _cluster_cells(cells):
    cells = {tuple(c) for c in cells}
    groups = []
    while cells:
        seed = cells.pop()
        stack = [seed]
        group = [seed]
        while stack:
            a, b = stack.pop()
            for da in (-1, 0, 1):
                for db in (-1, 0, 1):
                    q = (a + da, b + db)
                    if q in cells:
                        cells.remove(q)
                        stack.append(q)
                        group.append(q)
        groups.append(group)
    return groups


@njit(cache=True)
def _sign_change(c, xl, xh, yl, yh):
    lo = np.inf
    hi = -np.inf
    for a in range(5):
        x = xl + 0.25 * a * (xh - xl)
        for b in range(5):
            v = _peval(c, x, yl + 0.25 * b * (yh - yl))
            lo = min(lo, v)
            hi = max(hi, v)
    return lo <= 0.0 <= hi


def _refine(c1, c2, box, tol=1e-9):
    boxes = [box]
    while boxes and max(b[1] - b[0] for b in boxes) > tol:
        nxt = []
        for xl, xh, yl, yh in boxes:
            xm, ym = 0.5 * (xl + xh), 0.5 * (yl + yh)
            for b in ((xl, xm, yl, ym), (xm, xh, yl, ym), (xl, xm, ym, yh), (xm, xh, ym, yh)):
                mx = 0.1 * (b[1] - b[0])
                my = 0.1 * (b[3] - b[2])
                bb = (b[0] - mx, b[1] + mx, b[2] - my, b[3] + my)
                if _sign_change(c1, *bb) and _sign_change(c2, *bb):
                    nxt.append(b)
        boxes = nxt
        if len(boxes) > 4000:
            break
    # group final boxes into points
    pts = []
    for b in boxes:
        cx, cy = 0.5 * (b[0] + b[1]), 0.5 * (b[2] + b[3])
        if not any(abs(cx - p[0]) < 1e-6 and abs(cy - p[1]) < 1e-6 for p in pts):
            pts.append((cx, cy))
    return pts


def _relative_value(expr_terms, x, y):
    val = 0.0
    mag = 0.0
    for (i, j), c in expr_terms:
        t = c * x ** i * y ** j
        val += t
        mag += abs(t)
    return abs(val) / mag if mag else 0.0


def grid_tspp_count(expr, lo=-10.0, hi=10.0, step=1e-3, axis_tol=1e-6, return_points=False):
    """Number of off-axes common zeros of H, E1, E2 found by the sign grid."""
    h, e1, e2, _ = sym_system(expr)
    h_s, e1_s, e2_s = (strip_monomial(p) for p in (h, e1, e2))
    c1, c2, c3 = (coeff_matrix(p) for p in (e1_s, e2_s, h_s))
    n = int(round((hi - lo) / step)) + 1
    cells = _scan(c1, c2, c3, lo, step, n, 100000)
    h_terms = [((int(i), int(j)), float(c)) for (i, j), c in sympy.Poly(h_s, X, Y).terms()]
    found = []
    for group in _cluster_cells(cells):
        arr = np.array(group)
        xl = lo + (arr[:, 0].min() - 1) * step
        xh = lo + (arr[:, 0].max() + 2) * step
        yl = lo + (arr[:, 1].min() - 1) * step
        yh = lo + (arr[:, 1].max() + 2) * step
        for p in _refine(c1, c2, (xl, xh, yl, yh)):
            if abs(p[0]) < axis_tol or abs(p[1]) < axis_tol:
                continue
            if _relative_value(h_terms, *p) > 1e-6:
                continue
            if not any(abs(p[0] - q[0]) < 1e-5 and abs(p[1] - q[1]) < 1e-5 for q in found):
                found.append(p)
    if return_points:
        return sorted(found)
    return len(found)
