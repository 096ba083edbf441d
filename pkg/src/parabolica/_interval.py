"""Vectorized float interval arithmetic with outward rounding.

Intervals are pairs of numpy arrays ``(lo, hi)``. Every floating point
operation is followed by one ``nextafter`` step away from the interval,
which dominates the half-ulp error of round-to-nearest, so enclosures are
rigorous. Sums of many terms are widened by an explicit a priori error bound.
"""

from __future__ import annotations

import numpy as np
from gmpy2 import mpq

_NINF = -np.inf
_PINF = np.inf
_U = 2.0 ** -53


def down(a):
    return np.nextafter(a, _NINF)


def up(a):
    return np.nextafter(a, _PINF)


def rat_to_interval(q: mpq) -> tuple[float, float]:
    """Float interval containing the rational q."""
    f = int(q.numerator) / int(q.denominator)  # correctly rounded
    if mpq(f) == q:
        return f, f
    return float(np.nextafter(f, _NINF)), float(np.nextafter(f, _PINF))


def add(a, b):
    return down(a[0] + b[0]), up(a[1] + b[1])


def sub(a, b):
    return down(a[0] - b[1]), up(a[1] - b[0])


def neg(a):
    return -a[1], -a[0]


def mul(a, b):
    p1 = a[0] * b[0]
    p2 = a[0] * b[1]
    p3 = a[1] * b[0]
    p4 = a[1] * b[1]
    lo = np.minimum(np.minimum(p1, p2), np.minimum(p3, p4))
    hi = np.maximum(np.maximum(p1, p2), np.maximum(p3, p4))
    lo = np.where(np.isnan(lo), _NINF, lo)
    hi = np.where(np.isnan(hi), _PINF, hi)
    return down(lo), up(hi)


def scale(s, a):
    """Point value s (exact float array) times interval a."""
    p1 = s * a[0]
    p2 = s * a[1]
    lo = np.minimum(p1, p2)
    hi = np.maximum(p1, p2)
    lo = np.where(np.isnan(lo), _NINF, lo)
    hi = np.where(np.isnan(hi), _PINF, hi)
    return down(lo), up(hi)


def intersect(a, b):
    return np.maximum(a[0], b[0]), np.minimum(a[1], b[1])


def contains_zero(a):
    return (a[0] <= 0.0) & (a[1] >= 0.0)


def _abs_pow_tables(v, n):
    """Lower and upper bounds of |v|^k for k = 0..n (shape (n+1, N))."""
    av = np.abs(v)
    dn = np.empty((n + 1,) + av.shape)
    upt = np.empty((n + 1,) + av.shape)
    dn[0] = 1.0
    upt[0] = 1.0
    for k in range(1, n + 1):
        dn[k] = down(dn[k - 1] * av)
        upt[k] = up(upt[k - 1] * av)
    np.maximum(dn, 0.0, out=dn)
    return dn, upt


def pow_table(lo, hi, n):
    """Enclosures of X^k, k = 0..n, for X = [lo, hi] (arrays shape (N,))."""
    a_dn, a_up = _abs_pow_tables(lo, n)
    b_dn, b_up = _abs_pow_tables(hi, n)
    plo = np.empty_like(a_dn)
    phi = np.empty_like(a_dn)
    nonneg = lo >= 0.0
    nonpos = hi <= 0.0
    for k in range(n + 1):
        if k % 2 == 0:
            plo[k] = np.where(nonneg, a_dn[k], np.where(nonpos, b_dn[k], 0.0))
            phi[k] = np.where(nonneg, b_up[k], np.where(nonpos, a_up[k], np.maximum(a_up[k], b_up[k])))
        else:
            plo[k] = np.where(lo >= 0.0, a_dn[k], -a_up[k])
            phi[k] = np.where(hi >= 0.0, b_up[k], -b_dn[k])
    return plo, phi


class IntervalPoly:
    """Interval enclosure of an exact bivariate polynomial on many boxes.

    Built from a mapping {(i, j): rational}. The two variables are generic,
    so the class also serves for blown-up polynomials in other coordinates.
    """

    def __init__(self, terms):
        items = sorted(terms.items())
        self.nterms = len(items)
        self.ei = np.array([k[0] for k, _ in items], dtype=np.int64)
        self.ej = np.array([k[1] for k, _ in items], dtype=np.int64)
        bounds = [rat_to_interval(c) for _, c in items]
        self.clo = np.array([b[0] for b in bounds], dtype=float)
        self.chi = np.array([b[1] for b in bounds], dtype=float)
        self.dx = int(self.ei.max()) if items else 0
        self.dy = int(self.ej.max()) if items else 0

    @classmethod
    def from_poly(cls, p):
        return cls(dict(p.terms))

    def enclose(self, xlo, xhi, ylo, yhi):
        """Natural interval extension over boxes given by 1-d arrays."""
        xlo = np.asarray(xlo, dtype=float)
        n = xlo.shape[0]
        if self.nterms == 0:
            z = np.zeros(n)
            return z, z.copy()
        xp = pow_table(xlo, np.asarray(xhi, dtype=float), self.dx)
        yp = pow_table(np.asarray(ylo, dtype=float), np.asarray(yhi, dtype=float), self.dy)
        xi = (xp[0][self.ei], xp[1][self.ei])  # (K, N)
        yj = (yp[0][self.ej], yp[1][self.ej])
        mono = mul(xi, yj)
        c = (self.clo[:, None], self.chi[:, None])
        tlo, thi = mul(c, mono)
        return _sum_rows(tlo), _sum_rows(thi, upper=True)

    def enclose_point(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return self.enclose(x, x, y, y)


def _sum_rows(m, upper=False):
    """Rigorous bound for the column sums of m (shape (K, N))."""
    k = m.shape[0]
    with np.errstate(invalid="ignore", over="ignore"):
        s = m.sum(axis=0)
        err = (2.0 * (k + 1) * _U) * np.abs(m).sum(axis=0)
        err = up(err + 5e-324)
        if upper:
            out = up(s + err)
            out = np.where(np.isnan(out), _PINF, out)
        else:
            out = down(s - err)
            out = np.where(np.isnan(out), _NINF, out)
    return out


class GradientEnclosure:
    """A polynomial together with its partial derivatives, for centred forms."""

    def __init__(self, poly):
        self.p = IntervalPoly.from_poly(poly)
        self.px = IntervalPoly.from_poly(poly.diff("x"))
        self.py = IntervalPoly.from_poly(poly.diff("y"))

    def enclose(self, xlo, xhi, ylo, yhi):
        """Natural extension intersected with the mean value form."""
        nat = self.p.enclose(xlo, xhi, ylo, yhi)
        with np.errstate(over="ignore", invalid="ignore"):
            cx = 0.5 * xlo + 0.5 * xhi
            cy = 0.5 * ylo + 0.5 * yhi
            rx = up(np.maximum(xhi - cx, cx - xlo))
            ry = up(np.maximum(yhi - cy, cy - ylo))
            val = self.p.enclose_point(cx, cy)
            gx = self.px.enclose(xlo, xhi, ylo, yhi)
            gy = self.py.enclose(xlo, xhi, ylo, yhi)
            mv = add(val, add(mul(gx, (-rx, rx)), mul(gy, (-ry, ry))))
        lo, hi = intersect(nat, mv)
        return lo, hi
